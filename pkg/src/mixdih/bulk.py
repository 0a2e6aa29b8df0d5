"""Vectorized packed-element arithmetic for bulk graph construction.

Elements are packed into uint32 words (a | b<<n | m<<2n | t<<(2n+n^2)),
which covers ranks 2 and 3 (10 and 24 bits).  The quadratic collection
terms come from the context's lookup tables, turned into numpy arrays so
that whole-group maps (canonical coset keys, left multiplications) are a
few gather/xor passes.
"""

from __future__ import annotations

import numpy as np

from .group import CapExceededError, Element, GroupContext


def packed_ops(ctx: GroupContext) -> "PackedOps":
    """Per-context cached PackedOps (the numpy tables are shared)."""
    ops = getattr(ctx, "_packed_ops", None)
    if ops is None:
        ops = PackedOps(ctx)
        ctx._packed_ops = ops
    return ops


class PackedOps:
    """Numpy mirrors of the collection tables for one context (n <= 3)."""

    def __init__(self, ctx: GroupContext):
        if ctx.total_bits > 32 or ctx._outer_tab is None:
            raise CapExceededError(
                f"bulk ops require tabulated contexts (n <= 3), got n={ctx.n}")
        self.ctx = ctx
        self.n = ctx.n
        self.nn = ctx.dim_w
        self.mask_n = np.uint32(ctx._mask_n)
        self.mask_w = np.uint32(ctx._mask_w)
        self.mask_t = np.uint32(ctx._mask_t)
        self.outer = np.asarray(ctx._outer_tab, dtype=np.uint32)
        self.psi = np.asarray(ctx._psi_tab, dtype=np.uint32)
        self.phi = np.asarray(ctx._phi_tab, dtype=np.uint32)

    # -- block access -------------------------------------------------------

    def a_of(self, z: np.ndarray) -> np.ndarray:
        return z & self.mask_n

    def b_of(self, z: np.ndarray) -> np.ndarray:
        return (z >> np.uint32(self.n)) & self.mask_n

    def m_of(self, z: np.ndarray) -> np.ndarray:
        return (z >> np.uint32(2 * self.n)) & self.mask_w

    def t_of(self, z: np.ndarray) -> np.ndarray:
        return z >> np.uint32(2 * self.n + self.nn)

    def pack(self, a, b, m, t) -> np.ndarray:
        n = np.uint32(self.n)
        return (a | (b << n) | (m << np.uint32(2 * self.n))
                | (t << np.uint32(2 * self.n + self.nn))).astype(np.uint32)

    def all_elements(self) -> np.ndarray:
        return np.arange(1 << self.ctx.total_bits, dtype=np.uint32)

    # -- products -------------------------------------------------------------

    def mul(self, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
        """Elementwise product, same closed form as the scalar mul."""
        n = np.uint32(self.n)
        a1, b1, m1, t1 = self.a_of(z1), self.b_of(z1), self.m_of(z1), self.t_of(z1)
        a2, b2, m2, t2 = self.a_of(z2), self.b_of(z2), self.m_of(z2), self.t_of(z2)
        ab = (a2 << n) | b1
        m = m1 ^ m2 ^ self.outer[ab]
        t = t1 ^ t2 ^ self.phi[(m1 << n) | a2] ^ self.psi[ab]
        return self.pack(a1 ^ a2, b1 ^ b2, m, t)

    def inv(self, z: np.ndarray) -> np.ndarray:
        n = np.uint32(self.n)
        a, b, m, t = self.a_of(z), self.b_of(z), self.m_of(z), self.t_of(z)
        ab = (a << n) | b
        return self.pack(a, b, m ^ self.outer[ab],
                         t ^ self.phi[(m << n) | a] ^ self.psi[ab])

    def left_mul(self, s: Element, z: np.ndarray) -> np.ndarray:
        """s*z for one fixed s in X union Y (the generator set of the
        Cayley graph); general s falls back to mul with a constant array."""
        n = np.uint32(self.n)
        if s.m == 0 and s.t == 0 and s.b == 0:
            return z ^ np.uint32(s.a)
        if s.m == 0 and s.t == 0 and s.a == 0:
            a = self.a_of(z)
            idx = (a << n) | np.uint32(s.b)
            return (z ^ np.uint32(s.b << self.n)
                    ^ (self.outer[idx] << np.uint32(2 * self.n))
                    ^ (self.psi[idx] << np.uint32(2 * self.n + self.nn)))
        const = np.full(z.shape, self.ctx.pack(s), dtype=np.uint32)
        return self.mul(const, z)

    # -- canonical coset keys ---------------------------------------------------

    def x_coset_key(self, z: np.ndarray) -> np.ndarray:
        """Key (b,m,t) of the X-side coset of z: zero the a block."""
        return z >> np.uint32(self.n)

    def y_coset_key(self, z: np.ndarray) -> np.ndarray:
        """Key (a,m,t) of the Y-side coset: collect the b-zero member."""
        n = np.uint32(self.n)
        a, b, m, t = self.a_of(z), self.b_of(z), self.m_of(z), self.t_of(z)
        ab = (a << n) | b
        m2 = m ^ self.outer[ab]
        t2 = t ^ self.psi[ab]
        return a | (m2 << n) | (t2 << np.uint32(self.n + self.nn))

    def x_rep_of_key(self, key: int) -> Element:
        return self.ctx.unpack(int(key) << self.n)

    def y_rep_of_key(self, key: int) -> Element:
        key = int(key)
        a = key & self.ctx._mask_n
        m = (key >> self.n) & self.ctx._mask_w
        t = key >> (self.n + self.nn)
        return Element(a, 0, m, t)
