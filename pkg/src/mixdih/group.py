"""Exact arithmetic in the rank-n mixed dihedral 2-groups.

The group of rank n is generated by two n-dimensional elementary abelian
subgroups X = <x_1..x_n> and Y = <y_1..y_n>.  Every element has a unique
normal form

    x^a * y^b * w^M * t^T

where a, b are GF(2) vectors of length n, M is an n-by-n GF(2) matrix
(entry (i,j) is the exponent of w_ij = [x_i, y_j]) and T is a GF(2) vector
indexed by triples (i,k,j) with i < k (the exponent of [[x_i,y_j],x_k]).
All four blocks are stored bit-packed in plain ints, little-endian, bit 0
being the lowest index.

Multiplication is defined by collecting generator words back into this
normal form.  The single normative collection step is :func:`mul_gen`; it
rewrites ``h * g`` for a generator symbol ``g`` using the commutation
rules of the family:

* y_j x_k = x_k y_j w_kj
* w_ij x_k = x_k w_ij t_(min(i,k),max(i,k),j)  (empty when k = i)
* y, w, t all commute with each other; t is central.

Everything else (mul, inv, comm, word evaluation, induced automorphisms)
is derived from that step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class UnsupportedParameterError(ValueError):
    """Raised for parameters outside the family's domain (e.g. n < 2)."""


class CapExceededError(RuntimeError):
    """Raised when an enumeration or build would exceed a resource cap."""


class EncodingError(ValueError):
    """Raised for malformed or out-of-range element text encodings."""


# Generator symbols are plain tuples: ('x', i), ('y', j), ('w', i, j),
# ('t', i, k, j), all indices 1-based, t requiring i < k.
Symbol = tuple
Word = Sequence[Symbol]

DEFAULT_ENUM_CAP_BITS = 24

# Largest n for which the quadratic collection terms are fully tabulated.
# Beyond that the bit-loop fallbacks are used (element ops at n >= 5 are
# rare; the closed-form counting functions never need them).
_TABLE_MAX_N = 3


@dataclass(frozen=True)
class Element:
    """One group element in normal form: four bit-packed GF(2) blocks."""

    a: int = 0  # x-part, n bits
    b: int = 0  # y-part, n bits
    m: int = 0  # w-part, n*n bits, row-major (i,j)
    t: int = 0  # t-part, n*n*(n-1)/2 bits, lexicographic (i,k,j), i<k

    def key(self) -> tuple[int, int, int, int]:
        """Block tuple used for the canonical element ordering."""
        return (self.a, self.b, self.m, self.t)


IDENTITY = Element()


class GroupContext:
    """Dimensions, index maps and collection tables for one rank n.

    Immutable after construction; all operations taking a context are pure
    functions, safe for concurrent use.
    """

    def __init__(self, n: int, _tau_mode: str = "full"):
        if n < 2:
            raise UnsupportedParameterError(f"rank n must be >= 2, got {n}")
        if _tau_mode not in ("full", "none", "asym"):
            raise ValueError(f"bad _tau_mode {_tau_mode!r}")
        self.n = n
        self.dim_x = n
        self.dim_y = n
        self.dim_w = n * n
        self.dim_t = n * n * (n - 1) // 2
        self.total_bits = 2 * n + self.dim_w + self.dim_t
        assert self.total_bits == (n**3 + n**2 + 4 * n) // 2
        self._mask_n = (1 << n) - 1
        self._mask_w = (1 << self.dim_w) - 1
        self._mask_t = (1 << self.dim_t) - 1
        # _tau_mode exists only for mutation tests of the collection rule:
        # "none" drops the w-over-x commutator entirely, "asym" drops its
        # symmetry normalisation for k < i.  Production code uses "full".
        self._tau_mode = _tau_mode
        self._outer_tab: list[int] | None = None
        self._psi_tab: list[int] | None = None
        self._phi_tab: list[int] | None = None
        if n <= _TABLE_MAX_N:
            self._build_tables()

    # -- index maps -------------------------------------------------------

    def w_index(self, i: int, j: int) -> int:
        """Bit position of the w-block entry (i,j), row-major."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"w index ({i},{j}) out of range for n={self.n}")
        return (i - 1) * self.n + (j - 1)

    def pair_index(self, i: int, k: int) -> int:
        if not (1 <= i < k <= self.n):
            raise IndexError(f"pair ({i},{k}) needs 1 <= i < k <= n")
        return (i - 1) * (2 * self.n - i) // 2 + (k - i - 1)

    def t_index(self, i: int, k: int, j: int) -> int:
        """Bit position of the t-block entry (i,k,j), lexicographic, i<k."""
        if not (1 <= j <= self.n):
            raise IndexError(f"t index ({i},{k},{j}) out of range")
        return self.pair_index(i, k) * self.n + (j - 1)

    # -- packing ----------------------------------------------------------

    def pack(self, h: Element) -> int:
        n = self.n
        return (
            h.a
            | (h.b << n)
            | (h.m << (2 * n))
            | (h.t << (2 * n + self.dim_w))
        )

    def unpack(self, z: int) -> Element:
        n = self.n
        return Element(
            z & self._mask_n,
            (z >> n) & self._mask_n,
            (z >> (2 * n)) & self._mask_w,
            (z >> (2 * n + self.dim_w)) & self._mask_t,
        )

    # -- quadratic collection terms ---------------------------------------

    def outer(self, a: int, b: int) -> int:
        """w-block of the product of the x-support a and y-support b."""
        if self._outer_tab is not None:
            return self._outer_tab[(a << self.n) | b]
        return self._outer_loop(a, b)

    def phi(self, m: int, a: int) -> int:
        """t-block picked up when x^a crosses w^m during collection."""
        if self._phi_tab is not None:
            return self._phi_tab[(m << self.n) | a]
        return self._phi_loop(m, a)

    def psi(self, a: int, b: int) -> int:
        """t-block from x-pairs within a crossing the y-support b."""
        if self._psi_tab is not None:
            return self._psi_tab[(a << self.n) | b]
        return self._psi_loop(a, b)

    def _outer_loop(self, a: int, b: int) -> int:
        n, m = self.n, 0
        aa = a
        while aa:
            low = aa & -aa
            aa ^= low
            k = low.bit_length()  # 1-based row
            m ^= b << ((k - 1) * n)
        return m

    def _phi_loop(self, m: int, a: int) -> int:
        if self._tau_mode == "none":
            return 0
        n = self.n
        dt = 0
        aa = a
        while aa:
            low = aa & -aa
            aa ^= low
            k = low.bit_length()
            for i in range(1, n + 1):
                if i == k:
                    continue
                if k < i and self._tau_mode == "asym":
                    continue
                row = (m >> ((i - 1) * n)) & self._mask_n
                if not row:
                    continue
                lo, hi = (i, k) if i < k else (k, i)
                dt ^= row << (self.pair_index(lo, hi) * n)
        return dt

    def _psi_loop(self, a: int, b: int) -> int:
        n = self.n
        dt = 0
        bits = []
        aa = a
        while aa:
            low = aa & -aa
            aa ^= low
            bits.append(low.bit_length())
        for u in range(len(bits)):
            for v in range(u + 1, len(bits)):
                i, k = bits[u], bits[v]
                dt ^= b << (self.pair_index(i, k) * n)
        return dt

    def _build_tables(self) -> None:
        n = self.n
        size = 1 << (2 * n)
        self._outer_tab = [self._outer_loop(idx >> n, idx & self._mask_n)
                           for idx in range(size)]
        self._psi_tab = [self._psi_loop(idx >> n, idx & self._mask_n)
                         for idx in range(size)]
        self._phi_tab = [self._phi_loop(idx >> n, idx & self._mask_n)
                         for idx in range(1 << (self.dim_w + n))]

    def __repr__(self) -> str:
        return f"GroupContext(n={self.n}, total_bits={self.total_bits})"


def context(n: int) -> GroupContext:
    """Build the context for rank n (rejects n < 2)."""
    return GroupContext(n)


# -- generator symbols ----------------------------------------------------

def x_sym(i: int) -> Symbol:
    return ("x", i)


def y_sym(j: int) -> Symbol:
    return ("y", j)


def w_sym(i: int, j: int) -> Symbol:
    return ("w", i, j)


def t_sym(i: int, k: int, j: int) -> Symbol:
    return ("t", i, k, j)


def check_symbol(ctx: GroupContext, sym: Symbol) -> None:
    kind = sym[0]
    n = ctx.n
    if kind == "x" or kind == "y":
        (i,) = sym[1:]
        if not 1 <= i <= n:
            raise IndexError(f"generator index {sym} out of range for n={n}")
    elif kind == "w":
        i, j = sym[1:]
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"generator index {sym} out of range for n={n}")
    elif kind == "t":
        i, k, j = sym[1:]
        if not (1 <= i < k <= n and 1 <= j <= n):
            raise IndexError(f"generator index {sym} out of range for n={n}")
    else:
        raise ValueError(f"unknown generator kind {sym!r}")


def generator(ctx: GroupContext, sym: Symbol) -> Element:
    """The Element of a single generator symbol."""
    check_symbol(ctx, sym)
    kind = sym[0]
    if kind == "x":
        return Element(a=1 << (sym[1] - 1))
    if kind == "y":
        return Element(b=1 << (sym[1] - 1))
    if kind == "w":
        return Element(m=1 << ctx.w_index(sym[1], sym[2]))
    return Element(t=1 << ctx.t_index(sym[1], sym[2], sym[3]))


def xgen(ctx: GroupContext, i: int) -> Element:
    return generator(ctx, x_sym(i))


def ygen(ctx: GroupContext, j: int) -> Element:
    return generator(ctx, y_sym(j))


# -- collection -----------------------------------------------------------

def mul_gen(ctx: GroupContext, h: Element, sym: Symbol) -> Element:
    """Normative collection step: the normal form of ``h * g``.

    For g = x_k the x crosses the central t-block for free, picks up
    t-terms from the w-block (phi), and turns each y_j in the y-block into
    a new w_kj (which then commutes with everything it still has to pass).
    y, w and t generators merge into their own block directly.
    """
    check_symbol(ctx, sym)
    kind = sym[0]
    if kind == "x":
        k = sym[1]
        dt = ctx.phi(h.m, 1 << (k - 1))
        return Element(
            h.a ^ (1 << (k - 1)),
            h.b,
            h.m ^ (h.b << ((k - 1) * ctx.n)),
            h.t ^ dt,
        )
    if kind == "y":
        return Element(h.a, h.b ^ (1 << (sym[1] - 1)), h.m, h.t)
    if kind == "w":
        return Element(h.a, h.b, h.m ^ (1 << ctx.w_index(sym[1], sym[2])), h.t)
    return Element(h.a, h.b, h.m, h.t ^ (1 << ctx.t_index(sym[1], sym[2], sym[3])))


def word_of(ctx: GroupContext, h: Element) -> list[Symbol]:
    """The normal-form word of h: x block, y block, w block, t block."""
    n = ctx.n
    out: list[Symbol] = []
    for i in range(1, n + 1):
        if h.a >> (i - 1) & 1:
            out.append(("x", i))
    for j in range(1, n + 1):
        if h.b >> (j - 1) & 1:
            out.append(("y", j))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if h.m >> ctx.w_index(i, j) & 1:
                out.append(("w", i, j))
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            for j in range(1, n + 1):
                if h.t >> ctx.t_index(i, k, j) & 1:
                    out.append(("t", i, k, j))
    return out


def evaluate_word(ctx: GroupContext, word: Word) -> Element:
    """Left fold of mul_gen over a generator word, starting from 1."""
    h = IDENTITY
    for sym in word:
        h = mul_gen(ctx, h, sym)
    return h


def mul(ctx: GroupContext, g: Element, h: Element) -> Element:
    """Product g*h (closed form of folding mul_gen over h's word).

    Folding the x block of h over g contributes, besides the xor of
    blocks, the outer product of h's x-support with g's y-support to the
    w block, plus two t contributions: x's of h crossing g's w block
    (phi), and pairs of x's within h crossing g's y block (psi).
    """
    a2, b1 = h.a, g.b
    m = g.m ^ h.m ^ ctx.outer(a2, b1)
    t = g.t ^ h.t ^ ctx.phi(g.m, a2) ^ ctx.psi(a2, b1)
    return Element(g.a ^ h.a, g.b ^ h.b, m, t)


def mul_by_word(ctx: GroupContext, g: Element, h: Element) -> Element:
    """Reference product: fold mul_gen over h's normal-form word."""
    out = g
    for sym in word_of(ctx, h):
        out = mul_gen(ctx, out, sym)
    return out


def inv(ctx: GroupContext, h: Element) -> Element:
    """Inverse of h: the collected reversed generator word of h.

    All generators are involutions, so the inverse is the reversed word.
    The closed form below is what that reversed-word collection produces;
    inv_by_word is kept as the literal fold and the two are cross-checked
    in the test suite.
    """
    m = h.m ^ ctx.outer(h.a, h.b)
    t = h.t ^ ctx.phi(h.m, h.a) ^ ctx.psi(h.a, h.b)
    return Element(h.a, h.b, m, t)


def inv_by_word(ctx: GroupContext, h: Element) -> Element:
    """Inverse via literal reversed-word collection (test oracle)."""
    return evaluate_word(ctx, list(reversed(word_of(ctx, h))))


def conj(ctx: GroupContext, g: Element, h: Element) -> Element:
    """Conjugate g^h = h^-1 g h."""
    return mul(ctx, mul(ctx, inv(ctx, h), g), h)


def comm(ctx: GroupContext, g: Element, h: Element) -> Element:
    """Commutator [g,h] = g^-1 h^-1 g h."""
    return mul(ctx, mul(ctx, mul(ctx, inv(ctx, g), inv(ctx, h)), g), h)


def abelianization(ctx: GroupContext, h: Element) -> tuple[int, int]:
    """Image of h in the derived quotient: the (a, b) pair."""
    return (h.a, h.b)


def enumerate_elements(ctx: GroupContext,
                       cap_bits: int = DEFAULT_ENUM_CAP_BITS) -> Iterator[Element]:
    """All 2^total_bits normal forms in increasing packed-encoding order."""
    if ctx.total_bits > cap_bits:
        raise CapExceededError(
            f"2^{ctx.total_bits} elements exceeds cap 2^{cap_bits}")
    for z in range(1 << ctx.total_bits):
        yield ctx.unpack(z)


def order_of(ctx: GroupContext, h: Element) -> int:
    """Multiplicative order of h (the family has exponent dividing 4)."""
    k, acc = 1, h
    while acc != IDENTITY:
        acc = mul(ctx, acc, h)
        k += 1
        if k > 1 << ctx.total_bits:
            raise RuntimeError("order computation did not terminate")
    return k


# -- text encoding --------------------------------------------------------

_ENC_RE = re.compile(r"^a:([0-9a-fA-F]+);b:([0-9a-fA-F]+);"
                     r"w:([0-9a-fA-F]+);t:([0-9a-fA-F]+)$")


def format_element(ctx: GroupContext, h: Element) -> str:
    """Text encoding a:<hex>;b:<hex>;w:<hex>;t:<hex>, bit 0 = lowest index."""
    return f"a:{h.a:x};b:{h.b:x};w:{h.m:x};t:{h.t:x}"


def parse_element(ctx: GroupContext, text: str) -> Element:
    """Inverse of format_element; rejects malformed or overflowing fields."""
    mo = _ENC_RE.match(text.strip())
    if mo is None:
        raise EncodingError(f"malformed element encoding: {text!r}")
    a, b, m, t = (int(s, 16) for s in mo.groups())
    if a > ctx._mask_n or b > ctx._mask_n:
        raise EncodingError(f"x/y block overflow for n={ctx.n}: {text!r}")
    if m > ctx._mask_w or t > ctx._mask_t:
        raise EncodingError(f"w/t block overflow for n={ctx.n}: {text!r}")
    return Element(a, b, m, t)


# -- GF(2) matrices and induced automorphisms ------------------------------

GF2Matrix = tuple[int, ...]  # row i (0-based) is a bit-packed row vector


def gf2_identity(n: int) -> GF2Matrix:
    return tuple(1 << i for i in range(n))


def gf2_mat_mul(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    """Row-vector convention: (ab)[i] = sum of b[j] over set bits j of a[i]."""
    out = []
    for row in a:
        acc, rr = 0, row
        while rr:
            low = rr & -rr
            rr ^= low
            acc ^= b[low.bit_length() - 1]
        out.append(acc)
    return tuple(out)


def gf2_is_invertible(mat: GF2Matrix, n: int) -> bool:
    rows = list(mat)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if rows[r] >> col & 1:
                piv = r
                break
        if piv is None:
            return False
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(n):
            if r != col and rows[r] >> col & 1:
                rows[r] ^= rows[col]
    return True


def gl_enumerate(n: int) -> list[GF2Matrix]:
    """All invertible n x n GF(2) matrices (brute force; small n only)."""
    if n > 4:
        raise CapExceededError("gl_enumerate is for small n")
    out = []
    for code in range(1 << (n * n)):
        mat = tuple((code >> (n * i)) & ((1 << n) - 1) for i in range(n))
        if gf2_is_invertible(mat, n):
            out.append(mat)
    return out


def gl_generators(n: int) -> list[GF2Matrix]:
    """Two standard generators of GL_n(2): a transvection and an n-cycle."""
    transvection = list(gf2_identity(n))
    transvection[0] ^= 2  # row 1 += row 2
    cycle = tuple(1 << ((i + 1) % n) for i in range(n))
    return [tuple(transvection), cycle]


@dataclass
class InducedAutomorphism:
    """Automorphism induced by a pair of GL_n(2) matrices on X and Y.

    Row i of g1 gives the x-word image of x_i; row j of g2 the y-word
    image of y_j.  w and t generators map to the corresponding commutator
    words of the images; the cache below holds all collected images.
    """

    ctx: GroupContext
    g1: GF2Matrix
    g2: GF2Matrix
    _x_img: list[Element] = field(repr=False, default_factory=list)
    _y_img: list[Element] = field(repr=False, default_factory=list)
    _w_img: dict = field(repr=False, default_factory=dict)
    _t_img: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        ctx, n = self.ctx, self.ctx.n
        if len(self.g1) != n or len(self.g2) != n:
            raise ValueError("matrix size does not match context rank")
        if not (gf2_is_invertible(self.g1, n) and gf2_is_invertible(self.g2, n)):
            raise ValueError("induced automorphism needs invertible matrices")
        self._x_img = [Element(a=self.g1[i]) for i in range(n)]
        self._y_img = [Element(b=self.g2[j]) for j in range(n)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                self._w_img[(i, j)] = comm(
                    ctx, self._x_img[i - 1], self._y_img[j - 1])
        for i in range(1, n + 1):
            for k in range(i + 1, n + 1):
                for j in range(1, n + 1):
                    self._t_img[(i, k, j)] = comm(
                        ctx, self._w_img[(i, j)], self._x_img[k - 1])

    def apply(self, h: Element) -> Element:
        """Image of h: rewrite its normal-form word and collect."""
        ctx = self.ctx
        out = IDENTITY
        for sym in word_of(ctx, h):
            if sym[0] == "x":
                img = self._x_img[sym[1] - 1]
            elif sym[0] == "y":
                img = self._y_img[sym[1] - 1]
            elif sym[0] == "w":
                img = self._w_img[(sym[1], sym[2])]
            else:
                img = self._t_img[(sym[1], sym[2], sym[3])]
            out = mul(ctx, out, img)
        return out

    __call__ = apply


def induced_automorphism(ctx: GroupContext, g1: Sequence[int],
                         g2: Sequence[int]) -> InducedAutomorphism:
    return InducedAutomorphism(ctx, tuple(g1), tuple(g2))


# -- presentation verification ---------------------------------------------

def _gens_xy(ctx: GroupContext) -> list[Element]:
    n = ctx.n
    return [xgen(ctx, i) for i in range(1, n + 1)] + \
           [ygen(ctx, j) for j in range(1, n + 1)]


def verify_presentation(ctx: GroupContext) -> dict:
    """Evaluate every defining relator over all generator combinations.

    Families: generator squares, commuting within each side, squares of
    cross commutators, [[y,x],y'] vanishing, squares of triple
    commutators, and vanishing of all quadruple commutators (class 3).
    Failures are reported, not raised.
    """
    n = ctx.n
    xs = [xgen(ctx, i) for i in range(1, n + 1)]
    ys = [ygen(ctx, j) for j in range(1, n + 1)]
    gens = xs + ys
    families = []

    def run(name, words):
        failures = 0
        total = 0
        for e in words:
            total += 1
            if e != IDENTITY:
                failures += 1
        families.append({
            "family": name,
            "relators": total,
            "failures": failures,
            "pass": failures == 0,
        })

    run("generator-squares", (mul(ctx, z, z) for z in gens))
    run("same-side-commuting",
        (comm(ctx, u, v) for side in (xs, ys) for u in side for v in side))
    run("cross-commutator-squares",
        (mul(ctx, c, c) for x in xs for y in ys for c in (comm(ctx, x, y),)))
    run("yx-commutator-y-vanishing",
        (comm(ctx, comm(ctx, y, x), y2) for y in ys for x in xs for y2 in ys))
    run("triple-commutator-squares",
        (mul(ctx, c, c) for x in xs for y in ys for z in gens
         for c in (comm(ctx, comm(ctx, x, y), z),)))
    run("quadruple-commutator-vanishing",
        (comm(ctx, comm(ctx, comm(ctx, z1, z2), z3), z4)
         for z1 in gens for z2 in gens for z3 in gens for z4 in gens))

    return {
        "n": n,
        "families": families,
        "pass": all(f["pass"] for f in families),
    }


# -- derived subgroup helpers ----------------------------------------------

def derived_basis(ctx: GroupContext) -> list[Element]:
    """The commutator basis of the derived subgroup.

    [x_i,y_j] for all i,j, then [[x_i,y_j],x_k] for i < k; their span is
    the whole derived subgroup.
    """
    n = ctx.n
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            out.append(comm(ctx, xgen(ctx, i), ygen(ctx, j)))
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            for j in range(1, n + 1):
                out.append(comm(ctx, comm(ctx, xgen(ctx, i), ygen(ctx, j)),
                                xgen(ctx, k)))
    return out


def subgroup_closure(ctx: GroupContext, gens: Iterable[Element],
                     cap: int = 1 << 20) -> set[Element]:
    """Closure of a generating set under multiplication (plain BFS)."""
    gens = list(gens)
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                p = mul(ctx, h, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if len(seen) > cap:
                        raise CapExceededError("subgroup closure exceeded cap")
        frontier = nxt
    return seen
