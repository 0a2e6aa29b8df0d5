"""Full automorphism group order via individualization-refinement.

Backtracking over the equitable-refinement tree in the usual style: the
leftmost path fixes a base of vertices; sibling branches are pruned by
refinement traces (canonical cell-size profiles) and by orbits of the
automorphisms already found; every non-pruned sibling subtree is searched
until it either yields an automorphism mapping the base point to that
sibling or is exhausted.  The group order is then the product over base
points of the orbit sizes under the discovered generators that fix the
earlier base points -- plain orbit closure, no stabilizer chains.
"""

from __future__ import annotations

import numpy as np

from .graphs import GraphData
from .group import CapExceededError

DEFAULT_AUT_CAP = 1024


class _Refiner:
    """Canonical 1-dimensional refinement on padded neighbor tables."""

    def __init__(self, g: GraphData):
        self.nv = g.num_vertices
        degs = g.degrees()
        self.max_deg = int(degs.max()) if self.nv else 0
        nb = np.full((self.nv, self.max_deg), -1, dtype=np.int64)
        for v in range(self.nv):
            row = g.neighbors(v)
            nb[v, :len(row)] = row
        self.nb = nb
        self.pad = nb < 0

    def refine(self, colors: np.ndarray) -> tuple[np.ndarray, int]:
        """Stable point of (color, sorted neighbor colors) re-ranking."""
        ncol = int(colors.max()) + 1
        while True:
            nbc = colors[self.nb]
            nbc[self.pad] = -1
            nbc.sort(axis=1)
            sig = np.column_stack([colors, nbc])
            _, new = np.unique(sig, axis=0, return_inverse=True)
            nnew = int(new.max()) + 1
            if nnew == ncol:
                return new.astype(np.int64), nnew
            colors, ncol = new.astype(np.int64), nnew

    def individualize(self, colors: np.ndarray, v: int) -> np.ndarray:
        out = colors * 2
        out[v] -= 1
        _, out = np.unique(out, return_inverse=True)
        return out.astype(np.int64)


def _closure(point: int, gens: list[np.ndarray]) -> set[int]:
    orbit = {point}
    queue = [point]
    while queue:
        x = queue.pop()
        for g in gens:
            y = int(g[x])
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    return orbit


def automorphism_group_order(g: GraphData,
                             max_vertices: int = DEFAULT_AUT_CAP) -> int:
    """Order of the full automorphism group of a simple graph."""
    if g.num_vertices > max_vertices:
        raise CapExceededError(
            f"automorphism search capped at {max_vertices} vertices")
    if g.num_vertices == 0:
        return 1
    ref = _Refiner(g)
    nv = g.num_vertices
    eu, ev = g.edge_array()
    edge_keys = np.sort(eu * np.int64(nv) + ev)

    def is_auto(p: np.ndarray) -> bool:
        pu, pv = p[eu], p[ev]
        keys = np.sort(np.minimum(pu, pv) * np.int64(nv) + np.maximum(pu, pv))
        return bool(np.array_equal(keys, edge_keys))

    state = {
        "first_leaf": None,   # colors at the leftmost discrete leaf
        "traces": {},         # level -> invariant along the leftmost path
        "base": [],           # (level, vertex) individualized on the left
        "gens": [],           # discovered automorphism permutations
    }

    def invariant(colors: np.ndarray, ncol: int) -> tuple:
        return (ncol, tuple(np.bincount(colors, minlength=ncol).tolist()))

    def leaf_perm(colors: np.ndarray) -> np.ndarray:
        inv_cur = np.empty(nv, dtype=np.int64)
        inv_cur[colors] = np.arange(nv)
        return inv_cur[state["first_leaf"]]

    def target_cell(colors: np.ndarray, ncol: int) -> list[int]:
        counts = np.bincount(colors, minlength=ncol)
        c = int(np.nonzero(counts > 1)[0][0])
        return np.nonzero(colors == c)[0].tolist()

    def search_left(colors: np.ndarray, level: int) -> None:
        colors, ncol = ref.refine(colors)
        state["traces"][level] = invariant(colors, ncol)
        if ncol == nv:
            state["first_leaf"] = colors.copy()
            return
        cell = target_cell(colors, ncol)
        b = cell[0]
        state["base"].append((level, b))
        search_left(ref.individualize(colors, b), level + 1)
        fixed = [v for (lv, v) in state["base"] if lv < level]
        for v in cell[1:]:
            gens_here = [p for p in state["gens"]
                         if all(p[f] == f for f in fixed)]
            if v in _closure(b, gens_here):
                continue
            p = search_other(ref.individualize(colors, v), level + 1)
            if p is not None:
                state["gens"].append(p)

    def search_other(colors: np.ndarray, level: int) -> np.ndarray | None:
        colors, ncol = ref.refine(colors)
        if state["traces"].get(level) != invariant(colors, ncol):
            return None
        if ncol == nv:
            p = leaf_perm(colors)
            return p if is_auto(p) else None
        for v in target_cell(colors, ncol):
            p = search_other(ref.individualize(colors, v), level + 1)
            if p is not None:
                return p
        return None

    search_left(np.zeros(nv, dtype=np.int64), 0)

    order = 1
    for idx, (_, b) in enumerate(state["base"]):
        fixed = [v for (_, v) in state["base"][:idx]]
        gens_here = [p for p in state["gens"]
                     if all(p[f] == f for f in fixed)]
        order *= len(_closure(b, gens_here))
    return order
