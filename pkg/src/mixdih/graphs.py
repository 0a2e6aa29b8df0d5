"""Graph constructions: the Cayley graph over the whole group, the
bipartite coset-intersection graph, line graphs, maximal-clique graphs,
the derived-subgroup quotient, and deterministic exports.

Adjacency in the Cayley graph is by LEFT multiplication: g is adjacent to
s*g for s in S = (X union Y) \\ {1}.  Right multiplication is reserved for
the automorphism action on the coset graph; mixing the two silently breaks
the edge-regularity checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterator, Sequence

import numpy as np

from .bulk import packed_ops
from .group import (
    CapExceededError,
    Element,
    GroupContext,
    format_element,
    mul,
)

DEFAULT_VERTEX_CAP = 1 << 23
DEFAULT_CLIQUE_CAP = 4096


class GraphConsistencyError(RuntimeError):
    """An internal structural invariant of a build failed (e.g. a
    duplicate edge where a bijection was promised)."""


@dataclass
class GraphData:
    """Immutable indexed adjacency: CSR arrays, ids contiguous from 0.

    Graphs are always simple and undirected; ``indices`` holds both
    directions, sorted within each vertex's slice.  ``sides`` optionally
    tags a bipartition (0/1 per vertex), ``labels`` optionally names the
    vertices.
    """

    num_vertices: int
    num_edges: int
    indptr: np.ndarray
    indices: np.ndarray
    sides: np.ndarray | None = None
    labels: list[str] | None = None

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, ascending."""
        for u in range(self.num_vertices):
            for v in self.neighbors(u):
                if u < v:
                    yield (u, int(v))

    def edge_array(self) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized edge list (u < v), sorted ascending."""
        src = np.repeat(np.arange(self.num_vertices), self.degrees())
        keep = src < self.indices
        return src[keep], self.indices[keep]


def graph_from_edges(num_vertices: int, u, v, sides=None, labels=None,
                     dedupe: bool = False) -> GraphData:
    """Build GraphData from endpoint arrays; validates simplicity.

    With dedupe=False a repeated edge raises GraphConsistencyError (used
    where a build promises each edge exactly once).
    """
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if np.any(u == v):
        raise GraphConsistencyError("loop edge in construction")
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    key = lo * np.int64(num_vertices) + hi
    uniq = np.unique(key)
    if len(uniq) != len(key):
        if not dedupe:
            raise GraphConsistencyError("duplicate edge in construction")
        lo = uniq // num_vertices
        hi = uniq % num_vertices
    num_edges = len(lo)
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(num_vertices + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    dtype = np.int32 if num_vertices <= (1 << 31) - 1 else np.int64
    return GraphData(num_vertices, int(num_edges), indptr,
                     dst.astype(dtype), sides, labels)


def bfs_layers(g: GraphData, root: int) -> tuple[list[int], int]:
    """Layer sizes by distance from root; also the unreachable count."""
    dist = np.full(g.num_vertices, -1, dtype=np.int64)
    dist[root] = 0
    frontier = np.array([root], dtype=np.int64)
    layers = [1]
    while len(frontier):
        nxt = np.unique(_expand(g, frontier))
        nxt = nxt[dist[nxt] < 0]
        if not len(nxt):
            break
        dist[nxt] = len(layers)
        layers.append(int(len(nxt)))
        frontier = nxt
    unreachable = int(np.count_nonzero(dist < 0))
    return layers, unreachable


def _expand(g: GraphData, frontier: np.ndarray) -> np.ndarray:
    """Gather the CSR slices of a whole frontier without a Python loop."""
    counts = (g.indptr[frontier + 1] - g.indptr[frontier]).astype(np.int64)
    total = int(counts.sum())
    starts = np.repeat(g.indptr[frontier], counts)
    within = np.arange(total, dtype=np.int64) - \
        np.repeat(np.cumsum(counts) - counts, counts)
    return g.indices[starts + within]


def is_connected(g: GraphData) -> bool:
    if g.num_vertices == 0:
        return True
    _, unreachable = bfs_layers(g, 0)
    return unreachable == 0


# -- group generator set ------------------------------------------------------

def connection_set(ctx: GroupContext) -> list[Element]:
    """S = (X union Y) minus identity: 2(2^n - 1) involutions."""
    out = [Element(a=a) for a in range(1, 1 << ctx.n)]
    out += [Element(b=b) for b in range(1, 1 << ctx.n)]
    return out


def _check_cap(num_vertices: int, force: bool, what: str,
               cap: int = DEFAULT_VERTEX_CAP) -> None:
    if num_vertices > cap and not force:
        raise CapExceededError(
            f"{what} would have {num_vertices} vertices (> {cap}); "
            f"pass force=True / --force to build anyway")


# -- Cayley graph --------------------------------------------------------------

def build_gamma(ctx: GroupContext, force: bool = False) -> GraphData:
    """Cayley graph on all group elements: z adjacent to s*z for s in S.

    Vertex ids are the packed element encodings (identity is vertex 0).
    Regular of valency 2(2^n - 1); connected since S generates.
    """
    nv = 1 << ctx.total_bits
    _check_cap(nv, force, "Cayley graph")
    ops = packed_ops(ctx)
    z = ops.all_elements()
    s_list = connection_set(ctx)
    us, vs = [], []
    for s in s_list:
        us.append(z)
        vs.append(ops.left_mul(s, z))
    u = np.concatenate(us).astype(np.int64)
    v = np.concatenate(vs).astype(np.int64)
    # each undirected edge {z, sz} arises twice (s is an involution)
    keep = u < v
    labels = None
    if nv <= (1 << 16):
        labels = [format_element(ctx, ctx.unpack(i)) for i in range(nv)]
    return graph_from_edges(nv, u[keep], v[keep], labels=labels)


# -- coset-intersection graph ---------------------------------------------------

@dataclass
class EdgeBijection:
    """phi: group element -> edge id; phi(z) = {X-coset(z), Y-coset(z)}."""

    ctx: GroupContext
    edge_id: np.ndarray      # indexed by packed element
    element_key: np.ndarray  # indexed by edge id: the packed element

    def edge_of(self, z: Element) -> int:
        return int(self.edge_id[self.ctx.pack(z)])

    def element_of(self, eid: int) -> Element:
        return self.ctx.unpack(int(self.element_key[eid]))


@dataclass
class Sigma:
    """The bipartite coset graph plus its vertex/edge indexing.

    X-side vertex ids are the packed (b,m,t) keys of the canonical
    representatives (a = 0); Y-side ids are half + packed (a,m,t) keys
    (b = 0).  Both sides are therefore sorted by representative encoding,
    X block first.
    """

    ctx: GroupContext
    graph: GraphData
    phi: EdgeBijection
    half: int

    def side_of(self, vid: int) -> str:
        return "X" if vid < self.half else "Y"

    def rep_of(self, vid: int) -> Element:
        ops = packed_ops(self.ctx)
        if vid < self.half:
            return ops.x_rep_of_key(vid)
        return ops.y_rep_of_key(vid - self.half)

    def vid_of(self, side: str, rep: Element) -> int:
        ctx = self.ctx
        if side == "X":
            if rep.a:
                raise ValueError("X-side representative must have a = 0")
            return ctx.pack(rep) >> ctx.n
        if rep.b:
            raise ValueError("Y-side representative must have b = 0")
        return self.half + (rep.a | (rep.m << ctx.n)
                            | (rep.t << (ctx.n + ctx.dim_w)))

    def vertex_label(self, vid: int) -> str:
        return format_element(self.ctx, self.rep_of(vid))


@dataclass(frozen=True)
class CosetVertex:
    """One vertex of the coset graph: side tag plus canonical rep."""

    side: str  # "X" or "Y"
    rep: Element


def canonical_coset(ctx: GroupContext, side: str, h: Element) -> CosetVertex:
    """Canonical representative of the coset of h on the given side.

    X-side: zero the a block (left x-multiples only toggle it).  Y-side:
    the blockwise-minimal element among the 2^n left y-multiples, which
    is the unique member with b = 0.  Constant on cosets, idempotent.
    """
    if side == "X":
        return CosetVertex("X", Element(0, h.b, h.m, h.t))
    if side != "Y":
        raise ValueError(f"side must be 'X' or 'Y', got {side!r}")
    best = None
    for b in range(1 << ctx.n):
        cand = mul(ctx, Element(b=b), h)
        if best is None or cand.key() < best.key():
            best = cand
    return CosetVertex("Y", best)


def build_sigma(ctx: GroupContext, force: bool = False) -> Sigma:
    """Build the coset-intersection graph via the edge bijection.

    Vertices are the canonical coset representatives of both sides;
    the edges are exactly {X-coset(z), Y-coset(z)} for z over the group,
    and the build asserts that no duplicate edge arises.
    """
    half = 1 << (ctx.total_bits - ctx.n)
    nv = 2 * half
    _check_cap(nv, force, "coset graph")
    ops = packed_ops(ctx)
    z = ops.all_elements()
    u = ops.x_coset_key(z).astype(np.int64)
    v = (ops.y_coset_key(z).astype(np.int64)) + half
    order = np.lexsort((v, u))
    edge_id = np.empty(len(z), dtype=np.int64)
    edge_id[order] = np.arange(len(z))
    sides = np.zeros(nv, dtype=np.uint8)
    sides[half:] = 1
    labels = None
    if nv <= (1 << 16):
        labels = [format_element(ctx, ops.x_rep_of_key(k)) for k in range(half)]
        labels += [format_element(ctx, ops.y_rep_of_key(k)) for k in range(half)]
    graph = graph_from_edges(nv, u, v, sides=sides, labels=labels)
    if graph.num_edges != len(z):
        raise GraphConsistencyError("edge bijection is not injective")
    phi = EdgeBijection(ctx, edge_id, order.astype(np.int64))
    return Sigma(ctx, graph, phi, half)


# -- line graphs and cliques ---------------------------------------------------

def line_graph(g: GraphData) -> GraphData:
    """Line graph: vertices are edge ids (sorted edge order), adjacency is
    nonempty intersection of the edges."""
    edges = list(g.edges())
    eid = {e: i for i, e in enumerate(edges)}
    incident: list[list[int]] = [[] for _ in range(g.num_vertices)]
    for (a, b), i in eid.items():
        incident[a].append(i)
        incident[b].append(i)
    us, vs = [], []
    for ids in incident:
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                us.append(min(ids[i], ids[j]))
                vs.append(max(ids[i], ids[j]))
    return graph_from_edges(len(edges), np.array(us, dtype=np.int64),
                            np.array(vs, dtype=np.int64), dedupe=True)


def maximal_cliques(g: GraphData,
                    cap: int = DEFAULT_CLIQUE_CAP) -> list[tuple[int, ...]]:
    """Exact maximal-clique enumeration (Bron-Kerbosch with pivoting).

    Returns sorted vertex tuples in a deterministic order.
    """
    if g.num_vertices > cap:
        raise CapExceededError(
            f"clique enumeration capped at {cap} vertices")
    adj = [0] * g.num_vertices
    for v in range(g.num_vertices):
        for w in g.neighbors(v):
            adj[v] |= 1 << int(w)
    out: list[tuple[int, ...]] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            clique = []
            rr = r
            while rr:
                low = rr & -rr
                rr ^= low
                clique.append(low.bit_length() - 1)
            out.append(tuple(clique))
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best, best_cnt = pivot, -1
        pool = pivot_pool
        while pool:
            low = pool & -pool
            pool ^= low
            cand = low.bit_length() - 1
            cnt = bin(p & adj[cand]).count("1")
            if cnt > best_cnt:
                best, best_cnt = cand, cnt
        ext = p & ~adj[best]
        while ext:
            low = ext & -ext
            ext ^= low
            v = low.bit_length() - 1
            expand(r | low, p & adj[v], x & adj[v])
            p &= ~low
            x |= low
            ext &= p

    expand(0, (1 << g.num_vertices) - 1, 0)
    out.sort()
    return out


def clique_graph(g: GraphData, cap: int = DEFAULT_CLIQUE_CAP) -> GraphData:
    """Graph on the maximal cliques, adjacent when they intersect."""
    cliques = maximal_cliques(g, cap=cap)
    containing: list[list[int]] = [[] for _ in range(g.num_vertices)]
    for i, c in enumerate(cliques):
        for v in c:
            containing[v].append(i)
    pairs = set()
    for ids in containing:
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                pairs.add((ids[i], ids[j]))
    if not pairs:
        return GraphData(len(cliques), 0,
                         np.zeros(len(cliques) + 1, dtype=np.int64),
                         np.zeros(0, dtype=np.int32))
    u, v = zip(*sorted(pairs))
    return graph_from_edges(len(cliques), np.array(u, dtype=np.int64),
                            np.array(v, dtype=np.int64))


# -- derived-subgroup quotient ---------------------------------------------------

def quotient_by_derived(ctx: GroupContext, sigma: Sigma) -> GraphData:
    """Quotient of the coset graph by the right action of the derived
    subgroup: complete bipartite of valency 2^n, with uniform fibers.

    The X-side class of a vertex is the b block of its representative,
    the Y-side class the a block (both are constant under right
    multiplication by derived elements).
    """
    g = sigma.graph
    half, n = sigma.half, ctx.n
    two_n = 1 << n
    mask = (1 << n) - 1
    vids = np.arange(g.num_vertices, dtype=np.int64)
    cls = np.where(vids < half,
                   vids & mask,                     # X key low bits = b
                   two_n + ((vids - half) & mask))  # Y key low bits = a
    # fibers must be uniform
    fiber_sizes = np.bincount(cls, minlength=2 * two_n)
    if len(set(fiber_sizes.tolist())) != 1:
        raise GraphConsistencyError("quotient fibers are not uniform")
    eu, ev = g.edge_array()
    qu, qv = cls[eu], cls[ev]
    quotient = graph_from_edges(2 * two_n, qu, qv, dedupe=True,
                                sides=np.array([0] * two_n + [1] * two_n,
                                               dtype=np.uint8))
    # normal cover: valency preserved
    degs = quotient.degrees()
    if not np.all(degs == two_n):
        raise GraphConsistencyError("quotient is not regular of valency 2^n")
    return quotient


# -- export -----------------------------------------------------------------------

def export_graph(g: GraphData, out: IO[str], fmt: str = "edgelist",
                 n: int | None = None, kind: str | None = None) -> None:
    """Write the graph deterministically (edges ascending, u < v)."""
    if fmt == "edgelist":
        out.write(f"# hn-graph n={n} kind={kind} "
                  f"vertices={g.num_vertices} edges={g.num_edges}\n")
        for u, v in g.edges():
            out.write(f"{u} {v}\n")
    elif fmt == "dot":
        out.write("graph {\n")
        degs = g.degrees()
        for v in range(g.num_vertices):
            if degs[v] == 0:
                out.write(f"  {v};\n")
        for u, v in g.edges():
            out.write(f"  {u} -- {v};\n")
        out.write("}\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def export_labels(g: GraphData, out: IO[str]) -> None:
    """Vertex table: <id>\\t<side>\\t<label> (side '-' when untagged)."""
    for v in range(g.num_vertices):
        side = "-"
        if g.sides is not None:
            side = "X" if g.sides[v] == 0 else "Y"
        label = g.labels[v] if g.labels is not None else ""
        out.write(f"{v}\t{side}\t{label}\n")


def parse_edgelist(lines: Sequence[str]) -> tuple[int, list[tuple[int, int]]]:
    """Read back an exported edge list (for round-trip checks)."""
    header = lines[0]
    if not header.startswith("# hn-graph"):
        raise ValueError("missing hn-graph header")
    fields = dict(tok.split("=") for tok in header[2:].split()[1:])
    nv = int(fields["vertices"])
    edges = [tuple(map(int, ln.split())) for ln in lines[1:] if ln.strip()]
    return nv, edges
