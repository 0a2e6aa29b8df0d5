"""Actions, orbits, 2-arc transitivity, diagrams, the ball identity and
the semisymmetry certificate."""

import random

import numpy as np
import pytest

from mixdih.graphs import build_gamma, build_sigma, graph_from_edges, \
    quotient_by_derived
from mixdih.group import (
    IDENTITY,
    context,
    gf2_identity,
    gl_enumerate,
    induced_automorphism,
    mul,
    xgen,
    ygen,
)
from mixdih.symmetry import (
    ball_intersect_derived,
    check_local_2at,
    commutator_square,
    compose,
    coset_neighbors,
    distance_layers,
    edge_regular_witness,
    equitable_refinement,
    gl_action,
    is_graph_automorphism,
    layer_certificate,
    orbits,
    refined_diagram,
    right_action,
    rooted_two_arcs,
    semisymmetry_certificate,
)
from mixdih.verify import (
    EXPECTED_CELLS_X_N2,
    EXPECTED_CELLS_Y_N2,
    EXPECTED_LAYERS_X_N2,
    EXPECTED_LAYERS_Y_N2,
)


@pytest.fixture(scope="module")
def ctx2():
    return context(2)


@pytest.fixture(scope="module")
def sigma2(ctx2):
    return build_sigma(ctx2)


def from_pairs(nv, pairs):
    u, v = zip(*pairs)
    return graph_from_edges(nv, u, v)


# -- actions ------------------------------------------------------------------

def test_right_action_identity(ctx2, sigma2):
    p = right_action(ctx2, sigma2, IDENTITY)
    assert np.array_equal(p, np.arange(512))


def test_right_action_is_automorphism(ctx2, sigma2):
    rng = random.Random(0)
    for _ in range(25):
        h = ctx2.unpack(rng.getrandbits(10))
        p = right_action(ctx2, sigma2, h)
        assert is_graph_automorphism(sigma2.graph, p)
        # side-preserving
        assert np.all((p < 256) == (np.arange(512) < 256))


def test_right_action_homomorphism(ctx2, sigma2):
    rng = random.Random(1)
    for _ in range(50):
        g = ctx2.unpack(rng.getrandbits(10))
        h = ctx2.unpack(rng.getrandbits(10))
        assert np.array_equal(
            compose(right_action(ctx2, sigma2, g),
                    right_action(ctx2, sigma2, h)),
            right_action(ctx2, sigma2, mul(ctx2, g, h)))


def test_right_action_edge_regular(ctx2, sigma2):
    w = edge_regular_witness(ctx2, sigma2)
    assert w["edge_count_matches_group"]
    assert w["base_edge_orbit"] == 1024
    assert w["edge_transitive"]


def test_gl_action_all_pairs(ctx2, sigma2):
    rx = sigma2.vid_of("X", IDENTITY)
    ry = sigma2.vid_of("Y", IDENTITY)
    mats = gl_enumerate(2)
    for g1 in mats:
        for g2 in mats:
            p = gl_action(ctx2, sigma2,
                          induced_automorphism(ctx2, g1, g2))
            assert p[rx] == rx and p[ry] == ry
            assert is_graph_automorphism(sigma2.graph, p)


def test_gl_action_neighbor_orbits(ctx2, sigma2):
    # on the neighbors of the X base vertex: the Y base vertex is fixed,
    # the other three form one orbit
    rx = sigma2.vid_of("X", IDENTITY)
    ry = sigma2.vid_of("Y", IDENTITY)
    ident = gf2_identity(2)
    perms = []
    from mixdih.group import gl_generators
    for mat in gl_generators(2):
        perms.append(gl_action(ctx2, sigma2,
                               induced_automorphism(ctx2, mat, ident)))
        perms.append(gl_action(ctx2, sigma2,
                               induced_automorphism(ctx2, ident, mat)))
    nbrs = [int(v) for v in sigma2.graph.neighbors(rx)]
    parts = orbits(perms, nbrs)
    assert sorted(len(p) for p in parts) == [1, 3]
    assert [ry] in parts


# -- orbits ---------------------------------------------------------------------

def test_orbits_no_generators():
    assert orbits([], [3, 1, 2]) == [[3], [1], [2]]


def test_orbits_h_on_vertices(ctx2, sigma2):
    gens = [xgen(ctx2, 1), xgen(ctx2, 2), ygen(ctx2, 1), ygen(ctx2, 2)]
    perms = [right_action(ctx2, sigma2, h) for h in gens]
    parts = orbits(perms, range(512))
    assert sorted(len(p) for p in parts) == [256, 256]
    sides = [set(p) for p in parts]
    assert set(range(256)) in sides and set(range(256, 512)) in sides


# -- local 2-arc transitivity ------------------------------------------------------

def test_coset_neighbors_of_base(ctx2):
    from mixdih.graphs import canonical_coset
    root = canonical_coset(ctx2, "X", IDENTITY)
    nbrs = coset_neighbors(ctx2, root)
    assert len(nbrs) == 4
    assert all(cv.side == "Y" for cv in nbrs)
    reps = {ctx2.pack(cv.rep) for cv in nbrs}
    assert reps == {0, 1, 2, 3}  # the Y-cosets of X's members


@pytest.mark.parametrize("n,count", [(2, 12), (3, 56)])
def test_rooted_two_arc_count(n, count):
    ctx = context(n)
    assert len(rooted_two_arcs(ctx, "X")) == count
    assert len(rooted_two_arcs(ctx, "Y")) == count


@pytest.mark.parametrize("n", [2, 3])
def test_local_2at_single_orbit(n):
    rep = check_local_2at(context(n))
    assert rep["pass"]
    for side in ("X", "Y"):
        assert rep["sides"][side]["orbits"] == 1


def test_local_2at_fails_without_gl():
    rep = check_local_2at(context(2), use_gl=False)
    assert not rep["pass"]
    assert rep["sides"]["X"]["orbits"] > 1


# -- distance diagrams -----------------------------------------------------------------

def test_layers_from_x(ctx2, sigma2):
    d = distance_layers(sigma2.graph, sigma2.vid_of("X", IDENTITY), "X")
    assert d.layers == EXPECTED_LAYERS_X_N2
    assert sum(d.layers) == 512
    assert d.unreachable == 0


def test_layers_from_y(ctx2, sigma2):
    d = distance_layers(sigma2.graph, sigma2.vid_of("Y", IDENTITY), "Y")
    assert d.layers == EXPECTED_LAYERS_Y_N2
    assert sum(d.layers) == 512


def test_layers_k44(ctx2, sigma2):
    q = quotient_by_derived(ctx2, sigma2)
    assert distance_layers(q, 0).layers == [1, 4, 3]


def test_layers_disconnected_reports_unreachable():
    g = from_pairs(4, [(0, 1), (2, 3)])
    d = distance_layers(g, 0)
    assert d.layers == [1, 1]
    assert d.unreachable == 2


# -- equitable refinement -----------------------------------------------------------------

def test_equitable_k44_single_seed(ctx2, sigma2):
    # K44 is walk-regular: the all-in-one seed is already equitable
    q = quotient_by_derived(ctx2, sigma2)
    part = equitable_refinement(q, [list(range(8))])
    assert [len(c) for c in part.cells] == [8]
    assert part.counts == [[4]]


def test_equitable_refines_seed():
    # path 0-1-2: seed all-in-one splits ends from middle
    g = from_pairs(3, [(0, 1), (1, 2)])
    part = equitable_refinement(g, [[0, 1, 2]])
    assert sorted(len(c) for c in part.cells) == [1, 2]


def test_refined_diagram_x(ctx2, sigma2):
    d = refined_diagram(sigma2.graph, sigma2.vid_of("X", IDENTITY), "X")
    assert [sorted(c) for c in d.cells] == EXPECTED_CELLS_X_N2


def test_refined_diagram_y(ctx2, sigma2):
    d = refined_diagram(sigma2.graph, sigma2.vid_of("Y", IDENTITY), "Y")
    assert [sorted(c) for c in d.cells] == EXPECTED_CELLS_Y_N2
    # the distance-4 split: the 9-cell points only backwards
    backwards_only = [(d_, s) for (d_, s, d2, s2, cnt) in d.cell_edges
                      if d_ == 4 and s == 9 and d2 == 5]
    assert backwards_only == []


def test_equitable_seed_validation(ctx2, sigma2):
    with pytest.raises(ValueError):
        equitable_refinement(sigma2.graph, [[0, 1], [1, 2]])
    with pytest.raises(ValueError):
        equitable_refinement(sigma2.graph, [[0, 1]])


# -- ball identity ----------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_ball_radius_zero(n):
    assert ball_intersect_derived(context(n), 0) == [IDENTITY]


def test_ball_radius_two(ctx2):
    assert ball_intersect_derived(ctx2, 2) == [IDENTITY]


@pytest.mark.parametrize("n,count", [(2, 9), (3, 49)])
def test_ball_radius_four(n, count):
    ctx = context(n)
    ball = ball_intersect_derived(ctx, 4)
    square = commutator_square(ctx)
    assert len(square) == count
    assert set(ball) == set(square) | {IDENTITY}


def test_ball_negative_radius(ctx2):
    with pytest.raises(ValueError):
        ball_intersect_derived(ctx2, -1)


def test_ball_with_prebuilt_gamma(ctx2):
    gamma = build_gamma(ctx2)
    assert ball_intersect_derived(ctx2, 4, gamma=gamma) == \
        ball_intersect_derived(ctx2, 4)


def test_commutator_square_distinct(ctx2):
    # the commutators [x,y] are pairwise distinct (injective w-part)
    sq = commutator_square(ctx2)
    assert len({e.m for e in sq}) == 9


# -- semisymmetry certificate --------------------------------------------------------------------

def test_certificate_passes(ctx2, sigma2):
    cert = semisymmetry_certificate(ctx2, sigma2)
    assert cert["pass"]
    assert cert["edge_transitive"]
    assert cert["intransitivity_certificate"] == "layer-profile"
    assert cert["layers_X"] == EXPECTED_LAYERS_X_N2
    assert cert["layers_Y"] == EXPECTED_LAYERS_Y_N2
    # first difference at distance 4: 54 vs 81
    first_diff = next(i for i, (a, b) in enumerate(
        zip(cert["layers_X"], cert["layers_Y"])) if a != b)
    assert first_diff == 4
    assert (cert["layers_X"][4], cert["layers_Y"][4]) == (54, 81)


def test_certificate_inconclusive_on_k44(ctx2, sigma2):
    # K44 is vertex-transitive: equal profiles, correctly inconclusive
    q = quotient_by_derived(ctx2, sigma2)
    lc = layer_certificate(q, 0, 4)
    assert lc["certificate"] == "inconclusive"
    assert lc["layers_u"] == lc["layers_v"] == [1, 4, 3]
