import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tdlcrank import checks
from tdlcrank import tree as T
from tdlcrank.errors import HypothesisError
from tdlcrank.tree import TreeVertex as V

v0 = V(0)


# -- oracle: act on inward address words from a fixed anchor ------------------


def oracle_apply(g, v, anchor=40):
    """Portrait action on the address word of v below (anchor, "")."""
    portrait = {tuple(T.inward_path(anchor, s)): p for s, p in g.sigma}
    word = T.inward_path(anchor, v)
    image = [portrait.get(tuple(word[:i]), tuple(range(g.branching)))[x]
             for i, x in enumerate(word)]
    u = T.vertex_from_path(anchor, image)
    return V(u.k + g.translation, u.w)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]))
def test_apply_matches_address_oracle(seed, b):
    rng = random.Random(seed)
    g = T.random_automorphism(rng, b)
    for _ in range(5):
        v = T.random_vertex(rng, b)
        assert T.apply(g, v) == oracle_apply(g, v)


# -- worked examples ------------------------------------------------------------


def test_line_structure():
    assert T.eta(v0) == 0
    assert T.in_neighbor(v0, 0) == V(-1)
    assert T.in_neighbor(v0, 2) == V(0, (2,))
    assert T.eta(V(2, (1, 2))) == 0
    assert T.color_of(v0) == 0
    assert T.out_neighbor(V(0, (1,))) == v0
    assert T.out_neighbor(v0) == V(1)


def test_non_canonical_vertex_rejected():
    with pytest.raises(T.TreeError):
        V(0, (0, 1))


def test_translation_and_identity():
    t = T.translation(1)
    assert T.apply(t, v0) == V(1)
    v = V(-2, (2, 1))
    assert T.apply(T.identity(), v) == v
    assert all(T.local_action(t, u) == (0, 1, 2) for u in (v0, v))


def test_single_transposition_at_v0():
    g = T.local_at(v0, (1, 0, 2))
    assert T.apply(g, V(0, (1,))) == V(-1)
    assert T.apply(g, V(-1)) == V(0, (1,))
    assert T.apply(g, V(0, (2,))) == V(0, (2,))
    assert T.apply(g, V(-1, (2,))) == V(0, (1, 2))


def test_compose_inverse_and_powers():
    rng = random.Random(3)
    g = T.random_automorphism(rng)
    assert T.compose(g, T.inverse(g)).is_identity()
    tt = T.compose(T.translation(1), T.translation(1))
    assert tt.translation == 2 and not tt.sigma


def test_singularities():
    U = T.stabilizer(3, 0)
    assert T.singularities(T.translation(1), U) == set()
    assert T.singularities(T.local_at(v0, (1, 0, 2)), U) == {v0}
    assert T.singularities(T.local_at(v0, (0, 2, 1)), U) == set()
    with pytest.raises(T.TreeError):
        T.singularities(T.identity(), [(1, 0, 2)])


def test_decompose():
    assert T.decompose(T.translation(2)) == (2, T.identity())
    p = T.local_at(V(1, (2,)), (2, 0, 1))
    assert T.decompose(p) == (0, p)


def test_gamma_examples():
    gens = T.sym_generators(3)
    assert T.gamma_for_geodesic(v0, v0, gens).is_identity()
    gam = T.gamma_for_geodesic(V(0, (1,)), v0, gens)
    assert T.apply(gam, V(0, (1,))) == v0
    w = V(0, (2, 1, 1))
    gam = T.gamma_for_geodesic(w, v0, gens)
    assert T.apply(gam, w) == v0
    assert set(gam.support) <= {V(0, (2, 1)), V(0, (2,)), v0}


def test_gamma_needs_transitive_generators():
    with pytest.raises(HypothesisError):
        T.gamma_for_geodesic(V(0, (1,)), v0, [(0, 2, 1)])
    with pytest.raises(T.TreeError):
        T.gamma_for_geodesic(V(0, (1,)), V(0, (1,)), T.sym_generators(3))


def test_colors_to_zero_large_group():
    # Sym(10) has 3.6 million elements; the search only touches colors
    out = T.colors_to_zero(T.sym_generators(10), 10)
    assert sorted(out) == list(range(10))
    assert all(p[x] == 0 for x, p in out.items())


def test_orbit_examples():
    gens = [T.translation(1)] + [T.local_at(v0, p) for p in T.sym_generators(3)]
    got = T.orbit(gens, v0, -2, 2, 2)
    assert set(got) == set(T.canonical_vertices(-2, 2, 2, 3))
    assert set(T.orbit([T.translation(1)], v0, -2, 2, 2)) == {V(k) for k in range(-2, 3)}
    assert set(T.orbit([T.identity()], v0, -2, 2, 2)) == {v0}


def test_horoball_example():
    p = T.local_at(V(2), (1, 0, 2))
    assert T.max_moved_level(p) == 1
    assert T.in_horoball_fixator(p, 2) and not T.in_horoball_fixator(p, 1)
    assert T.max_moved_level(T.identity()) is None
    assert all(T.in_horoball_fixator(T.identity(), n) for n in range(-5, 5))
    with pytest.raises(T.TreeError):
        T.max_moved_level(T.translation(1))


def test_wreath_embedding_small():
    rng = random.Random(5)
    a, c = T.random_wreath(rng, 2), T.random_wreath(rng, 2)
    assert T.extract_wreath(T.embed_wreath(a), 2) == a
    assert T.embed_wreath(a * c) == T.compose(T.embed_wreath(a), T.embed_wreath(c))
    assert (a * a.inverse()).perms == ()
    with pytest.raises(T.TreeError):
        T.extract_wreath(T.local_at(V(0, (1, 1)), (1, 0, 2)), 2)


def test_generated_group_sizes():
    assert len(T.generated_group(T.sym_generators(4), 4)) == 24
    assert len(T.generated_group([(1, 2, 0)], 3)) == 3


def test_check_perm_rejects_non_permutations():
    with pytest.raises(T.TreeError):
        T.check_perm((0, 0, 1), 3)
    with pytest.raises(T.TreeError):
        T.local_at(v0, (0, 1), 3)


# -- randomised suites ----------------------------------------------------------


@pytest.mark.parametrize("b", [2, 3, 4, 5, 10])
def test_selftest_all_branchings(b):
    results = checks.run_selftest(b, seed=7, cases=40)
    bad = [r.as_dict() for r in results if not r.passed]
    assert not bad


def test_selftest_is_deterministic():
    a = [r.as_dict() for r in checks.run_selftest(3, 11, 20)]
    b = [r.as_dict() for r in checks.run_selftest(3, 11, 20)]
    assert a == b


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_conj_by_t_composes(seed):
    rng = random.Random(seed)
    g = T.random_automorphism(rng)
    m, n = rng.randint(-3, 3), rng.randint(-3, 3)
    assert T.conj_by_t(T.conj_by_t(g, m), n) == T.conj_by_t(g, m + n)
    t = T.translation(m)
    assert T.conj_by_t(g, m) == T.compose(t, T.compose(g, T.inverse(t)))
