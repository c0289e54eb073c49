import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hyperreg.hypergraph import (
    Hypergraph,
    KPartiteHypergraph,
    VertexRef,
    complement_partite,
    complete_partite,
    count_flat_cliques,
    count_k_cliques,
    cross_part_tuples,
    expected_edge_count,
    find_k_clique,
    generate_parity_regular,
    generate_sum_regular,
    is_clique,
    make_edge,
    n_cross_part_tuples,
    pair_part_counts,
    random_constant_sets,
    random_hypergraph,
    regularity,
    validate,
)
from hyperreg.templates import build_template


def V(p, i):
    return VertexRef(p, i)


def naive_pair_counts(H):
    """Independent recount: loop over every cross-part pair and every edge."""
    out = {}
    for pair in cross_part_tuples(H.part_sizes, 2):
        out[pair] = sum(1 for e in H.edges if set(pair) <= set(e))
    return out


# validate

def test_validate_template_positive_part_is_clean():
    assert validate(build_template(2, 3).positive_part).ok


def test_validate_repeated_part():
    H = KPartiteHypergraph(3, 2, (2, 2, 2), ((V(0, 0), V(0, 1)),))
    rep = validate(H)
    assert not rep.ok
    assert any("repeated part" in v for v in rep.violations)


def test_validate_index_out_of_range():
    H = KPartiteHypergraph(3, 2, (2, 2, 2), ((V(0, 2), V(1, 0)),))
    assert any("index out of range" in v for v in validate(H).violations)


def test_validate_duplicate_edge_and_multiple_violations():
    e = (V(0, 0), V(1, 0))
    H = KPartiteHypergraph(3, 2, (2, 2, 2), (e, e, (V(1, 0), V(1, 1))))
    viol = validate(H).violations
    assert any("duplicate edge" in v for v in viol)
    assert any("repeated part" in v for v in viol)


def test_validate_bad_h():
    H = KPartiteHypergraph(3, 3, (1, 1, 1), ())
    assert not validate(H).ok


def test_from_edges_is_strict():
    with pytest.raises(ValueError):
        KPartiteHypergraph.from_edges(3, 2, (2, 2, 2), [(V(0, 0), V(0, 1))])


def test_edges_are_canonical():
    H = KPartiteHypergraph(3, 2, (2, 2, 2), ((V(2, 1), V(0, 0)),))
    assert H.edges == ((V(0, 0), V(2, 1)),)
    assert (V(2, 1), V(0, 0)) in H


# regularity

def test_regularity_template_positive_part():
    rep = regularity(build_template(2, 3).positive_part, 1)
    assert rep.regular and rep.lam == 2


@pytest.mark.parametrize("s", [1, 2])
def test_regularity_empty(s):
    H = KPartiteHypergraph(4, 3, (3,) * 4, ())
    assert regularity(H, s).lam == 0


def test_regularity_sum_regular_exhaustive():
    H = generate_sum_regular(4, 5, random_constant_sets(4, 5, 2, seed=1))
    counts = naive_pair_counts(H)
    assert set(counts.values()) == {4}
    assert regularity(H, 2).lam == 4
    # downward closure: s = 1 regular as well
    assert regularity(H, 1).regular


def test_regularity_witness():
    H = KPartiteHypergraph(3, 2, (2, 2, 2), ((V(0, 0), V(1, 0)),))
    rep = regularity(H, 1)
    assert not rep.regular
    tup, count = rep.witness
    assert tup == (V(0, 1),) and count == 0


@pytest.mark.parametrize("s", [0, 3])
def test_regularity_s_out_of_range(s):
    with pytest.raises(ValueError):
        regularity(KPartiteHypergraph(4, 3, (2,) * 4, ()), s)


def test_pair_part_counts():
    H = generate_sum_regular(5, 4, random_constant_sets(5, 4, 3, seed=2))
    assert pair_part_counts(H) == 3
    H2 = KPartiteHypergraph(4, 3, (2,) * 4, ((V(0, 0), V(1, 0), V(2, 0)),))
    assert pair_part_counts(H2) is None


# cliques

def test_zero_sets_give_zero_clique():
    sets = {T: {0, 1} for T in itertools.combinations(range(4), 3)}
    H = generate_sum_regular(4, 5, sets)
    assert find_k_clique(H) == tuple(V(p, 0) for p in range(4))


def test_no_edges_no_clique():
    assert find_k_clique(KPartiteHypergraph(4, 3, (3,) * 4, ())) is None


def test_complete_partite_first_clique_and_count():
    H = complete_partite(3, 2, (2, 2, 2))
    assert find_k_clique(H) == (V(0, 0), V(1, 0), V(2, 0))
    assert count_k_cliques(H) == 8


def brute_cliques(H):
    return sum(
        1
        for t in itertools.product(*(range(n) for n in H.part_sizes))
        if is_clique(H, [V(p, i) for p, i in enumerate(t)])
    )


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 4), st.integers(2, 3), st.integers(1, 3), st.floats(0, 1), st.integers(0, 10 ** 6))
def test_clique_search_matches_brute_force(k, h, n, p, seed):
    if h >= k:
        h = k - 1
    H = random_hypergraph(k, h, n, p, seed)
    count = count_k_cliques(H)
    assert count == brute_cliques(H)
    assert (find_k_clique(H) is not None) == (count > 0)


# complement

def test_complement_of_empty_is_complete():
    H = KPartiteHypergraph(4, 3, (2,) * 4, ())
    assert complement_partite(H).edge_set == complete_partite(4, 3, (2,) * 4).edge_set


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(0, 1))
def test_complement_involution(seed, p):
    H = random_hypergraph(4, 3, 3, p, seed)
    assert complement_partite(complement_partite(H)).edge_set == H.edge_set


@pytest.mark.parametrize("n,t", [(4, 1), (5, 2), (6, 4)])
def test_complement_regularity(n, t):
    k = 4
    H = generate_sum_regular(k, n, random_constant_sets(k, n, t, seed=n))
    mu = regularity(H, 2).lam
    assert mu == (k - 2) * t
    assert regularity(complement_partite(H), 2).lam == (k - 2) * n - mu


# generators

def test_random_hypergraph_extremes_and_determinism():
    assert len(random_hypergraph(3, 2, 3, 0.0, 1).edges) == 0
    assert len(random_hypergraph(3, 2, 3, 1.0, 1).edges) == n_cross_part_tuples((3,) * 3, 2)
    assert random_hypergraph(4, 3, 3, 0.4, 9).edges == random_hypergraph(4, 3, 3, 0.4, 9).edges


def test_random_hypergraph_bad_p():
    with pytest.raises(ValueError):
        random_hypergraph(3, 2, 2, 1.5, 0)


@pytest.mark.parametrize("t", [0, 5])
def test_sum_regular_rejects_degenerate_t(t):
    sets = {T: set(range(t)) for T in itertools.combinations(range(4), 3)}
    with pytest.raises(ValueError):
        generate_sum_regular(4, 5, sets)


def test_sum_regular_accepts_frozenset_keys():
    sets = {frozenset(T): {1} for T in itertools.combinations(range(4), 3)}
    H = generate_sum_regular(4, 3, sets)
    assert regularity(H, 2).lam == 2


@pytest.mark.parametrize("k,n,seed", [(4, 4, 0), (4, 8, 3), (4, 12, 1), (5, 4, 2), (5, 8, 5)])
def test_parity_regular_is_regular_and_clique_free(k, n, seed):
    H = generate_parity_regular(k, n, seed)
    assert regularity(H, 2).lam == (k - 2) * n // 2
    assert pair_part_counts(H) == n // 2
    assert find_k_clique(H) is None


@pytest.mark.parametrize("k,n,t", [(4, 5, 2), (5, 4, 1), (4, 6, 3)])
def test_double_count_identity(k, n, t):
    H = generate_sum_regular(k, n, random_constant_sets(k, n, t, seed=0))
    for s in (1, 2):
        lam = regularity(H, s).lam
        assert expected_edge_count(k, 3, n, s, lam) == len(H.edges)


@pytest.mark.parametrize("h,k", [(2, 3), (2, 4), (3, 4)])
def test_double_count_on_templates(h, k):
    T = build_template(h, k)
    n = T.base.part_sizes[0]
    for part in (T.positive_part, T.negative_part):
        for s in range(1, h):
            lam = regularity(part, s).lam
            assert lam is not None  # downward closure
            assert expected_edge_count(k, h, n, s, lam) == len(part.edges)


def test_flat_hypergraph():
    G = Hypergraph(4, 2, frozenset({(0, 1), (1, 2), (0, 2), (2, 3)}))
    assert count_flat_cliques(G, 3) == 1
    with pytest.raises(ValueError):
        Hypergraph(3, 2, frozenset({(0, 0)}))
    H = complete_partite(3, 2, (1, 2, 1))
    F = Hypergraph.flatten(H)
    assert F.n_vertices == 4 and len(F.edges) == 5


def test_cross_part_tuples_counts():
    sizes = (2, 3, 1, 2)
    for s in range(1, 4):
        tuples = list(cross_part_tuples(sizes, s))
        assert len(tuples) == n_cross_part_tuples(sizes, s) == len(set(tuples))


def test_make_edge_sorts_by_part():
    assert make_edge([(2, 0), (0, 1)]) == (V(0, 1), V(2, 0))
    assert str(V(1, 3)) == "1:3"
