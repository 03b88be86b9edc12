import itertools
import math
from fractions import Fraction

import pytest

from erlab import DomainError, PreconditionError
from erlab.constructions import blowup_on_host
from erlab.exact import RealPower
from erlab.geometry import hermitian_unital
from erlab.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    empty_graph,
    random_gnp,
    union_same_vertices,
)
from erlab.patterns import is_free, is_kr_free
from erlab.rng import RngConfig
from erlab.sampling import (
    GoodSetIndex,
    GoodSetParams,
    drc_filter,
    enumerate_good_sets,
    extract_ffree_recursive,
    extract_ffree_theorem23,
    find_dense_pair,
    good_threshold,
    independent_set_k4free,
    pair_density,
)


def brute_good_sets(G, s, beta):
    T = math.ceil(G.n ** (1 - float(beta)) - 1e-12)
    out = []
    for X in itertools.combinations(range(G.n), s):
        N = (1 << G.n) - 1
        for x in X:
            N &= G.rows[x]
        if bin(N).count("1") >= T:
            out.append(sum(1 << x for x in X))
    return out


def test_params_validation():
    with pytest.raises(DomainError):
        GoodSetParams(2, Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(DomainError):
        GoodSetParams(0, Fraction(1, 2), Fraction(1, 4))


def test_good_threshold_is_exact():
    assert good_threshold(16, Fraction(1, 2)) == 4
    assert good_threshold(17, Fraction(1, 2)) == 5
    assert good_threshold(20, Fraction(1, 2)) == 5


def test_good_set_examples(frozen):
    p = GoodSetParams(2, Fraction(1, 2), Fraction(1, 4))
    goods, g = enumerate_good_sets(complete_bipartite(10, 10), p)
    assert g == frozen["good_sets_K10_10_s2"]
    assert enumerate_good_sets(empty_graph(12), p)[1] == 0
    assert enumerate_good_sets(complete_graph(20), GoodSetParams(3, Fraction(1, 2), Fraction(1, 4)))[1] == math.comb(20, 3)


@pytest.mark.parametrize("seed", range(6))
def test_good_sets_match_brute_force(seed):
    G = random_gnp(16, 0.6, RngConfig(seed))
    p = GoodSetParams(3, Fraction(1, 2), Fraction(1, 4))
    assert enumerate_good_sets(G, p)[0] == brute_good_sets(G, 3, p.beta)


def test_good_set_index():
    index = GoodSetIndex([0b011, 0b101, 0b110])
    assert index.total == 3
    assert index.g(0b001) == 2
    assert index.tally(1)[(0,)] == 2


def test_dense_pair_complete_graph():
    G = complete_graph(12)
    pair = find_dense_pair(G, GoodSetParams(2, Fraction(1, 2), Fraction(1, 4), Fraction(1, 5)))
    assert pair is not None
    assert pair_density(G, pair.U, pair.W) == pair.density
    assert RealPower(12, Fraction(-1, 5)) <= pair.density


def test_dense_pair_empty_graph_fails():
    log = []
    assert find_dense_pair(empty_graph(10), GoodSetParams(2, Fraction(1, 2), Fraction(1, 4)), log=log) is None
    assert log == ["no good sets"]


def test_dense_pair_bipartite():
    G = complete_bipartite(20, 20)
    pair = find_dense_pair(G, GoodSetParams(4, Fraction(1, 2), Fraction(1, 4), Fraction(1, 5)))
    assert pair is not None
    assert pair_density(G, pair.U, pair.W) >= float(RealPower(40, Fraction(-1, 5)))


def test_drc_complete_graph_deletes_nothing():
    G = complete_graph(10)
    V = (1 << 10) - 1
    res = drc_filter(G, V, V, 0, 2, Fraction(1, 100), RngConfig(0))
    assert res.A == V and not res.deleted and res.verified


def test_drc_zero_threshold():
    G = complete_bipartite(6, 6)
    U, W = 0b111111, 0b111111 << 6
    res = drc_filter(G, U, W, 0, 2, 0, RngConfig(0))
    assert res.A == W


def test_drc_post_condition_on_matching_instance():
    base = complete_bipartite(12, 12)
    matching = Graph.from_edges(24, [(2 * i, 2 * i + 1) for i in range(6)])
    G = union_same_vertices(base, matching)
    for seed in range(10):
        res = drc_filter(G, (1 << 24) - 1, (1 << 12) - 1, 2, 2, Fraction(1, 2), RngConfig(seed))
        assert res.verified


def test_drc_errors():
    with pytest.raises(DomainError):
        drc_filter(complete_graph(3), 0, 1, 1, 1, 0, RngConfig(0))


def test_sparse_extraction_bipartite_example():
    G = complete_bipartite(8, 8)
    rep = extract_ffree_theorem23(G, "K3", 4, Fraction(1, 4), RngConfig(0))
    assert rep.verified and rep.value >= 7
    assert G.edges_within(rep.witness) == 0


def test_sparse_extraction_small_graph_is_vacuous():
    rep = extract_ffree_theorem23(complete_graph(2), "K3", 4, Fraction(1, 4))
    assert rep.value == 2 and rep.route == "vacuous"


def test_sparse_extraction_preconditions():
    with pytest.raises(PreconditionError):
        extract_ffree_theorem23(complete_graph(5), "K2", 5, Fraction(1, 4))
    with pytest.raises(DomainError):
        extract_ffree_theorem23(complete_graph(5), "K3", 4, Fraction(1, 2))


def test_sparse_extraction_on_blowup_reports_curve():
    K = hermitian_unital(3).incidence
    H, _ = blowup_on_host(K, "C4", RngConfig(1), r=4)
    rep = extract_ffree_theorem23(H, "K2,2", 4, Fraction(1, 4), RngConfig(2))
    assert rep.verified and is_free(H, "K2,2", rep.witness)
    assert rep.curves["reference"] == "0.5*n^(1/2-2*delta)"
    assert rep.curves["reference_value"] > 0


def test_recursive_base_case():
    rep = extract_ffree_recursive(cycle_graph(5), "K2", 1, Fraction(1, 10))
    assert rep.value == 2 and rep.verified


def test_recursive_multipartite_bottoms_out_in_a_part():
    G = complete_multipartite([8, 8, 8])
    rep = extract_ffree_recursive(G, "K2,2", 2, Fraction(1, 10), RngConfig(0), s=3, epsilon=Fraction(1, 5))
    assert rep.verified and rep.value == 8
    assert any("recurse into A" in line for line in rep.trace)


def test_recursive_takes_clique_branch():
    # This seeded G(30, 0.3) yields an edge inside A, so the recursion moves
    # into the common neighbourhood B of that edge, which must be edgeless.
    G = random_gnp(30, 0.3, RngConfig(3))
    rep = extract_ffree_recursive(G, "K2,2", 2, Fraction(1, 10), RngConfig(0), s=2, epsilon=Fraction(1, 5))
    assert rep.verified
    assert any("recurse into B" in line for line in rep.trace)
    assert G.edges_within(rep.witness) == 0


def test_independent_set_k4free():
    assert independent_set_k4free(empty_graph(6)).value == 6
    assert independent_set_k4free(cycle_graph(5), trials=10).value == 2
    with pytest.raises(PreconditionError) as info:
        independent_set_k4free(complete_graph(4))
    assert sorted(info.value.witness) == [0, 1, 2, 3]


def test_independent_set_on_blowup():
    K = hermitian_unital(3).incidence
    H, _ = blowup_on_host(K, "C4", RngConfig(4), r=4)
    assert is_kr_free(H, 4)[0]
    rep = independent_set_k4free(H, 16, RngConfig(5))
    assert rep.verified and H.edges_within(rep.witness) == 0
    assert rep.curves["reference"] == "d/n^(1/3)"
