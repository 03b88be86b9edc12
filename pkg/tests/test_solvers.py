import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erlab import BudgetError, DomainError
from erlab.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph6_encode,
    lexicographic_product,
    petersen_graph,
    random_gnp,
)
from erlab.patterns import as_pattern, contains_subgraph, is_free
from erlab.rng import RngConfig
from erlab import solvers
from erlab.solvers import (
    alpha_F,
    canonical_form,
    canonical_graph,
    count_ffree_sets,
    enumerate_graphs,
    f_exact,
    independence_number,
    max_free_set,
)
from oracles import alpha_F_brute, count_free_sets_brute
from strategies import graphs, to_nx

NAMED = {"C5": cycle_graph(5), "K3,3": complete_bipartite(3, 3), "Petersen": petersen_graph()}


def test_independence_frozen(frozen):
    for name, value in frozen["independence"].items():
        rep = independence_number(NAMED[name])
        assert rep.value == value and rep.optimal and rep.verified


def test_greedy_independence_is_valid():
    G = random_gnp(60, 0.2, RngConfig(3))
    rep = independence_number(G, "greedy")
    assert rep.verified and not rep.optimal
    assert rep.value >= G.n / (2 * G.num_edges() / G.n + 1)
    with pytest.raises(DomainError):
        independence_number(G, "fast")


def test_alpha_F_examples():
    assert alpha_F(complete_bipartite(3, 3), "C4").value == 4
    assert alpha_F(complete_graph(5), "K3").value == 2
    assert alpha_F(cycle_graph(5), "K3").value == 5
    assert alpha_F(empty_graph(3), "K2,2").value == 3
    rep = alpha_F(petersen_graph(), "C5")
    assert rep.verified and is_free(petersen_graph(), "C5", rep.witness)


@pytest.mark.parametrize("F", ["K2", "K3", "C4", "P3", "K1,3"])
@given(G=graphs(max_n=8))
@settings(max_examples=40, deadline=None)
def test_alpha_F_matches_brute_force(F, G):
    rep = alpha_F(G, F)
    assert rep.value == alpha_F_brute(G, as_pattern(F).graph)
    assert is_free(G, F, rep.witness)


@given(G=graphs(max_n=7), data=st.data())
@settings(max_examples=40, deadline=None)
def test_alpha_F_floor_mode(G, data):
    true = alpha_F(G, "C4").value
    floor = data.draw(st.integers(-1, G.n))
    rep = alpha_F(G, "C4", floor=floor)
    assert rep.value == (true if true > floor else -1)


def test_alpha_F_induced_mode():
    # K4 contains C4 as a subgraph but not as an induced subgraph.
    assert alpha_F(complete_graph(4), "C4").value == 3
    assert alpha_F(complete_graph(4), "C4", induced=True).value == 4


def test_alpha_F_greedy_lower_bounds_exact():
    for seed in range(5):
        G = random_gnp(14, 0.5, RngConfig(seed))
        greedy = alpha_F(G, "K3", "greedy", RngConfig(seed))
        assert greedy.verified and not greedy.optimal
        assert greedy.value <= alpha_F(G, "K3").value


def test_numpy_and_python_searches_agree(monkeypatch):
    cases = []
    for seed in range(12):
        G = random_gnp(16, 0.45, RngConfig(seed))
        cases.append((G, solvers.copy_sets(G, "C4", False)))
    for floor in (-1, 5):
        results = []
        for limit in (64, 0):
            monkeypatch.setattr(solvers, "NUMPY_MAX_N", limit)
            results.append([max_free_set(G.n, E, G.rows, 3, floor) for G, E in cases])
        assert results[0] == results[1]


def test_alpha_F_budget():
    G = random_gnp(40, 0.5, RngConfig(1))
    with pytest.raises(BudgetError):
        alpha_F(G, "K3", budget=5)


def test_count_examples(frozen):
    names = {"K4": complete_graph(4), "C6": cycle_graph(6)}
    for case in frozen["count_ffree"]:
        assert count_ffree_sets(names[case["G"]], case["F"], case["t"], False) == case["count"]


@given(G=graphs(max_n=8), t=st.integers(0, 8))
@settings(max_examples=50, deadline=None)
def test_count_matches_brute_force(G, t):
    t = min(t, G.n)
    for F in ("K3", "C4"):
        assert count_ffree_sets(G, F, t, False) == count_free_sets_brute(G, as_pattern(F).graph, t)


def test_count_budget():
    with pytest.raises(BudgetError):
        count_ffree_sets(empty_graph(60), "K3", 30, False)


@given(G=graphs(max_n=9), seed=st.integers(0, 1000))
@settings(max_examples=80, deadline=None)
def test_canonical_form_is_invariant(G, seed):
    perm = list(range(G.n))
    random.Random(seed).shuffle(perm)
    H = Graph.from_edges(G.n, [(perm[u], perm[v]) for u, v in G.edges()])
    assert canonical_form(G) == canonical_form(H)
    assert canonical_graph(G) == canonical_graph(H)
    assert nx.is_isomorphic(to_nx(canonical_graph(G)), to_nx(G))


def test_canonical_form_separates_nonisomorphic():
    atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 6]
    forms = set()
    for g in atlas:
        G = Graph.from_edges(6, g.edges())
        forms.add(canonical_form(G))
    assert len(forms) == len(atlas) == 156


def test_enumeration_counts(frozen):
    for n in range(1, 8):
        assert len(enumerate_graphs(n)) == frozen["nonisomorphic_graphs"][str(n)]
        assert len(enumerate_graphs(n, forbidden="K3")) == frozen["triangle_free_graphs"][str(n)]


def test_enumeration_count_eight(frozen):
    assert len(enumerate_graphs(8, forbidden="K3")) == frozen["triangle_free_graphs"]["8"]


def test_f_exact_small():
    res = f_exact("K2", "K3", 5)
    assert res.value == 2
    assert graph6_encode(canonical_graph(res.witness)) == graph6_encode(canonical_graph(cycle_graph(5)))
    assert contains_subgraph(res.witness, "K3") is None
    assert f_exact("K2", "K3", 1).vacuous
    with pytest.raises(BudgetError):
        f_exact("K2", "K3", 12)
    with pytest.raises(DomainError):
        f_exact("K2", "K3", -1)


def test_f_exact_matches_ramsey_values():
    # R(3,3) = 6: every triangle-free graph on 6 vertices has an independent 3-set.
    assert f_exact("K2", "K3", 6).value == 3
    # R(3,3) > 5 makes C5 extremal at n = 5; R(3,4) = 9 gives 3 at n = 7.
    assert f_exact("K2", "K3", 7).value == 3


def test_product_independence_multiplies():
    G, H = cycle_graph(5), complete_bipartite(2, 3)
    P = lexicographic_product(G, H)
    assert independence_number(P).value == independence_number(G).value * independence_number(H).value
