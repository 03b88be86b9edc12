import pytest
from hypothesis import given, settings
from networkx.algorithms import isomorphism

from erlab import DomainError
from erlab.graph import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    lexicographic_product,
    petersen_graph,
)
from erlab.incidence import BipartiteIncidence
from erlab.patterns import (
    Pattern,
    as_pattern,
    bipartite_has_C4,
    bipartite_has_C6,
    c4_free_by_pair_counting,
    chromatic_number,
    clique_number,
    contains_subgraph,
    copy_sets,
    every_small_subgraph_colorable,
    has_rooted_K4_subdivision,
    is_free,
    is_kr_free,
    rooted_k4_subdivision_witness,
)
from oracles import adjacency, clique_number_brute, copy_masks, is_k_colourable_brute
from strategies import graphs, to_nx

FANO_LINES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def fano() -> BipartiteIncidence:
    return BipartiteIncidence.from_y_lists(7, [list(line) for line in FANO_LINES]).transpose()


def test_pattern_parsing():
    assert as_pattern("K3").num_edges == 3
    assert as_pattern("K_{2,2}").graph == complete_bipartite(2, 2)
    assert as_pattern("K1,1").graph == complete_graph(2)
    assert as_pattern("P3").num_edges == 2
    assert as_pattern("E3").num_edges == 0
    assert as_pattern("Petersen").s == 10
    assert as_pattern("g6:Bw").graph == complete_graph(3)
    with pytest.raises(DomainError):
        Pattern.parse("Q7")
    with pytest.raises(DomainError):
        as_pattern("K1")


def test_embedding_examples():
    assert contains_subgraph(cycle_graph(5), "K3") is None
    w = contains_subgraph(complete_graph(4), "C4")
    assert w is not None and len(set(w)) == 4
    P = petersen_graph()
    assert contains_subgraph(P, "C4") is None
    w = contains_subgraph(P, "C5")
    assert w is not None
    for i in range(5):
        assert P.has_edge(w[i], w[(i + 1) % 5])


@pytest.mark.parametrize("F", ["K3", "C4", "P3", "K2,2", "C5", "K1,3"])
@given(G=graphs(max_n=8))
@settings(max_examples=40, deadline=None)
def test_containment_matches_networkx(F, G):
    Fg = as_pattern(F).graph
    matcher = isomorphism.GraphMatcher(to_nx(G), to_nx(Fg))
    expected = matcher.subgraph_is_monomorphic()
    w = contains_subgraph(G, F)
    assert (w is not None) == expected
    if w is not None:
        for u, v in Fg.edges():
            assert G.has_edge(w[u], w[v])
    induced_expected = isomorphism.GraphMatcher(to_nx(G), to_nx(Fg)).subgraph_is_isomorphic()
    assert (contains_subgraph(G, F, induced=True) is not None) == induced_expected


@given(G=graphs(max_n=7))
@settings(max_examples=40, deadline=None)
def test_copy_sets_match_brute_force(G):
    for F in ("K3", "C4", "P3"):
        expected = sorted(copy_masks(adjacency(G), as_pattern(F).graph).tolist())
        assert copy_sets(G, F, induced=False) == expected


@given(G=graphs(max_n=9))
@settings(max_examples=60, deadline=None)
def test_clique_and_chromatic_numbers(G):
    w, clique = clique_number(G)
    assert w == clique_number_brute(G)
    assert all(G.has_edge(u, v) for i, u in enumerate(clique) for v in clique[i + 1:])
    if G.n <= 7:
        k, classes = chromatic_number(G)
        assert all(G.edges_within(c) == 0 for c in classes)
        assert sum(bin(c).count("1") for c in classes) == G.n
        assert is_k_colourable_brute(G, k)
        assert k == 0 or not is_k_colourable_brute(G, k - 1)


def test_clique_examples():
    for n in range(1, 9):
        assert clique_number(complete_graph(n))[0] == n
    assert clique_number(lexicographic_product(cycle_graph(5), cycle_graph(5)))[0] == 4


def test_kr_free_examples():
    assert is_kr_free(cycle_graph(5), 3) == (True, None)
    ok, witness = is_kr_free(complete_graph(4), 4)
    assert not ok and sorted(witness) == [0, 1, 2, 3]


def test_is_free_on_subsets():
    G = complete_graph(5)
    assert is_free(G, "K3", 0b11)
    assert not is_free(G, "K3", 0b111)


def test_small_subgraph_colourability():
    v = every_small_subgraph_colorable(complete_graph(5), 3, 3)
    assert not v.passed and v.label == "counterexample" and bin(v.witness).count("1") == 3
    v = every_small_subgraph_colorable(complete_bipartite(4, 5), 6, 3)
    assert v.passed and v.label == "pass"
    C5C5 = lexicographic_product(cycle_graph(5), cycle_graph(5))
    v = every_small_subgraph_colorable(C5C5, 5, 5)
    assert v.passed and v.mode == "exhaustive" and v.max_chromatic == 4
    v = every_small_subgraph_colorable(C5C5, 5, 5, budget=50)
    assert v.label == "no-counterexample-found" and v.subsets_checked == 50
    with pytest.raises(DomainError):
        every_small_subgraph_colorable(C5C5, 30, 3)


def test_bipartite_cycles():
    K22 = BipartiteIncidence.from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert bipartite_has_C4(K22)
    assert not c4_free_by_pair_counting(K22)
    F = fano()
    assert not bipartite_has_C4(F) and c4_free_by_pair_counting(F)
    assert bipartite_has_C6(F)


def test_rooted_k4_subdivision():
    K46 = BipartiteIncidence.from_edges(4, 6, [(x, y) for x in range(4) for y in range(6)])
    assert has_rooted_K4_subdivision(K46)
    quad, reps = rooted_k4_subdivision_witness(fano())
    assert len(set(reps)) == 6
    star = BipartiteIncidence.from_edges(4, 1, [(x, 0) for x in range(4)])
    assert not has_rooted_K4_subdivision(star)


def test_rooted_k4_witness_is_valid():
    F = fano()
    quad, reps = rooted_k4_subdivision_witness(F)
    pairs = [(quad[i], quad[j]) for i in range(4) for j in range(i + 1, 4)]
    for (a, b), y in zip(pairs, reps):
        assert y in F.x_adj[a] and y in F.x_adj[b]

