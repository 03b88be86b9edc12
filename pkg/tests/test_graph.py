import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from erlab import DomainError, ParseError, SizeError
from erlab.graph import (
    Graph,
    common_neighbourhood,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    edge_list_text,
    empty_graph,
    graph6_decode,
    graph6_encode,
    induced,
    lexicographic_product,
    parse_edge_list,
    path_graph,
    petersen_graph,
    random_gnp,
    read_graph6,
    union_same_vertices,
    write_graph6,
)
from erlab.patterns import clique_number
from erlab.rng import RngConfig
from erlab.solvers import independence_number
from strategies import graphs, to_nx


def test_constructor_rejects_bad_rows():
    with pytest.raises(DomainError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(DomainError):
        Graph(1, (0b1,))  # loop
    with pytest.raises(DomainError):
        Graph(2, (0b100, 0))  # out of range


def test_induced_examples():
    C5 = cycle_graph(5)
    assert sorted(induced(C5, 0b00111).edges()) == [(0, 1), (1, 2)]
    assert induced(C5, 0b11111) == C5
    K33 = complete_bipartite(3, 3)
    star = induced(K33, 0b11001)
    assert sorted(star.degrees()) == [1, 1, 2]
    with pytest.raises(DomainError):
        induced(C5, 1 << 7)


def test_common_neighbourhood_examples():
    assert common_neighbourhood(complete_graph(4), 0b0011) == 0b1100
    C5 = cycle_graph(5)
    assert common_neighbourhood(C5, 0b00101) == 0b00010
    assert common_neighbourhood(C5, 0b00111) == 0
    with pytest.raises(DomainError):
        common_neighbourhood(C5, 0)


@given(graphs(max_n=9))
def test_common_neighbourhood_single_vertex_is_row(G):
    for v in range(G.n):
        assert common_neighbourhood(G, 1 << v) == G.rows[v]


def test_lexicographic_product_examples():
    K4 = lexicographic_product(complete_graph(2), complete_graph(2))
    assert K4 == complete_graph(4)
    two_c5 = lexicographic_product(empty_graph(2), cycle_graph(5))
    assert two_c5.num_edges() == 10
    assert nx.number_connected_components(to_nx(two_c5)) == 2
    P = lexicographic_product(cycle_graph(5), cycle_graph(5))
    assert P.n == 25
    assert clique_number(P)[0] == 4
    assert independence_number(P).value == 4


@given(graphs(max_n=5), graphs(max_n=5))
@settings(max_examples=60)
def test_lexicographic_product_matches_networkx(G, H):
    ours = lexicographic_product(G, H)
    theirs = nx.lexicographic_product(to_nx(G), to_nx(H))
    mapped = nx.relabel_nodes(theirs, {(u, a): u * H.n + a for u, a in theirs.nodes})
    assert sorted(ours.edges()) == sorted(tuple(sorted(e)) for e in mapped.edges())


def test_product_size_limit():
    with pytest.raises(SizeError):
        lexicographic_product(empty_graph(300), empty_graph(300))


def test_union_examples():
    assert sorted(union_same_vertices(Graph.from_edges(3, [(0, 1)]), Graph.from_edges(3, [(1, 2)])).edges()) == [
        (0, 1), (1, 2)]
    C5 = cycle_graph(5)
    assert union_same_vertices(C5, C5) == C5
    assert union_same_vertices(C5, C5.complement()) == complete_graph(5)
    with pytest.raises(DomainError):
        union_same_vertices(C5, empty_graph(4))


def test_random_gnp():
    assert random_gnp(10, 0, RngConfig(1)).num_edges() == 0
    assert random_gnp(10, 1, RngConfig(1)) == complete_graph(10)
    G = random_gnp(1000, 0.5, RngConfig(7))
    m = 1000 * 999 // 2
    assert abs(G.num_edges() - m / 2) <= 5 * np.sqrt(m * 0.25)
    assert random_gnp(30, 0.3, RngConfig(5)) == random_gnp(30, 0.3, RngConfig(5))
    with pytest.raises(DomainError):
        random_gnp(5, 1.5, RngConfig(0))


def test_graph6_frozen(frozen):
    g6 = frozen["graph6"]
    assert graph6_encode(complete_graph(3)).decode() == g6["K3"]
    assert graph6_encode(empty_graph(0)).decode() == g6["empty0"]
    assert graph6_encode(cycle_graph(5)).decode() == g6["C5"]
    petersen_nx = nx.from_graph6_bytes(g6["Petersen"].encode())
    assert nx.is_isomorphic(petersen_nx, to_nx(petersen_graph()))


@given(graphs(max_n=70))
@settings(max_examples=80)
def test_graph6_matches_networkx(G):
    ours = graph6_encode(G)
    assert ours + b"\n" == nx.to_graph6_bytes(to_nx(G), header=False)
    assert graph6_decode(ours) == G


def test_graph6_long_header():
    G = path_graph(100)
    assert graph6_encode(G)[:1] == b"~"
    assert graph6_decode(graph6_encode(G)) == G
    assert graph6_decode(b">>graph6<<" + graph6_encode(G)) == G


@pytest.mark.parametrize("bad, offset", [(b"", 0), (b"B", 1), (b"Bw?", 2), (b"B\x10", 1), (b"Bx", 1)])
def test_graph6_parse_errors(bad, offset):
    with pytest.raises(ParseError) as info:
        graph6_decode(bad)
    assert info.value.offset == offset


def test_graph6_files(tmp_path):
    gs = [cycle_graph(5), petersen_graph(), empty_graph(0)]
    path = tmp_path / "g.g6"
    write_graph6(path, gs)
    assert read_graph6(path) == gs


@given(graphs(max_n=10))
def test_edge_list_round_trip(G):
    assert parse_edge_list(edge_list_text(G)) == G


def test_edge_list_errors():
    with pytest.raises(ParseError):
        parse_edge_list("0 1\n")
    with pytest.raises(ParseError):
        parse_edge_list("n=3\n0 7\n")
    with pytest.raises(ParseError):
        parse_edge_list("")


@given(graphs(max_n=10))
def test_complement_and_numpy(G):
    assert G.complement().complement() == G
    assert G.num_edges() + G.complement().num_edges() == G.n * (G.n - 1) // 2
    assert Graph.from_numpy(G.to_numpy()) == G
