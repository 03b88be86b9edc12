import math

import networkx as nx
import pytest

from erlab import ConstructionError, DomainError, PreconditionError
from erlab.constructions import (
    blowup_on_host,
    closed_form_interval,
    cube_root_step_holds,
    generate_c4c6free,
    random_union_audit,
    union_edge_probability,
    ffree_count_report,
    recursive_kttfree,
    rho_chain_report,
    rho_recursion_bound,
    sparsify_report,
    trianglefree_blowup,
    union_with_random,
)
from erlab.geometry import hermitian_unital
from erlab.graph import empty_graph
from erlab.incidence import BipartiteIncidence
from erlab.patterns import bipartite_has_C4, bipartite_has_C6, is_kr_free
from erlab.rng import RngConfig
from strategies import to_nx


@pytest.fixture(scope="module")
def unital2():
    return hermitian_unital(2).incidence


@pytest.fixture(scope="module")
def unital3():
    return hermitian_unital(3).incidence


def test_blowup_edge_triangles_need_three_points(unital2):
    # A K2 blow-up is bipartite inside each neighbourhood, so any triangle
    # takes its three edges from three distinct points, i.e. a 6-cycle of
    # the host.  Triangles do occur for some seeds on the unital.
    seen_triangle = False
    for seed in range(20):
        H, plan = blowup_on_host(unital2, "K2", RngConfig(seed), r=3)
        assert plan.audit["unique_provenance"]
        for tri in nx.enumerate_all_cliques(to_nx(H)):
            if len(tri) != 3:
                continue
            seen_triangle = True
            points = set()
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
                (y,) = set(unital2.x_adj[a]) & set(unital2.x_adj[b])
                points.add(y)
            assert len(points) == 3
    assert seen_triangle


def test_blowup_c4_is_k4_free(unital3):
    for seed in range(10):
        H, plan = blowup_on_host(unital3, "C4", RngConfig(seed), r=4)
        assert plan.audit["K4_free"]
        assert max(len(c) for c in nx.find_cliques(to_nx(H))) <= 3


def test_blowup_edgeless_pattern(unital2):
    H, _ = blowup_on_host(unital2, "E3", RngConfig(0))
    assert H.num_edges() == 0


def test_blowup_plan_serialises(unital2):
    H, plan = blowup_on_host(unital2, "C4", RngConfig(1))
    data = plan.to_json()
    assert data["s"] == 4
    assert len(data["assignment"]) == unital2.ny
    assert all(0 <= p < 4 for pairs in data["assignment"].values() for _, p in pairs)


def test_blowup_rejects_c4_host():
    K22 = BipartiteIncidence.from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    with pytest.raises(PreconditionError) as info:
        blowup_on_host(K22, "K2", RngConfig(0))
    assert info.value.witness is not None


def test_c4c6free_generator():
    K, info = generate_c4c6free(20, 20, 40, RngConfig(0))
    assert not bipartite_has_C4(K) and not bipartite_has_C6(K)
    assert info["edges"] <= 40
    K, info = generate_c4c6free(5, 7, 0, RngConfig(0))
    assert K.num_edges() == 0
    K, info = generate_c4c6free(6, 6, 6, RngConfig(3))
    assert K.num_edges() == 6
    with pytest.raises(DomainError):
        generate_c4c6free(-1, 3, 2, RngConfig(0))


def test_trianglefree_blowup():
    K, _ = generate_c4c6free(30, 30, 900, RngConfig(2))
    for F in ("K2", "C4", "C5"):
        G, report = trianglefree_blowup(K, F, RngConfig(3))
        assert report["triangle_free"] and is_kr_free(G, 3)[0]
        assert report["reference_value"] > 0


def test_trianglefree_blowup_isolated_vertex():
    K = BipartiteIncidence.from_edges(3, 2, [(0, 0), (1, 0)])
    G, _ = trianglefree_blowup(K, "K2", RngConfig(0))
    assert G.rows[2] == 0


def test_trianglefree_blowup_preconditions(unital2):
    K, _ = generate_c4c6free(10, 10, 30, RngConfig(0))
    with pytest.raises(PreconditionError):
        trianglefree_blowup(K, "K3", RngConfig(0))
    # the unital has 6-cycles (three points pairwise on lines)
    with pytest.raises(PreconditionError):
        trianglefree_blowup(unital2, "K2", RngConfig(0))


def test_union_edge_probability(frozen):
    case = frozen["union_edge_probability"]
    assert union_edge_probability(case["n"], case["r"]) == case["p"]
    assert abs(union_edge_probability(1024, 10**6) - 0.1) < 1e-3
    with pytest.raises(DomainError):
        union_edge_probability(2, 4)


def test_union_with_empty_base_is_gnp():
    n, r = 400, 4
    G = union_with_random(empty_graph(n), r, RngConfig(0))
    p = union_edge_probability(n, r)
    m = n * (n - 1) // 2
    assert abs(G.num_edges() - m * p) <= 5 * math.sqrt(m * p * (1 - p))


def test_random_union_audit_fields():
    row = random_union_audit(128, 4, 6, RngConfig(0), samples=200)
    assert 0 <= row["degenerate_fraction"] <= 1
    assert row["alpha_greedy"] > 0


def test_recursive_base_case():
    G, audit = recursive_kttfree(1, 1, 2, 4, 16, RngConfig(0))
    assert G.num_edges() == 0 and audit.levels[0]["alpha_Ktt"] == "16"


def test_recursive_level_two():
    G, audit = recursive_kttfree(2, 1, 2, 5, 64, RngConfig(0))
    assert G.n == 64
    top = audit.levels[-1]
    assert top["m"] == 8 and "colourability" in top and "omega" in top
    assert top.get("product_bound_holds") is not False


def test_recursive_errors():
    with pytest.raises(DomainError):
        recursive_kttfree(0, 1, 1, 3, 16, RngConfig(0))
    with pytest.raises(DomainError):
        recursive_kttfree(4, 3, 1, 3, 16, RngConfig(0))
    with pytest.raises(DomainError):
        recursive_kttfree(2, 1, 1, 3, 4, RngConfig(0))


def test_rho_trivial_branch():
    rep = rho_recursion_bound(10, 10**4)
    assert rep.branch == "trivial" and rep.bound == 1 and rep.holds
    lo, hi = closed_form_interval(10, 10**4)
    assert lo <= hi and float(lo) == pytest.approx(1000 * (1 - 10 ** (-1 / 3)))


def test_rho_recursive_branch():
    rep = rho_recursion_bound(60, 100)
    assert rep.branch == "recursive" and rep.i == 22
    with pytest.raises(ConstructionError):
        rho_recursion_bound(60, 10)
    assert not rho_recursion_bound(60, 10, strict=False).holds
    with pytest.raises(DomainError):
        rho_recursion_bound(1, 100)


def test_rho_bounds_are_monotone_in_k():
    bounds = [rho_recursion_bound(k, 10**4).bound for k in range(2, 61)]
    assert all(b == 1 for b in bounds)


def test_chain_report_fields():
    rows = rho_chain_report(10**4, range(2, 6))
    assert [r["k"] for r in rows] == [2, 3, 4, 5]
    assert all(r["trivial_chain_holds"] and r["rhs_at_least_quarter_holds"] for r in rows)
    assert cube_root_step_holds()


def test_ffree_count_report_fields():
    rows = ffree_count_report(2, "K2", [2, 3], RngConfig(0))
    for row in rows:
        assert row["count"] is not None and int(row["count"]) <= int(row["total"])
        assert row["reference"] == 2 ** row["t"]


def test_sparsify_report():
    rep = sparsify_report(2, "C4", 4, RngConfig(0))
    assert rep["K4_free"] is True
    assert 0 <= rep["largest_ffree_found"] <= rep["n"] <= 12
