"""Named operations shared by the command line and JSON manifests.

Each operation takes ``(params, seed, inputs)`` and returns a JSON-ready
result dict with a boolean ``verified`` entry and, optionally, graph
artifacts under the private key ``_artifacts`` (name -> bytes).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ._bits import members
from .constructions import (
    blowup_on_host,
    generate_c4c6free,
    recursive_kttfree,
    rho_chain_report,
    rho_recursion_bound,
    trianglefree_blowup,
)
from .domination import gamma_s_exact, randomized_dominating_set
from .errors import DomainError
from .geometry import hermitian_unital
from .graph import Graph, complete_multipartite, graph6_decode, graph6_encode, random_gnp, read_graph6
from .incidence import incidence_text
from .patterns import as_pattern, contains_subgraph, every_small_subgraph_colorable, is_kr_free
from .rng import RngConfig
from .sampling import extract_ffree_recursive, extract_ffree_theorem23, independent_set_k4free
from .solvers import alpha_F, count_ffree_sets, f_exact, independence_number

INT = {"type": "integer"}
POS = {"type": "integer", "minimum": 1}
STR = {"type": "string"}
BOOL = {"type": "boolean"}
RAT = {"type": ["string", "number"]}
GRAPH6 = {"type": "string"}


def _schema(required: dict, optional: dict | None = None) -> dict:
    props = dict(required)
    props.update(optional or {})
    return {"type": "object", "properties": props, "required": sorted(required), "additionalProperties": False}


def _rat(x) -> Fraction:
    from .exact import as_rational

    return as_rational(x)


def _graph(params: dict, inputs: list[str]) -> Graph:
    if "graph6" in params:
        return graph6_decode(params["graph6"])
    if not inputs:
        raise DomainError("operation needs a graph: give params.graph6 or an input file")
    graphs = read_graph6(inputs[0])
    if not graphs:
        raise DomainError(f"{inputs[0]} holds no graphs")
    return graphs[0]


def _witness(rep) -> dict:
    out = rep.to_json()
    out["verified"] = rep.verified
    return out


# -- construct ----------------------------------------------------------
def op_unital(p, seed, inputs):
    U = hermitian_unital(p["q"])
    K = U.incidence
    return {
        "X": K.nx, "Y": K.ny, "edges": str(K.num_edges()),
        "checks": {k: v for k, v in U.checks.items()},
        "verified": all(v is True or v == "skipped" for v in U.checks.values()),
        "_artifacts": {"graph6": graph6_encode(K.to_graph()) + b"\n",
                       "incidence": incidence_text(K).encode()},
    }


def op_blowup(p, seed, inputs):
    K = hermitian_unital(p["q"]).incidence
    r = p.get("r", 4)
    H, plan = blowup_on_host(K, p["F"], RngConfig(seed), r=r)
    ok = plan.audit[f"K{r}_free"]
    return {
        "n": H.n, "edges": str(H.num_edges()), f"K{r}_free": ok,
        "clique_witness": plan.audit["clique_witness"],
        "unique_provenance": plan.audit["unique_provenance"],
        "verified": bool(ok and plan.audit["unique_provenance"]),
        "_artifacts": {"graph6": graph6_encode(H) + b"\n", "plan": plan.to_json()},
    }


def op_c4c6free(p, seed, inputs):
    K, info = generate_c4c6free(p["nA"], p["nB"], p.get("target", p["nA"] * p["nB"]), RngConfig(seed))
    return {**info, "verified": True, "_artifacts": {"incidence": incidence_text(K).encode()}}


def op_trianglefree(p, seed, inputs):
    rng = RngConfig(seed)
    K, info = generate_c4c6free(p["nA"], p["nB"], p.get("target", p["nA"] * p["nB"]), rng.child(0))
    G, report = trianglefree_blowup(K, p["F"], rng.child(1))
    return {"host": info, **report, "verified": report["triangle_free"],
            "_artifacts": {"graph6": graph6_encode(G) + b"\n"}}


def op_recursive(p, seed, inputs):
    G, audit = recursive_kttfree(p["k"], p["i"], p["t"], p["s_check"], p["n"], RngConfig(seed),
                                 audit_budget=p.get("audit_budget", 20000))
    top = audit.levels[-1]
    ok = top.get("product_bound_holds", True) is not False and top.get("colourability") != "counterexample"
    return {"n": G.n, "audit": audit.to_json(), "verified": ok, "_artifacts": {"graph6": graph6_encode(G) + b"\n"}}


# -- solve --------------------------------------------------------------
def op_f_exact(p, seed, inputs):
    res = f_exact(p["F"], p["H"], p["n"], dedup=p.get("dedup", True))
    out = res.to_json()
    H = as_pattern(p["H"])
    out["verified"] = contains_subgraph(res.witness, H.graph) is None and \
        alpha_F(res.witness, p["F"], "exact").value == res.value
    out["_artifacts"] = {"graph6": graph6_encode(res.witness) + b"\n"}
    return out


def op_alpha(p, seed, inputs):
    G = _graph(p, inputs)
    rep = alpha_F(G, p["F"], p.get("mode", "exact"), RngConfig(seed), induced=p.get("induced", False))
    return _witness(rep)


def op_independence(p, seed, inputs):
    return _witness(independence_number(_graph(p, inputs), p.get("mode", "exact")))


def op_gamma(p, seed, inputs):
    res = gamma_s_exact(p["F"], p["s"])
    return {**res.to_json(), "verified": res.valid}


def op_dominating(p, seed, inputs):
    res = randomized_dominating_set(p["F"], _rat(p["delta"]), RngConfig(seed), s=p.get("s"),
                                    trials=p.get("trials", 1))
    return {**res.to_json(), "verified": res.valid}


def op_count(p, seed, inputs):
    G = _graph(p, inputs)
    return {"count": str(count_ffree_sets(G, p["F"], p["t"], p.get("induced", False))), "verified": True}


# -- verify -------------------------------------------------------------
def op_krfree(p, seed, inputs):
    ok, w = is_kr_free(_graph(p, inputs), p["r"])
    return {"kr_free": ok, "witness": w, "verified": ok}


def op_ffree(p, seed, inputs):
    w = contains_subgraph(_graph(p, inputs), as_pattern(p["F"]).graph, induced=p.get("induced", False))
    return {"f_free": w is None, "witness": list(w) if w else None, "verified": w is None}


def op_colourable(p, seed, inputs):
    v = every_small_subgraph_colorable(_graph(p, inputs), p["s"], p["r"], budget=p.get("budget"),
                                       rng=RngConfig(seed))
    return {"verdict": v.label, "mode": v.mode, "subsets_checked": str(v.subsets_checked),
            "max_chromatic": v.max_chromatic, "witness": members(v.witness) if v.witness else None,
            "verified": v.passed}


def op_rho(p, seed, inputs):
    C = _rat(p["C"])
    ks = range(p.get("k_min", 2), p.get("k_max", 60) + 1)
    bounds = [rho_recursion_bound(k, C, strict=False).to_json() for k in ks]
    chain = rho_chain_report(C, ks)
    return {"bounds": bounds, "chain": chain, "verified": all(b["holds"] for b in bounds)}


# -- presets ------------------------------------------------------------
def op_preset_theorem23(p, seed, inputs):
    rng = RngConfig(seed)
    K = hermitian_unital(p.get("q", 3)).incidence
    host_F = p.get("host_F", "C4")
    H, plan = blowup_on_host(K, host_F, rng.child(0), r=4)
    rep = extract_ffree_theorem23(H, p.get("F", "K2,2"), 4, _rat(p.get("delta", "1/4")), rng.child(1))
    return {"host_K4_free": plan.audit["K4_free"], "extraction": _witness(rep),
            "verified": bool(plan.audit["K4_free"] and rep.verified)}


def op_preset_theorem25(p, seed, inputs):
    rng = RngConfig(seed)
    k = p.get("k", 2)
    if "parts" in p:
        G = complete_multipartite([p["part_size"]] * p["parts"])
    else:
        G = random_gnp(p.get("n", 40), float(_rat(p.get("p", "1/2"))), rng.child(0))
    rep = extract_ffree_recursive(G, p.get("F", "K2,2"), k, _rat(p.get("delta", "1/10")), rng.child(1),
                                  s=p.get("s"), epsilon=_rat(p["epsilon"]) if "epsilon" in p else None)
    return {"n": G.n, "extraction": _witness(rep), "verified": rep.verified}


def op_preset_blowup_k4(p, seed, inputs):
    rng = RngConfig(seed)
    K = hermitian_unital(p.get("q", 3)).incidence
    H, plan = blowup_on_host(K, p.get("F", "C4"), rng.child(0), r=4)
    rep = independent_set_k4free(H, p.get("trials", 16), rng.child(1))
    return {"n": H.n, "edges": str(H.num_edges()), "K4_free": plan.audit["K4_free"],
            "independent_set": _witness(rep), "verified": bool(plan.audit["K4_free"] and rep.verified)}


Operation = Callable[[dict, int, list], dict]

REGISTRY: dict[str, tuple[Operation, dict]] = {
    "construct.unital": (op_unital, _schema({"q": POS})),
    "construct.blowup": (op_blowup, _schema({"q": POS, "F": STR}, {"r": POS})),
    "construct.c4c6free": (op_c4c6free, _schema({"nA": INT, "nB": INT}, {"target": INT})),
    "construct.trianglefree": (op_trianglefree, _schema({"nA": INT, "nB": INT, "F": STR}, {"target": INT})),
    "construct.recursive": (op_recursive, _schema({"k": POS, "i": POS, "t": POS, "s_check": POS, "n": POS},
                                                  {"audit_budget": POS})),
    "solve.f-exact": (op_f_exact, _schema({"F": STR, "H": STR, "n": INT}, {"dedup": BOOL})),
    "solve.alpha": (op_alpha, _schema({"F": STR}, {"mode": {"enum": ["exact", "greedy"]}, "induced": BOOL,
                                                   "graph6": GRAPH6})),
    "solve.independence": (op_independence, _schema({}, {"mode": {"enum": ["exact", "greedy"]}, "graph6": GRAPH6})),
    "solve.gamma": (op_gamma, _schema({"F": STR, "s": INT})),
    "solve.dominating": (op_dominating, _schema({"F": STR, "delta": RAT}, {"s": INT, "trials": POS})),
    "solve.count": (op_count, _schema({"F": STR, "t": INT}, {"induced": BOOL, "graph6": GRAPH6})),
    "verify.krfree": (op_krfree, _schema({"r": POS}, {"graph6": GRAPH6})),
    "verify.ffree": (op_ffree, _schema({"F": STR}, {"induced": BOOL, "graph6": GRAPH6})),
    "verify.colourable": (op_colourable, _schema({"s": INT, "r": POS}, {"budget": POS, "graph6": GRAPH6})),
    "rho": (op_rho, _schema({"C": RAT}, {"k_min": POS, "k_max": POS})),
    "preset.theorem23": (op_preset_theorem23, _schema({}, {"q": POS, "F": STR, "host_F": STR, "delta": RAT})),
    "preset.theorem25": (op_preset_theorem25, _schema({}, {
        "k": POS, "n": POS, "p": RAT, "parts": POS, "part_size": POS, "F": STR, "delta": RAT, "s": POS,
        "epsilon": RAT})),
    "preset.blowup-k4": (op_preset_blowup_k4, _schema({}, {"q": POS, "F": STR, "trials": POS})),
}
