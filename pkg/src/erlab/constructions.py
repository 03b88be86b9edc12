"""Upper-bound constructions: blow-ups on bipartite hosts, random unions,
the lexicographic-square recursion and the arithmetic of its exponent."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import to_rational

from ._bits import iter_bits, members, popcount
from .errors import BudgetError, ConstructionError, DomainError, PreconditionError
from .graph import (
    Graph,
    empty_graph,
    induced,
    lexicographic_product,
    random_gnp,
    union_same_vertices,
)
from .incidence import BipartiteIncidence
from .patterns import (
    Pattern,
    as_pattern,
    c4_witness,
    c6_witness,
    clique_number,
    every_small_subgraph_colorable,
    is_kr_free,
)
from .rng import RngConfig
from .solvers import alpha_F, count_ffree_sets, independence_number


# -- blow-ups on a bipartite host ---------------------------------------
@dataclass
class BlowupPlan:
    """parts[y][j] is the part index of the j-th X-neighbour of y."""

    s: int
    neighbours: list[list[int]]
    parts: list[list[int]]
    audit: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "assignment": {str(y): [[x, p] for x, p in zip(nb, pt)] for y, (nb, pt) in
                           enumerate(zip(self.neighbours, self.parts))},
            "audit": self.audit,
        }


def _blowup(K: BipartiteIncidence, F: Pattern, rng: RngConfig) -> tuple[Graph, BlowupPlan]:
    gen = rng.generator()
    s = F.s
    f_edges = list(F.graph.edges())
    rows = [0] * K.nx
    neighbours, parts = [], []
    contributed = 0
    for y in range(K.ny):
        nb = members(K.y_rows[y])
        pt = [int(p) for p in gen.integers(s, size=len(nb))]
        neighbours.append(nb)
        parts.append(pt)
        masks = [0] * s
        for x, p in zip(nb, pt):
            masks[p] |= 1 << x
        for i, j in f_edges:
            a, b = masks[i], masks[j]
            if a and b:
                contributed += popcount(a) * popcount(b)
                for u in iter_bits(a):
                    rows[u] |= b
                for v in iter_bits(b):
                    rows[v] |= a
    H = Graph._trusted(K.nx, rows)
    plan = BlowupPlan(s, neighbours, parts)
    # every edge comes from exactly one y iff per-y contributions add up
    plan.audit["edges"] = H.num_edges()
    plan.audit["unique_provenance"] = contributed == H.num_edges()
    return H, plan


def blowup_on_host(K: BipartiteIncidence, F, rng: RngConfig, r: int | None = None) -> tuple[Graph, BlowupPlan]:
    """Random blow-up of F inside every neighbourhood N_K(y), on vertex set X.

    With ``r`` given, the output is also checked for K_r-freeness and the
    verdict stored in ``plan.audit``.
    """
    F = as_pattern(F)
    w = c4_witness(K)
    if w is not None:
        raise PreconditionError("host contains a C4", w)
    H, plan = _blowup(K, F, rng)
    if not plan.audit["unique_provenance"]:
        raise ConstructionError("blow-up edge with two sources on a C4-free host")
    if r is not None:
        ok, clique = is_kr_free(H, r)
        plan.audit[f"K{r}_free"] = ok
        plan.audit["clique_witness"] = clique
    return H, plan


def trianglefree_blowup(Hbip: BipartiteIncidence, F, rng: RngConfig, report_trials: int = 4) -> tuple[Graph, dict]:
    """Blow-up of a triangle-free F in every N(u), u on the Y side, giving a
    graph on the X side; the host must have no C4 and no C6."""
    F = as_pattern(F)
    ok, tri = is_kr_free(F.graph, 3)
    if not ok:
        raise PreconditionError(f"{F} contains a triangle", tri)
    for name, finder in (("C4", c4_witness), ("C6", c6_witness)):
        w = finder(Hbip)
        if w is not None:
            raise PreconditionError(f"host contains a {name}", w)
    G, plan = _blowup(Hbip, F, rng)
    tri_free, witness = is_kr_free(G, 3)
    if not tri_free:
        raise ConstructionError(f"blow-up contains a triangle {witness}")
    n = G.n
    rep = alpha_F(G, F, "greedy", rng.child(1), trials=report_trials) if n else None
    report = {
        "n": n,
        "edges": G.num_edges(),
        "triangle_free": True,
        "unique_provenance": plan.audit["unique_provenance"],
        "largest_ffree_found": rep.value if rep else 0,
        "reference": "sqrt(n*log2(n))",
        "reference_value": math.sqrt(n * math.log2(n)) if n > 1 else 0.0,
    }
    return G, report


def generate_c4c6free(nA: int, nB: int, target_edges: int, rng: RngConfig) -> tuple[BipartiteIncidence, dict]:
    """Greedy random bipartite graph of girth at least 8.

    Candidate pairs are tried in a random order; a pair (a, b) is added when
    b is at distance more than 5 from a, so no 4- or 6-cycle can close.
    """
    if nA < 0 or nB < 0 or target_edges < 0:
        raise DomainError("sizes must be non-negative")
    gen = rng.generator()
    a_rows = [0] * nA
    b_rows = [0] * nB
    edges = 0
    order = gen.permutation(nA * nB) if nA and nB else []
    for idx in order:
        if edges >= target_edges:
            break
        a, b = divmod(int(idx), nB)
        reach_b = a_rows[a]
        frontier_b = reach_b
        for _ in range(2):
            reach_a = 0
            for y in iter_bits(frontier_b):
                reach_a |= b_rows[y]
            frontier_b = 0
            for x in iter_bits(reach_a):
                frontier_b |= a_rows[x]
            reach_b |= frontier_b
        if (reach_b >> b) & 1:
            continue
        a_rows[a] |= 1 << b
        b_rows[b] |= 1 << a
        edges += 1
    K = BipartiteIncidence(nA, nB, tuple(tuple(members(r)) for r in a_rows))
    if c4_witness(K) is not None or c6_witness(K) is not None:
        raise ConstructionError("greedy generator produced a short cycle")
    return K, {"edges": edges, "target": target_edges, "saturated": edges < target_edges}


# -- random unions ------------------------------------------------------
def union_edge_probability(n: int, r: int) -> float:
    """p = n^(-2/r) / log2(n)."""
    if n < 3:
        raise DomainError("need n >= 3 so that log2(n) > 1")
    if r < 1:
        raise DomainError("r must be positive")
    return n ** (-2 / r) / math.log2(n)


def union_with_random(G0: Graph, r: int, rng: RngConfig) -> Graph:
    p = union_edge_probability(G0.n, r)
    return union_same_vertices(G0, random_gnp(G0.n, p, rng))


def _degeneracy_at_most(G: Graph, S: int, d: int) -> bool:
    """Can G[S] be peeled by repeatedly removing a vertex of degree <= d?"""
    rows = G.rows
    left = S
    while left:
        for v in iter_bits(left):
            if popcount(rows[v] & left) <= d:
                left &= ~(1 << v)
                break
        else:
            return False
    return True


def random_union_audit(n: int, r: int, s: int, rng: RngConfig, samples: int = 2000) -> dict:
    """Report-only: sample G(n, p) at the schedule and measure how often a
    random s-set has every subgraph containing a vertex of degree <= r-1,
    together with alpha against n^(2/r) log2(n)^3."""
    p = union_edge_probability(n, r)
    G = random_gnp(n, p, rng.child(0))
    gen = rng.child(1).generator()
    good = 0
    for _ in range(samples):
        S = 0
        for v in gen.choice(n, size=min(s, n), replace=False):
            S |= 1 << int(v)
        good += _degeneracy_at_most(G, S, r - 1)
    alpha = independence_number(G, "greedy").value
    return {
        "n": n, "r": r, "s": s, "p": p, "edges": G.num_edges(),
        "degenerate_fraction": good / samples if samples else 1.0,
        "alpha_greedy": alpha,
        "alpha_reference": n ** (2 / r) * math.log2(n) ** 3,
    }


# -- lexicographic-square recursion -------------------------------------
@dataclass
class RecursionAudit:
    k: int
    i: int
    n: int
    levels: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"k": self.k, "i": self.i, "n": str(self.n), "levels": self.levels}


def _pad(G: Graph, n: int) -> Graph:
    return G if G.n == n else Graph._trusted(n, list(G.rows) + [0] * (n - G.n))


def _next_i(k: int) -> int:
    return max(1, _floor_half_minus_sqrt(k))


def _floor_half_minus_sqrt(k: int) -> int:
    """floor(k/2 - sqrt(k)), exactly."""
    i = math.floor(k / 2 - math.sqrt(k)) + 2
    while not (Fraction(k, 2) - i >= 0 and (Fraction(k, 2) - i) ** 2 >= k):
        i -= 1
    return i


def recursive_kttfree(k: int, i: int, t: int, s_check: int, n: int, rng: RngConfig, *,
                      audit_budget: int = 20000, exact_limit: int = 100) -> tuple[Graph, RecursionAudit]:
    """Graph whose s_check-vertex subgraphs should be (2^k - 1)-colourable,
    built as G = H·H with H = G0 ∪ G(m, p), m = isqrt(n).

    G0 comes from the same recursion at level i (empty when i = 1), padded
    with isolated vertices up to m; G(m, p) follows the random-graph
    schedule with r = 2^(floor(k/2) - i).
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    if n < 1:
        raise DomainError("n must be positive")
    audit = RecursionAudit(k, i, n)
    if k == 1:
        G = empty_graph(n)
        audit.levels.append({"k": 1, "n": n, "alpha_Ktt": str(n), "note": "K2-free base case"})
        return G, audit
    if not 1 <= i <= k / 2:
        raise DomainError("need 1 <= i <= k/2")
    m = math.isqrt(n)
    if m < 3:
        raise DomainError("top-level n must be at least 9")
    if i == 1:
        G0 = empty_graph(m)
    else:
        G0, sub = recursive_kttfree(i, _next_i(i), t, s_check, m, rng.child(0),
                                    audit_budget=audit_budget, exact_limit=exact_limit)
        audit.levels.extend(sub.levels)
        G0 = _pad(G0, m)
    r1 = 2 ** (k // 2 - i)
    G1 = union_with_random(empty_graph(m), r1, rng.child(1))
    H = union_same_vertices(G0, G1)
    G = lexicographic_product(H, H)
    audit.levels.append(_audit_level(k, i, t, s_check, H, G, r1, audit_budget, exact_limit, rng.child(2)))
    return G, audit


def _audit_level(k, i, t, s_check, H: Graph, G: Graph, r1, audit_budget, exact_limit, rng) -> dict:
    Ktt = Pattern.parse(f"K{t},{t}") if t >= 1 else None
    level = {"k": k, "i": i, "m": H.n, "N": G.n, "r1": r1, "p": union_edge_probability(H.n, r1), "H_edges": H.num_edges()}
    try:
        level["omega"] = clique_number(G, budget=audit_budget * 50)[0]
    except BudgetError:
        level["omega"] = None
    level["K%d_free" % 2**k] = None if level["omega"] is None else level["omega"] < 2**k
    if s_check <= G.n:
        verdict = every_small_subgraph_colorable(G, s_check, 2**k, budget=audit_budget, rng=rng)
        level["colourability"] = verdict.label
        level["max_chromatic_seen"] = verdict.max_chromatic
    if Ktt is not None and H.n <= exact_limit:
        aH = independence_number(H, "exact").value
        aKH = alpha_F(H, Ktt, "exact").value
        level["alpha_H"] = aH
        level["alpha_Ktt_H"] = aKH
        level["product_bound"] = t * aH * aKH
        if G.n <= exact_limit:
            aKG = alpha_F(G, Ktt, "exact").value
            level["alpha_Ktt_G"] = aKG
            level["product_bound_holds"] = aKG <= t * aH * aKH
        elif G.n <= 1024:
            level["alpha_Ktt_G_lower"] = alpha_F(G, Ktt, "greedy", rng, trials=1).value
    return level


# -- exponent arithmetic ------------------------------------------------
# private interval context so the global mpmath precision is left alone
iv = MPIntervalContext()
iv.prec = 256


def _rat(x) -> tuple[Fraction, Fraction]:
    lo, hi = x._mpi_
    return Fraction(*map(int, to_rational(lo))), Fraction(*map(int, to_rational(hi)))


def closed_form_interval(k: int, C) -> tuple[Fraction, Fraction]:
    """Rigorous rational enclosure of C/k * (1 - k^(-1/3))."""
    C = Fraction(C)
    x = iv.mpf(C.numerator) / C.denominator / k * (1 - iv.mpf(k) ** (iv.mpf(-1) / 3))
    return _rat(x)


@dataclass
class RhoReport:
    k: int
    C: Fraction
    bound: Fraction
    closed_lo: Fraction
    closed_hi: Fraction
    branch: str
    i: int | None
    holds: bool

    def to_json(self) -> dict:
        return {"k": self.k, "C": str(self.C), "bound": str(self.bound), "closed_form_lo": str(self.closed_lo),
                "closed_form_hi": str(self.closed_hi), "branch": self.branch, "i": self.i, "holds": self.holds}


def rho_recursion_bound(k: int, C, strict: bool = True) -> RhoReport:
    """Upper bound on rho_{2^k} from the recursion rho_{2^k} <= rho_{2^i}/2 + 2^(i - floor(k/2))
    with i = floor(k/2 - sqrt(k)) and rho <= 1 whenever k <= C/5.

    The bound is an exact rational; the closed form C/k (1 - k^(-1/3)) is
    enclosed in a rational interval, and ``holds`` means bound <= its lower end.
    With ``strict`` a failure raises instead of being reported.
    """
    if k < 2:
        raise DomainError("k must be at least 2")
    C = Fraction(C)
    if C <= 0:
        raise DomainError("C must be positive")
    bound, branch, i = _rho_bound(k, C)
    lo, hi = closed_form_interval(k, C)
    rep = RhoReport(k, C, bound, lo, hi, branch, i, bound <= lo)
    if strict and not rep.holds:
        raise ConstructionError(f"recursion bound {bound} exceeds closed form at k={k}, C={C}")
    return rep


def _rho_bound(k: int, C: Fraction) -> tuple[Fraction, str, int | None]:
    if k <= 1 or k <= C / 5:
        return Fraction(1), "trivial", None
    i = _floor_half_minus_sqrt(k)
    if i < 1:
        i = 1
    inner = _rho_bound(i, C)[0] if i >= 2 else Fraction(1)
    return inner / 2 + Fraction(2) ** (i - k // 2), "recursive", i


def rho_chain_report(C, ks=range(2, 61)) -> list[dict]:
    """Per-k enclosures of every step in the closed-form induction.

    Fields ending in ``_holds`` are rigorous verdicts (upper end of the left
    side against the lower end of the right side).
    """
    C = Fraction(C)
    Ci = iv.mpf(C.numerator) / C.denominator
    third = iv.mpf(1) / 3
    out = []
    for k in ks:
        kk = iv.mpf(k)
        closed = Ci / kk * (1 - kk ** (-third))
        row: dict = {"k": k, "trivial_branch": k <= C / 5}
        # trivial branch: 1 <= (C/5)/k <= C/k (1 - k^(-1/3))
        c5 = Fraction(C, 5 * k)
        row["trivial_chain_holds"] = 1 <= c5 and c5 <= _rat(closed)[0]
        lhs4 = 3 * Ci / kk ** (iv.mpf(3) / 2) + iv.mpf(2) ** (1 - iv.sqrt(kk))
        rhs4 = Ci / kk * ((kk / 2) ** (-third) - kk ** (-third))
        quarter = Ci / (4 * kk ** (iv.mpf(4) / 3))
        row["simplified_lhs"] = float(_rat(lhs4)[1])
        row["simplified_rhs"] = float(_rat(rhs4)[0])
        row["simplified_holds"] = _rat(lhs4)[1] <= _rat(rhs4)[0]
        row["rhs_at_least_quarter_holds"] = _rat(rhs4)[0] >= _rat(quarter)[1]
        i = _floor_half_minus_sqrt(k)
        row["i"] = i
        if i >= 1:
            ii = iv.mpf(i)
            step1 = Ci / (2 * ii) * (1 - ii ** (-third)) + iv.mpf(2) ** (i - k // 2)
            step2 = Ci / (kk - 2 * iv.sqrt(kk) - 2) * (1 - (kk / 2) ** (-third)) + iv.mpf(2) ** (1 - iv.sqrt(kk))
            step3 = Ci * (1 / kk + 3 / kk ** (iv.mpf(3) / 2)) * (1 - (kk / 2) ** (-third)) + iv.mpf(2) ** (1 - iv.sqrt(kk))
            step4 = Ci / kk * (1 - (kk / 2) ** (-third)) + 3 * Ci / kk ** (iv.mpf(3) / 2) + iv.mpf(2) ** (1 - iv.sqrt(kk))
            row["i_range_holds"] = _i_range(k, i)
            row["step2_holds"] = _rat(step1)[1] <= _rat(step2)[0] if k > 2 * math.sqrt(k) + 2 else None
            row["step3_holds"] = _rat(step2)[1] <= _rat(step3)[0] if k > 2 * math.sqrt(k) + 2 else None
            row["step4_holds"] = _rat(step3)[1] <= _rat(step4)[0]
        out.append(row)
    return out


def _i_range(k: int, i: int) -> bool:
    """k/2 - sqrt(k) - 1 <= i, exactly."""
    d = Fraction(k, 2) - 1 - i  # need d <= sqrt(k)
    return d <= 0 or d * d <= k


def cube_root_step_holds() -> bool:
    """2^(1/3) - 1 >= 1/4, via (5/4)^3 <= 2."""
    return Fraction(5, 4) ** 3 <= 2


# -- F-free set counts on the blow-up -----------------------------------
def ffree_count_report(q: int, F, ts, rng: RngConfig, induced_mode: bool = False) -> list[dict]:
    """Report-only: number of t-sets T of X with H[T] F-free against
    (q^(1/(s-1)))^t for a blow-up H of F on the unital."""
    from .geometry import hermitian_unital

    F = as_pattern(F)
    K = hermitian_unital(q).incidence
    H, _ = blowup_on_host(K, F, rng)
    out = []
    for t in ts:
        try:
            count = count_ffree_sets(H, F, t, induced_mode)
        except BudgetError:
            count = None
        ref = q ** (t / (F.s - 1))
        out.append({
            "q": q, "t": t, "count": None if count is None else str(count),
            "reference": ref, "total": str(math.comb(H.n, t)),
            "within_reference": None if count is None else count <= ref,
        })
    return out


def sparsify_report(q: int, F, r: int, rng: RngConfig, keep: float = 0.5, trials: int = 4) -> dict:
    """Construct the blow-up, keep each X-vertex with probability ``keep`` and
    measure the largest F-free set found greedily in what is left."""
    F = as_pattern(F)
    from .geometry import hermitian_unital

    K = hermitian_unital(q).incidence
    H, plan = blowup_on_host(K, F, rng.child(0), r=r)
    gen = rng.child(1).generator()
    kept = 0
    for v in np.flatnonzero(gen.random(H.n) < keep):
        kept |= 1 << int(v)
    sub = induced(H, kept)
    rep = alpha_F(sub, F, "greedy", rng.child(2), trials=trials) if sub.n else None
    n = sub.n
    s = F.s
    return {
        "q": q, "r": r, "n": n, "K%d_free" % r: plan.audit.get(f"K{r}_free"),
        "largest_ffree_found": rep.value if rep else 0,
        "reference": "n^(1/2-1/(8s-10))*log2(n)^3",
        "reference_value": n ** (0.5 - 1 / (8 * s - 10)) * math.log2(n) ** 3 if n > 1 else 0.0,
    }
