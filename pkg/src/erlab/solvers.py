"""Exact and heuristic solvers for α(G), α_F(G), F-free set counts and
small values of the Erdős–Rogers function f_{F,H}(n)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from ._bits import Counter, bit, full, iter_bits, lowest, members, popcount
from .errors import BudgetError, ConstructionError, DomainError
from .graph import Graph, VertexSet, empty_graph
from .patterns import Pattern, as_pattern, contains_subgraph, copy_sets, is_free, max_clique
from .rng import RngConfig


@dataclass
class SolveReport:
    witness: VertexSet
    value: int
    optimal: bool
    nodes_explored: int = 0
    seed: RngConfig | None = None
    route: str = ""
    verified: bool = False
    curves: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    @property
    def vertices(self) -> list[int]:
        return members(self.witness)

    def to_json(self) -> dict:
        return {
            "witness": self.vertices,
            "value": str(self.value),
            "optimal": self.optimal,
            "nodes_explored": str(self.nodes_explored),
            "seed": self.seed.to_json() if self.seed else None,
            "route": self.route,
            "verified": self.verified,
            "curves": self.curves,
            "trace": self.trace,
        }


def _verified(G: Graph, F: Pattern, S: VertexSet, induced_mode: bool = False) -> bool:
    return is_free(G, F, S, induced=induced_mode)


# -- independence number ------------------------------------------------
def greedy_independent_set(G: Graph, within: VertexSet | None = None) -> VertexSet:
    """Repeatedly take a minimum-degree vertex of what is left and delete its
    closed neighbourhood.  Size >= |S| / (average degree of G[S] + 1)."""
    left = full(G.n) if within is None else within
    rows = G.rows
    chosen = 0
    while left:
        best_v, best_d = -1, None
        for v in iter_bits(left):
            d = popcount(rows[v] & left)
            if best_d is None or d < best_d:
                best_v, best_d = v, d
                if d == 0:
                    break
        chosen |= 1 << best_v
        left &= ~rows[best_v] & ~(1 << best_v)
    return chosen


def independence_number(G: Graph, mode: str = "exact", budget: int | None = None) -> SolveReport:
    if mode == "greedy":
        S = greedy_independent_set(G)
        report = SolveReport(S, popcount(S), False, route="greedy")
        report.curves["turan_bound"] = G.n / (2 * G.num_edges() / G.n + 1) if G.n else 0.0
    elif mode == "exact":
        clique, nodes = max_clique(G.complement(), budget=budget)
        S = 0
        for v in clique:
            S |= 1 << v
        report = SolveReport(S, len(clique), True, nodes_explored=nodes, route="exact")
    else:
        raise DomainError(f"unknown mode {mode!r}")
    report.verified = G.edges_within(report.witness) == 0
    if not report.verified:
        raise ConstructionError("independent set failed re-verification")
    return report


# -- copy hypergraph ----------------------------------------------------
@dataclass(frozen=True)
class CopyHypergraph:
    n: int
    edges: tuple[VertexSet, ...]
    induced: bool

    @classmethod
    def build(cls, G: Graph, F, induced: bool, limit: int | None = None) -> "CopyHypergraph":
        F = as_pattern(F)
        return cls(G.n, tuple(copy_sets(G, F, induced, limit=limit)), induced)


MAX_COPIES = 10**6
NUMPY_MAX_N = 64
EXACT_MAX_N = 100


def _clique_cover_bound(rows, R: int, cap: int) -> int:
    cliques: list[int] = []
    sizes: list[int] = []
    for v in iter_bits(R):
        r = rows[v]
        for i, c in enumerate(cliques):
            if c & ~r == 0:
                cliques[i] = c | (1 << v)
                sizes[i] += 1
                break
        else:
            cliques.append(1 << v)
            sizes.append(1)
    return sum(min(sz, cap) for sz in sizes)


def max_free_set(n: int, edges, rows=None, clique_cap: int | None = None, floor: int = -1,
                 budget: int | None = None) -> tuple[VertexSet | None, int]:
    """Largest vertex set containing no hyperedge (branch and bound).

    Only sets strictly larger than ``floor`` are reported; returns
    ``(best_set_or_None, nodes)``.  When ``rows``/``clique_cap`` are given,
    a greedy clique cover of the candidates bounds the answer (valid when
    every clique on ``clique_cap + 1`` vertices contains a hyperedge).
    """
    counter = Counter(budget, "alpha_F search")
    if 0 < n <= NUMPY_MAX_N and edges:
        return _max_free_set_np(n, edges, rows, clique_cap, floor, counter)
    best_size = floor
    best_set: VertexSet | None = None

    def solve(S: int, R: int, E: list[int]) -> None:
        nonlocal best_size, best_set
        counter.tick()
        covered = 0
        for e in E:
            covered |= e
        free = R & ~covered
        if free:
            S |= free
            R &= ~free
        size = popcount(S)
        if not R:
            if size > best_size:
                best_size, best_set = size, S
            return
        used = 0
        packing = 0
        for e in E:
            r = e & R
            if not r & used:
                used |= r
                packing += 1
        if size + popcount(R) - packing <= best_size:
            return
        if rows is not None and size + _clique_cover_bound(rows, R, clique_cap) <= best_size:
            return
        counts: dict[int, int] = {}
        for e in E:
            for v in iter_bits(e & R):
                counts[v] = counts.get(v, 0) + 1
        v = min(counts, key=lambda u: (-counts[u], u))
        vb = 1 << v
        S2 = S | vb
        forced = 0
        for e in E:
            if e & vb:
                rest = e & ~S2
                if rest & (rest - 1) == 0:
                    forced |= rest
        R2 = R & ~vb & ~forced
        keep = S2 | R2
        solve(S2, R2, [e for e in E if e & ~keep == 0 and e & ~S2])
        R3 = R & ~vb
        solve(S, R3, [e for e in E if not e & vb])

    solve(0, full(n), list(edges))
    return best_set, counter.count


_SHIFTS = np.arange(64, dtype=np.uint64)
_ALL64 = (1 << 64) - 1


def _max_free_set_np(n: int, edges, rows, clique_cap, floor: int, counter: Counter):
    # Same search as the pure-Python path, with hyperedges held in a
    # uint64 array so the per-node scans run vectorized.
    best_size = floor
    best_set = None
    shifts = _SHIFTS[:n]
    u64 = np.uint64

    def solve(S: int, R: int, E: np.ndarray) -> None:
        nonlocal best_size, best_set
        counter.tick()
        covered = int(np.bitwise_or.reduce(E)) if E.size else 0
        free = R & ~covered
        if free:
            S |= free
            R &= ~free
        size = popcount(S)
        if not R:
            if size > best_size:
                best_size, best_set = size, S
            return
        used = 0
        packing = 0
        ER = E & u64(R)
        for r in ER.tolist():
            if not r & used:
                used |= r
                packing += 1
        if size + popcount(R) - packing <= best_size:
            return
        if rows is not None and size + _clique_cover_bound(rows, R, clique_cap) <= best_size:
            return
        counts = ((ER[:, None] >> shifts) & u64(1)).sum(axis=0)
        v = int(np.argmax(counts))
        vb = 1 << v
        S2 = S | vb
        has_v = (E & u64(vb)) != 0
        rest = E[has_v] & u64(_ALL64 ^ S2)
        single = rest[(rest & (rest - u64(1))) == 0]
        forced = int(np.bitwise_or.reduce(single)) if single.size else 0
        R2 = R & ~vb & ~forced
        keep = S2 | R2
        mask = ((E & u64(_ALL64 ^ keep)) == 0) & ((E & u64(_ALL64 ^ S2)) != 0)
        solve(S2, R2, E[mask])
        solve(S, R & ~vb, E[~has_v])

    solve(0, full(n), np.array(list(edges), dtype=np.uint64))
    return best_set, counter.count


def alpha_F(G: Graph, F, mode: str = "exact", rng: RngConfig | None = None, *, induced: bool = False,
            budget: int | None = None, floor: int = -1, trials: int = 16,
            keep_prob: float = 1.0) -> SolveReport:
    """Largest F-free induced subgraph of G.

    ``mode="exact"`` solves maximum independent set in the copy hypergraph.
    With ``floor`` set, only sets larger than ``floor`` are searched for;
    if none exists the report has ``value = -1`` and an empty witness.
    ``mode="greedy"`` keeps each vertex with probability ``keep_prob``,
    deletes one vertex from every surviving copy, then greedily re-adds
    vertices; the best of ``trials`` attempts is returned.
    """
    F = as_pattern(F)
    if mode == "exact":
        if G.n > EXACT_MAX_N:
            raise BudgetError(f"exact alpha_F limited to n <= {EXACT_MAX_N}")
        if F.s > G.n:
            if G.n <= floor:
                report = SolveReport(0, -1, True, route="exact-floor")
                report.verified = True
                return report
            S = full(G.n)
            report = SolveReport(S, G.n, True, route="exact")
            report.verified = True
            return report
        edges = copy_sets(G, F, induced, limit=MAX_COPIES)
        complete = F.num_edges == F.s * (F.s - 1) // 2
        cap = F.s - 1 if (not induced or complete) else None
        best, nodes = max_free_set(G.n, edges, G.rows if cap is not None else None, cap, floor, budget)
        if best is None:
            report = SolveReport(0, -1, True, nodes_explored=nodes, route="exact-floor")
            report.verified = True
            return report
        report = SolveReport(best, popcount(best), True, nodes_explored=nodes, route="exact")
    elif mode == "greedy":
        report = _alpha_F_greedy(G, F, rng or RngConfig(0), induced, trials, keep_prob)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    report.verified = _verified(G, F, report.witness, induced)
    if not report.verified:
        raise ConstructionError("alpha_F witness failed re-verification")
    return report


def _alpha_F_greedy(G: Graph, F: Pattern, rng: RngConfig, induced_mode: bool, trials: int,
                    keep_prob: float) -> SolveReport:
    if not 0 < keep_prob <= 1:
        raise DomainError("keep_prob must lie in (0, 1]")
    gen = rng.generator()
    best = 0
    for _ in range(max(1, trials)):
        keep = gen.random(G.n) < keep_prob
        W = 0
        for v in range(G.n):
            if keep[v]:
                W |= 1 << v
        while True:
            w = contains_subgraph(G, F.graph, induced=induced_mode, within=W)
            if w is None:
                break
            W &= ~(1 << int(w[gen.integers(len(w))]))
        rest = [v for v in range(G.n) if not (W >> v) & 1]
        gen.shuffle(rest)
        for v in rest:
            if is_free(G, F, W | (1 << v), induced=induced_mode):
                W |= 1 << v
        if popcount(W) > popcount(best):
            best = W
    return SolveReport(best, popcount(best), False, seed=rng, route="greedy")


# -- counting F-free sets -----------------------------------------------
COUNT_BUDGET = 10**8


def count_ffree_sets(G: Graph, F, t: int, induced_mode: bool, budget: int | None = None) -> int:
    """Number of t-subsets T with G[T] F-free (induced copies if asked)."""
    F = as_pattern(F)
    limit = COUNT_BUDGET if budget is None else budget
    if t < 0 or t > G.n:
        return 0
    if math.comb(G.n, t) > limit:
        raise BudgetError(f"C({G.n}, {t}) exceeds counting budget {limit}")
    if t < F.s:
        return math.comb(G.n, t)
    by_max: list[list[int]] = [[] for _ in range(G.n)]
    for e in copy_sets(G, F, induced_mode):
        by_max[e.bit_length() - 1].append(e)
    n = G.n
    total = 0

    def rec(start: int, S: int, k: int) -> None:
        nonlocal total
        if k == t:
            total += 1
            return
        for v in range(start, n - (t - k) + 1):
            S2 = S | (1 << v)
            bad = False
            for e in by_max[v]:
                if e & ~S2 == 0:
                    bad = True
                    break
            if not bad:
                rec(v + 1, S2, k + 1)

    rec(0, 0, 0)
    return total


# -- canonical forms and exhaustive generation --------------------------
def _refine(rows, cells: list[int]) -> list[int]:
    while True:
        out = []
        changed = False
        for cell in cells:
            if cell & (cell - 1) == 0:
                out.append(cell)
                continue
            groups: dict[tuple, int] = {}
            for v in iter_bits(cell):
                r = rows[v]
                sig = tuple(popcount(r & c) for c in cells)
                groups[sig] = groups.get(sig, 0) | (1 << v)
            if len(groups) > 1:
                changed = True
                out.extend(groups[k] for k in sorted(groups))
            else:
                out.append(cell)
        cells = out
        if not changed:
            return cells


def _certificate(rows, order: list[int]) -> int:
    cert = 0
    for j in range(1, len(order)):
        rj = rows[order[j]]
        for i in range(j):
            cert = (cert << 1) | ((rj >> order[i]) & 1)
    return cert


def canonical_labeling(G: Graph) -> tuple[int, list[int]]:
    """(certificate, order): isomorphic graphs get equal certificates.

    Colour refinement plus individualisation; branches over vertices with
    identical neighbourhoods (twins) are collapsed since they are related
    by an automorphism fixing the current partition.
    """
    rows = G.rows
    best: list = [None, None]

    def search(cells: list[int]) -> None:
        cells = _refine(rows, cells)
        for i, cell in enumerate(cells):
            if cell & (cell - 1):
                break
        else:
            order = [lowest(c) for c in cells]
            cert = _certificate(rows, order)
            if best[0] is None or cert > best[0]:
                best[0], best[1] = cert, order
            return
        reps = []
        for v in iter_bits(cell):
            rv = rows[v]
            if not any((rows[u] & ~bit(v)) == (rv & ~bit(u)) for u in reps):
                reps.append(v)
        for v in reps:
            search(cells[:i] + [bit(v), cell & ~bit(v)] + cells[i + 1:])

    if G.n == 0:
        return 0, []
    search([full(G.n)])
    return best[0], best[1]


def canonical_form(G: Graph) -> tuple[int, int]:
    return G.n, canonical_labeling(G)[0]


def canonical_graph(G: Graph) -> Graph:
    _, order = canonical_labeling(G)
    pos = {v: i for i, v in enumerate(order)}
    rows = [0] * G.n
    for u, v in G.edges():
        rows[pos[u]] |= 1 << pos[v]
        rows[pos[v]] |= 1 << pos[u]
    return Graph._trusted(G.n, rows)


def enumerate_graphs(n: int, forbidden=None, dedup: bool = True, budget: int | None = None) -> list[Graph]:
    """All graphs on n vertices (up to isomorphism when ``dedup``) that do
    not contain ``forbidden``, grown one vertex at a time."""
    F = as_pattern(forbidden) if forbidden is not None else None
    counter = Counter(budget, "graph enumeration")
    level = [empty_graph(0)]
    for m in range(1, n + 1):
        nxt = []
        seen = set()
        for g in level:
            for nbrs in range(1 << (m - 1)):
                counter.tick()
                rows = list(g.rows)
                for u in iter_bits(nbrs):
                    rows[u] |= 1 << (m - 1)
                rows.append(nbrs)
                h = Graph._trusted(m, rows)
                if F is not None and F.s <= m and contains_subgraph(h, F.graph) is not None:
                    continue
                if dedup:
                    key = canonical_labeling(h)[0]
                    if key in seen:
                        continue
                    seen.add(key)
                nxt.append(h)
        level = nxt
    return level


def iter_all_graphs(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from enumerate_graphs(n)


F_EXACT_MAX_N = 9


@dataclass
class FExactResult:
    value: int
    witness: Graph
    graphs_examined: int
    vacuous: bool = False

    def to_json(self) -> dict:
        from .graph import graph6_encode

        return {
            "value": str(self.value),
            "witness_graph6": graph6_encode(self.witness).decode(),
            "graphs_examined": str(self.graphs_examined),
            "vacuous": self.vacuous,
        }


def f_exact(F, H, n: int, budget: int | None = None, dedup: bool = True) -> FExactResult:
    """min over H-free graphs G on n vertices of α_F(G)."""
    F, H = as_pattern(F), as_pattern(H)
    if n < 0:
        raise DomainError("n must be non-negative")
    if n > F_EXACT_MAX_N:
        raise BudgetError(f"f_exact is limited to n <= {F_EXACT_MAX_N}")
    if n < F.s:
        return FExactResult(n, empty_graph(n), 0, vacuous=True)
    best_value, best_graph = None, None
    graphs = enumerate_graphs(n, forbidden=H, dedup=dedup, budget=budget)
    for g in graphs:
        rep = alpha_F(g, F, "exact", budget=budget)
        if best_value is None or rep.value < best_value:
            best_value, best_graph = rep.value, g
    if best_graph is None:
        raise DomainError(f"no {H}-free graph on {n} vertices")
    return FExactResult(best_value, best_graph, len(graphs))
