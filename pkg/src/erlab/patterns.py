"""Forbidden-substructure search.

Subgraph containment (non-induced by default), clique number, chromatic
number of small graphs, colourability of all small subgraphs, and the
cycle / rooted-subdivision tests used on bipartite incidence hosts.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator

from ._bits import Counter, bit, default_budget, full, iter_bits, lowest, members, popcount
from .errors import BudgetError, DomainError
from .graph import (
    Graph,
    VertexSet,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph6_decode,
    graph6_encode,
    path_graph,
    petersen_graph,
)
from .incidence import BipartiteIncidence
from .rng import RngConfig


@dataclass(frozen=True)
class Pattern:
    """A forbidden graph F on vertex set {0, ..., s-1}."""

    graph: Graph
    name: str = ""

    def __post_init__(self):
        if self.graph.n < 2:
            raise DomainError("a pattern needs at least 2 vertices")
        if not self.name:
            object.__setattr__(self, "name", "g6:" + graph6_encode(self.graph).decode())

    @property
    def s(self) -> int:
        return self.graph.n

    @property
    def min_degree(self) -> int:
        return min(self.graph.degrees())

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges()

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Parse names such as ``K3``, ``C4``, ``P3``, ``K2,2``, ``K_{3,3}``,
        ``E3`` (edgeless), ``Petersen`` or ``g6:<graph6>``."""
        raw = text.strip()
        t = raw.replace("_", "").replace("{", "").replace("}", "")
        if t.startswith("g6:"):
            return cls(graph6_decode(t[3:]), raw)
        if t.lower() == "petersen":
            return cls(petersen_graph(), "Petersen")
        m = re.fullmatch(r"K(\d+),(\d+)", t)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            return cls(complete_bipartite(a, b), f"K{a},{b}")
        m = re.fullmatch(r"([KCPE])(\d+)", t)
        if m:
            kind, k = m.group(1), int(m.group(2))
            build = {"K": complete_graph, "C": cycle_graph, "P": path_graph, "E": empty_graph}[kind]
            return cls(build(k), f"{kind}{k}")
        raise DomainError(f"unrecognised pattern {text!r}")


def as_pattern(F) -> Pattern:
    if isinstance(F, Pattern):
        return F
    if isinstance(F, Graph):
        return Pattern(F)
    if isinstance(F, str):
        return Pattern.parse(F)
    raise DomainError(f"cannot interpret {F!r} as a pattern")


# -- subgraph search ----------------------------------------------------
def search_order(F: Graph) -> list[int]:
    """Processing order: highest degree first, then repeatedly the vertex
    with the most already-placed neighbours (ties: degree, then index)."""
    degs = F.degrees()
    order: list[int] = []
    placed = 0
    remaining = set(range(F.n))
    while remaining:
        v = max(remaining, key=lambda u: (popcount(F.rows[u] & placed), degs[u], -u))
        order.append(v)
        placed |= bit(v)
        remaining.discard(v)
    return order


class _Plan:
    __slots__ = ("order", "back_adj", "back_non", "need_deg", "s")

    def __init__(self, F: Graph, induced: bool):
        order = search_order(F)
        pos = {v: i for i, v in enumerate(order)}
        self.order = order
        self.s = F.n
        self.back_adj = []
        self.back_non = []
        for i, v in enumerate(order):
            adj = [pos[u] for u in iter_bits(F.rows[v]) if pos[u] < i]
            self.back_adj.append(adj)
            if induced:
                non = [j for j in range(i) if not F.has_edge(v, order[j])]
            else:
                non = []
            self.back_non.append(non)
        self.need_deg = [F.degree(v) for v in order]


def _embeddings(G: Graph, plan: _Plan, universe: VertexSet) -> Iterator[list[int]]:
    rows = G.rows
    s = plan.s
    back_adj, back_non = plan.back_adj, plan.back_non
    ok = []
    for i in range(s):
        need = plan.need_deg[i]
        mask = 0
        for v in iter_bits(universe):
            if popcount(rows[v] & universe) >= need:
                mask |= 1 << v
        ok.append(mask)
    img = [0] * s

    def rec(i: int, used: int):
        cand = ok[i] & ~used
        for j in back_adj[i]:
            cand &= rows[img[j]]
        for j in back_non[i]:
            cand &= ~rows[img[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            img[i] = low.bit_length() - 1
            if i + 1 == s:
                yield img
            else:
                yield from rec(i + 1, used | low)

    if s == 0:
        yield img
        return
    yield from rec(0, 0)


def iter_embeddings(G: Graph, F, induced: bool = False, within: VertexSet | None = None) -> Iterator[tuple[int, ...]]:
    """All injective (induced, if asked) homomorphisms V(F) -> V(G).

    Yields tuples indexed by F's vertices.  ``within`` restricts the
    image to a vertex subset of G.
    """
    F = as_pattern(F).graph if not isinstance(F, Graph) else F
    plan = _Plan(F, induced)
    universe = full(G.n) if within is None else within
    back = [0] * F.n
    for i, f in enumerate(plan.order):
        back[f] = i
    for img in _embeddings(G, plan, universe):
        yield tuple(img[back[f]] for f in range(F.n))


def contains_subgraph(G: Graph, F, induced: bool = False, within: VertexSet | None = None) -> tuple[int, ...] | None:
    """First embedding of F into G (or G[within]) or None.

    Witnesses are deterministic: the least image tuple in the search order
    returned by :func:`search_order`.  ``witness[f]`` is the image of F's
    vertex ``f``.
    """
    for w in iter_embeddings(G, F, induced=induced, within=within):
        return w
    return None


def is_free(G: Graph, F, S: VertexSet | None = None, induced: bool = False) -> bool:
    """True iff G[S] (default: G) contains no copy of F."""
    Fg = as_pattern(F).graph
    if S is not None and popcount(S) < Fg.n:
        return True
    return contains_subgraph(G, Fg, induced=induced, within=S) is None


def copy_sets(G: Graph, F, induced: bool, limit: int | None = None) -> list[VertexSet]:
    """Vertex sets of all copies of F in G, deduplicated, sorted."""
    Fg = as_pattern(F).graph
    counter = Counter(limit, "copy enumeration")
    if Fg.num_edges() == Fg.n * (Fg.n - 1) // 2:
        # Cliques: enumerate increasing tuples only.
        found = [c for c in _iter_cliques(G, Fg.n, counter)]
        return sorted(found)
    seen = set()
    for img in _embeddings(G, _Plan(Fg, induced), full(G.n)):
        counter.tick()
        m = 0
        for v in img:
            m |= 1 << v
        seen.add(m)
    return sorted(seen)


def _iter_cliques(G: Graph, k: int, counter: Counter) -> Iterator[VertexSet]:
    rows = G.rows

    def rec(chosen: int, cand: int, need: int):
        if need == 0:
            counter.tick()
            yield chosen
            return
        while cand and popcount(cand) >= need:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            yield from rec(chosen | low, cand & rows[v], need - 1)

    if k == 0:
        yield 0
        return
    yield from rec(0, full(G.n), k)


# -- cliques ------------------------------------------------------------
def _color_sort(rows, P: int):
    order = []
    U = P
    color = 0
    while U:
        color += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~low & ~rows[v]
            U &= ~low
            order.append((v, color))
    return order


def max_clique(G: Graph, within: VertexSet | None = None, target: int | None = None,
               budget: int | None = None) -> tuple[list[int], int]:
    """Maximum clique of G[within] by bitset branch-and-bound with a greedy
    colouring bound.  Stops early once a clique of size ``target`` is found.

    Returns ``(clique, nodes_explored)``; the clique is sorted.
    """
    universe = full(G.n) if within is None else within
    verts = members(universe)
    degs = {v: popcount(G.rows[v] & universe) for v in verts}
    verts.sort(key=lambda v: (-degs[v], v))
    local = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        r = 0
        for u in iter_bits(G.rows[v] & universe):
            r |= 1 << local[u]
        rows.append(r)
    counter = Counter(budget, "clique search")
    best: list[int] = []
    goal = target if target is not None else len(verts) + 1

    def expand(C: list[int], P: int) -> bool:
        nonlocal best
        counter.tick()
        for v, c in reversed(_color_sort(rows, P)):
            if len(C) + c <= len(best):
                return False
            C.append(v)
            newP = P & rows[v]
            if newP:
                if expand(C, newP):
                    return True
            elif len(C) > len(best):
                best = C.copy()
                if len(best) >= goal:
                    return True
            C.pop()
            P &= ~(1 << v)
        return False

    if verts:
        expand([], full(len(verts)))
    return sorted(verts[i] for i in best), counter.count


def clique_number(G: Graph, budget: int | None = None) -> tuple[int, list[int]]:
    clique, _ = max_clique(G, budget=budget)
    return len(clique), clique


def find_clique(G: Graph, r: int, within: VertexSet | None = None, budget: int | None = None) -> list[int] | None:
    """Some r-clique of G[within], or None."""
    if r <= 0:
        return []
    clique, _ = max_clique(G, within=within, target=r, budget=budget)
    return clique[:r] if len(clique) >= r else None


def is_kr_free(G: Graph, r: int, budget: int | None = None) -> tuple[bool, list[int] | None]:
    """(True, None) iff ω(G) < r; otherwise (False, an r-clique)."""
    if r < 2:
        raise DomainError("r must be at least 2")
    witness = find_clique(G, r, budget=budget)
    return witness is None, witness


# -- colouring ----------------------------------------------------------
def _k_colourable(rows, S: int, k: int, counter: Counter) -> list[int] | None:
    """Backtracking DSATUR on G[S]; returns colour classes or None."""
    verts = members(S)
    if k <= 0:
        return None if verts else []
    classes = [0] * k
    uncoloured = S

    def pick():
        best_v, best_key = -1, None
        for v in iter_bits(uncoloured):
            r = rows[v]
            sat = sum(1 for c in classes if c & r)
            key = (sat, popcount(r & uncoloured))
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def rec(used: int) -> bool:
        nonlocal uncoloured
        if not uncoloured:
            return True
        counter.tick()
        v = pick()
        r = rows[v]
        low = 1 << v
        uncoloured &= ~low
        for c in range(min(used + 1, k)):
            if not classes[c] & r:
                classes[c] |= low
                if rec(max(used, c + 1)):
                    return True
                classes[c] &= ~low
        uncoloured |= low
        return False

    return list(classes) if rec(0) else None


def chromatic_number(G: Graph, within: VertexSet | None = None, budget: int | None = None) -> tuple[int, list[int]]:
    """Exact χ(G[within]) with a colouring (list of colour-class masks).

    Intended for small graphs (contract: up to 12 vertices; larger inputs
    run under the node budget).
    """
    S = full(G.n) if within is None else within
    if not S:
        return 0, []
    counter = Counter(budget, "colouring search")
    lower = len(max_clique(G, within=S, budget=budget)[0])
    k = lower
    while True:
        classes = _k_colourable(G.rows, S, k, counter)
        if classes is not None:
            return k, [c for c in classes if c]
        k += 1


@dataclass(frozen=True)
class ColourabilityVerdict:
    passed: bool
    mode: str  # "exhaustive" or "sampled"
    subsets_checked: int
    max_chromatic: int
    witness: VertexSet | None = None

    @property
    def label(self) -> str:
        if not self.passed:
            return "counterexample"
        return "pass" if self.mode == "exhaustive" else "no-counterexample-found"


EXHAUSTIVE_MAX_S = 12


def every_small_subgraph_colorable(G: Graph, s: int, r: int, budget: int | None = None,
                                   rng: RngConfig | None = None) -> ColourabilityVerdict:
    """Is every s-vertex subgraph of G (r-1)-colourable?

    Exhaustive when s <= 12 and C(n, s) fits the budget; otherwise checks
    ``budget`` uniformly random s-subsets.
    """
    if s > G.n:
        raise DomainError(f"s={s} exceeds v(G)={G.n}")
    if s < 0 or r < 1:
        raise DomainError("need s >= 0 and r >= 1")
    limit = default_budget() if budget is None else budget
    colours = r - 1
    counter = Counter(None, "colouring search")
    rows = G.rows
    exhaustive = s <= EXHAUSTIVE_MAX_S and math.comb(G.n, s) <= limit
    max_chi = 0
    checked = 0

    def examine(S: int) -> bool:
        nonlocal max_chi
        # χ(G[S]) tracked exactly; subsets that fit in max_chi colours are skipped fast.
        if max_chi and _k_colourable(rows, S, max_chi, counter) is not None:
            return max_chi <= colours
        chi = max_chi
        while _k_colourable(rows, S, chi, counter) is None:
            chi += 1
        max_chi = chi
        return chi <= colours

    if exhaustive:
        for combo in itertools.combinations(range(G.n), s):
            S = 0
            for v in combo:
                S |= 1 << v
            checked += 1
            if not examine(S):
                return ColourabilityVerdict(False, "exhaustive", checked, max_chi, S)
        return ColourabilityVerdict(True, "exhaustive", checked, max_chi)
    gen = (rng or RngConfig(0)).generator()
    for _ in range(limit):
        picks = gen.choice(G.n, size=s, replace=False)
        S = 0
        for v in picks:
            S |= 1 << int(v)
        checked += 1
        if not examine(S):
            return ColourabilityVerdict(False, "sampled", checked, max_chi, S)
    return ColourabilityVerdict(True, "sampled", checked, max_chi)


# -- bipartite incidence hosts ------------------------------------------
def c4_witness(K: BipartiteIncidence) -> tuple[int, int, int, int] | None:
    """(y1, y2, x1, x2) with x1, x2 both adjacent to y1 and y2, or None."""
    rows = K.y_rows
    for y1 in range(K.ny):
        r1 = rows[y1]
        if popcount(r1) < 2:
            continue
        for y2 in range(y1 + 1, K.ny):
            common = r1 & rows[y2]
            if popcount(common) >= 2:
                x1 = lowest(common)
                x2 = lowest(common & ~bit(x1))
                return y1, y2, x1, x2
    return None


def bipartite_has_C4(K: BipartiteIncidence) -> bool:
    return c4_witness(K) is not None


def c4_free_by_pair_counting(K: BipartiteIncidence) -> bool:
    """Independent C4 test: no pair of Y-vertices is listed by two X-vertices."""
    seen = set()
    for nbrs in K.x_adj:
        for pair in itertools.combinations(nbrs, 2):
            if pair in seen:
                return False
            seen.add(pair)
    return True


def _pair_graph(K: BipartiteIncidence) -> list[int]:
    """X-vertices adjacent iff they share a Y-neighbour."""
    P = [0] * K.nx
    for y in range(K.ny):
        xs = K.y_rows[y]
        for x in iter_bits(xs):
            P[x] |= xs
    for x in range(K.nx):
        P[x] &= ~bit(x)
    return P


def c6_witness(K: BipartiteIncidence) -> tuple[int, ...] | None:
    """Six-cycle x1 y1 x2 y2 x3 y3 (y1 ~ x1,x2; y2 ~ x2,x3; y3 ~ x3,x1) or None."""
    P = _pair_graph(K)
    X = K.x_rows
    for x1 in range(K.nx):
        later = P[x1] & ~full(x1 + 1)
        for x2 in iter_bits(later):
            c12 = X[x1] & X[x2]
            for x3 in iter_bits(later & P[x2] & ~full(x2 + 1)):
                c23 = X[x2] & X[x3]
                c31 = X[x3] & X[x1]
                for y1 in iter_bits(c12):
                    for y2 in iter_bits(c23 & ~bit(y1)):
                        rest = c31 & ~bit(y1) & ~bit(y2)
                        if rest:
                            return x1, y1, x2, y2, x3, lowest(rest)
    return None


def bipartite_has_C6(K: BipartiteIncidence) -> bool:
    return c6_witness(K) is not None


ROOTED_K4_MAX_X = 600


def _sdr(sets: list[int]) -> list[int] | None:
    """System of distinct representatives for small bitmask sets (Kuhn)."""
    owner: dict[int, int] = {}

    def augment(i: int, seen: set) -> bool:
        for y in iter_bits(sets[i]):
            if y in seen:
                continue
            seen.add(y)
            if y not in owner or augment(owner[y], seen):
                owner[y] = i
                return True
        return False

    for i in range(len(sets)):
        if not augment(i, set()):
            return None
    reps = [0] * len(sets)
    for y, i in owner.items():
        reps[i] = y
    return reps


def rooted_k4_subdivision_witness(K: BipartiteIncidence) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Four X-vertices and six distinct Y-vertices, the Y-vertex for each
    pair adjacent to both members of the pair (1-subdivision of K4 with its
    branch vertices in X), or None.

    Searches 4-cliques of the X-side sharing graph and checks each for
    distinct representatives of its six pair-neighbourhoods.
    """
    if K.nx > ROOTED_K4_MAX_X:
        raise BudgetError(f"|X|={K.nx} exceeds the exhaustive limit {ROOTED_K4_MAX_X}")
    P = _pair_graph(K)
    X = K.x_rows
    for a in range(K.nx):
        Pa = P[a] & ~full(a + 1)
        for b in iter_bits(Pa):
            Pab = Pa & P[b] & ~full(b + 1)
            for c in iter_bits(Pab):
                for d in iter_bits(Pab & P[c] & ~full(c + 1)):
                    quad = (a, b, c, d)
                    pairs = list(itertools.combinations(quad, 2))
                    reps = _sdr([X[u] & X[v] for u, v in pairs])
                    if reps is not None:
                        return quad, tuple(reps)
    return None


def has_rooted_K4_subdivision(K: BipartiteIncidence) -> bool:
    return rooted_k4_subdivision_witness(K) is not None
