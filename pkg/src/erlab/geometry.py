"""GF(q^2) arithmetic and the Hermitian unital as a point/secant-line incidence."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConstructionError, DomainError
from .incidence import BipartiteIncidence
from .patterns import bipartite_has_C4, c4_free_by_pair_counting, has_rooted_K4_subdivision

MAX_FIELD_Q = 13
MAX_UNITAL_Q = 7
EXHAUSTIVE_SUBDIVISION_Q = 3


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


@dataclass(frozen=True)
class FieldTables:
    """GF(q^2) with element a + b*x stored as the integer a + b*q, where x is
    a root of the irreducible polynomial x^2 + p1*x + p0."""

    q: int
    poly: tuple[int, int]
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    frob: np.ndarray
    norm: np.ndarray

    @property
    def order(self) -> int:
        return self.q * self.q

    def power(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            e >>= 1
        return result

    def subfield(self) -> list[int]:
        return list(range(self.q))


@lru_cache(maxsize=None)
def build_field(q: int) -> FieldTables:
    if not is_prime(q):
        raise DomainError(f"q = {q} is not prime")
    if q > MAX_FIELD_Q:
        raise DomainError(f"q = {q} exceeds supported maximum {MAX_FIELD_Q}")
    poly = None
    for b in range(q):
        for c in range(q):
            if all((x * x + b * x + c) % q for x in range(q)):
                poly = (c, b)
                break
        if poly:
            break
    c0, c1 = poly
    Q = q * q
    a = np.arange(Q)
    lo, hi = a % q, a // q
    add = ((lo[:, None] + lo[None, :]) % q) + q * ((hi[:, None] + hi[None, :]) % q)
    neg = (-lo % q) + q * (-hi % q)
    # (a0 + a1 x)(b0 + b1 x) with x^2 = -c1 x - c0
    p0 = lo[:, None] * lo[None, :]
    p1 = lo[:, None] * hi[None, :] + hi[:, None] * lo[None, :]
    p2 = hi[:, None] * hi[None, :]
    mul = ((p0 - c0 * p2) % q) + q * ((p1 - c1 * p2) % q)
    inv = np.zeros(Q, dtype=np.int64)
    for x in range(1, Q):
        inv[x] = int(np.flatnonzero(mul[x] == 1)[0])
    tables = FieldTables(q, (c0, c1), add, mul, neg, inv, np.zeros(Q, dtype=np.int64), np.zeros(Q, dtype=np.int64))
    frob = np.array([tables.power(x, q) for x in range(Q)])
    norm = np.array([tables.power(x, q + 1) for x in range(Q)])
    object.__setattr__(tables, "frob", frob)
    object.__setattr__(tables, "norm", norm)
    return tables


def check_field_axioms(F: FieldTables, sample: int | None = None, seed: int = 0) -> bool:
    """Associativity, commutativity, distributivity and inverses, over all
    triples or ``sample`` random ones."""
    Q = F.order
    add, mul = F.add, F.mul
    if sample is None:
        a, b, c = np.meshgrid(np.arange(Q), np.arange(Q), np.arange(Q), indexing="ij")
        a, b, c = a.ravel(), b.ravel(), c.ravel()
    else:
        gen = np.random.default_rng(seed)
        a, b, c = gen.integers(Q, size=(3, sample))
    ok = np.array_equal(add[add[a, b], c], add[a, add[b, c]])
    ok &= np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]])
    ok &= np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]])
    ok &= np.array_equal(add, add.T) and np.array_equal(mul, mul.T)
    x = np.arange(Q)
    ok &= bool(np.all(add[x, F.neg] == 0)) and bool(np.all(mul[x[1:], F.inv[1:]] == 1))
    ok &= bool(np.all(add[x, 0] == x)) and bool(np.all(mul[x, 1] == x))
    return bool(ok)


def normalize(F: FieldTables, v: tuple[int, int, int]) -> tuple[int, int, int]:
    """Scale so the last nonzero coordinate is 1."""
    for c in reversed(v):
        if c:
            s = int(F.inv[c])
            return tuple(int(F.mul[s, x]) for x in v)
    raise DomainError("the zero vector is not a projective point")


def projective_points(F: FieldTables) -> list[tuple[int, int, int]]:
    Q = F.order
    pts = [(x, y, 1) for x in range(Q) for y in range(Q)]
    pts += [(x, 1, 0) for x in range(Q)]
    pts.append((1, 0, 0))
    return pts


@dataclass(frozen=True)
class Unital:
    q: int
    incidence: BipartiteIncidence
    points: tuple[tuple[int, int, int], ...]
    lines: tuple[tuple[int, int, int], ...]
    checks: dict


def hermitian_unital(q: int) -> Unital:
    """Points of x^(q+1) + y^(q+1) + z^(q+1) = 0 in PG(2, q^2) as Y, the lines
    meeting the curve in q+1 points as X, incidence = containment."""
    if not is_prime(q):
        raise DomainError(f"q = {q} is not prime")
    if q > MAX_UNITAL_Q:
        raise DomainError(f"q = {q} exceeds supported maximum {MAX_UNITAL_Q}")
    F = build_field(q)
    all_pts = np.array(projective_points(F))
    nsum = F.add[F.add[F.norm[all_pts[:, 0]], F.norm[all_pts[:, 1]]], F.norm[all_pts[:, 2]]]
    curve = all_pts[nsum == 0]
    lines_all = projective_points(F)  # dual coordinates, same normalisation
    mul, add = F.mul, F.add
    secants, y_lists_by_line = [], []
    meet_sizes = set()
    for a, b, c in lines_all:
        val = add[add[mul[a, curve[:, 0]], mul[b, curve[:, 1]]], mul[c, curve[:, 2]]]
        on = np.flatnonzero(val == 0)
        meet_sizes.add(len(on))
        if len(on) == q + 1:
            secants.append((a, b, c))
            y_lists_by_line.append(tuple(int(i) for i in on))
    K = BipartiteIncidence(len(secants), len(curve), tuple(y_lists_by_line))
    points = tuple(tuple(int(c) for c in p) for p in curve)
    checks = _verify(q, K, meet_sizes)
    return Unital(q, K, points, tuple(secants), checks)


def _verify(q: int, K: BipartiteIncidence, meet_sizes: set) -> dict:
    checks = {
        "sizes": K.ny == q**3 + 1 and K.nx == q**4 - q**3 + q**2,
        "tangent_secant_dichotomy": meet_sizes <= {1, q + 1},
        "x_degrees": all(K.x_degree(x) == q + 1 for x in range(K.nx)),
        "y_degrees": all(K.y_degree(y) == q * q for y in range(K.ny)),
        "c4_free": not bipartite_has_C4(K) and c4_free_by_pair_counting(K),
    }
    # pairs of points on a unique common line: C(q^3+1, 2) = |X| * C(q+1, 2)
    checks["pairs_covered"] = K.nx * (q + 1) * q == (q**3 + 1) * q**3
    if q <= EXHAUSTIVE_SUBDIVISION_Q:
        checks["no_rooted_k4_subdivision"] = not has_rooted_K4_subdivision(K)
    else:
        warnings.warn(f"rooted K4-subdivision check skipped for q = {q}", stacklevel=3)
        checks["no_rooted_k4_subdivision"] = "skipped"
    failed = [k for k, v in checks.items() if v is False]
    if failed:
        raise ConstructionError(f"unital q={q} failed checks: {failed}")
    return checks


def norm_fibres(F: FieldTables) -> dict[int, int]:
    """Size of each fibre of the norm map restricted to nonzero elements."""
    counts: dict[int, int] = {}
    for x in range(1, F.order):
        v = int(F.norm[x])
        counts[v] = counts.get(v, 0) + 1
    return counts


def frobenius_fixed(F: FieldTables) -> list[int]:
    return [x for x in range(F.order) if int(F.frob[x]) == x]


def lines_through_pairs(K: BipartiteIncidence) -> bool:
    """Every two distinct Y-points lie on exactly one common X-line."""
    for y1, y2 in itertools.combinations(range(K.ny), 2):
        if (K.y_rows[y1] & K.y_rows[y2]).bit_count() != 1:
            return False
    return True
