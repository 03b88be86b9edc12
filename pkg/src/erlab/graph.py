"""Dense simple graphs with bit-packed adjacency.

A :class:`Graph` stores one Python ``int`` per vertex; bit ``u`` of
``rows[v]`` is set iff ``uv`` is an edge.  Vertex sets are plain ints
used as bitmasks (see :mod:`erlab._bits`).  Graphs are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._bits import bit, full, iter_bits, members, popcount
from .errors import DomainError, ParseError, SizeError
from .rng import RngConfig

MAX_VERTICES = 1 << 16

VertexSet = int


@dataclass(frozen=True, eq=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        n, rows = self.n, self.rows
        if not 0 <= n <= MAX_VERTICES:
            raise SizeError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        if len(rows) != n:
            raise DomainError(f"expected {n} rows, got {len(rows)}")
        for v, row in enumerate(rows):
            if row < 0 or row >> n:
                raise DomainError(f"row {v} has bits outside [0, {n})")
            if (row >> v) & 1:
                raise DomainError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not (rows[u] >> v) & 1:
                    raise DomainError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def _trusted(cls, n: int, rows: Sequence[int]) -> "Graph":
        # Internal constructor: skips the O(m) invariant check.
        if not 0 <= n <= MAX_VERTICES:
            raise SizeError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", tuple(rows))
        return g

    # -- basic queries -------------------------------------------------
    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, row in enumerate(self.rows):
            for u in iter_bits(row >> (v + 1)):
                yield v, v + 1 + u

    def vertex_set(self) -> VertexSet:
        return full(self.n)

    def edges_within(self, S: VertexSet) -> int:
        return sum(popcount(self.rows[v] & S) for v in iter_bits(S)) // 2

    def complement(self) -> "Graph":
        everything = full(self.n)
        return Graph._trusted(self.n, [everything & ~row & ~bit(v) for v, row in enumerate(self.rows)])

    def to_numpy(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            A[u, v] = A[v, u] = True
        return A

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"

    # -- constructors --------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, rows)

    @classmethod
    def from_numpy(cls, A: np.ndarray) -> "Graph":
        A = np.asarray(A, dtype=bool)
        n = A.shape[0]
        if A.shape != (n, n):
            raise DomainError("adjacency matrix must be square")
        if np.any(np.diag(A)) or np.any(A != A.T):
            raise DomainError("adjacency matrix must be symmetric with empty diagonal")
        return cls._trusted(n, _pack_rows(A))


def _pack_rows(A: np.ndarray) -> list[int]:
    n = A.shape[0]
    if n == 0:
        return []
    packed = np.packbits(A, axis=1, bitorder="little")
    return [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]


# -- named graphs --------------------------------------------------------
def empty_graph(n: int) -> Graph:
    return Graph._trusted(n, [0] * n)


def complete_graph(n: int) -> Graph:
    everything = full(n)
    return Graph._trusted(n, [everything & ~bit(v) for v in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    n = sum(sizes)
    everything = full(n)
    rows = []
    start = 0
    for size in sizes:
        part = full(size) << start
        rows.extend([everything & ~part] * size)
        start += size
    return Graph._trusted(n, rows)


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite([a, b])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


# -- operations ----------------------------------------------------------
def _check_set(G: Graph, S: VertexSet) -> None:
    if S < 0 or S >> G.n:
        raise DomainError(f"vertex set has bits outside [0, {G.n})")


def induced(G: Graph, S: VertexSet) -> Graph:
    """G[S], vertices relabelled 0..|S|-1 in increasing original order."""
    _check_set(G, S)
    if S == full(G.n):
        return G
    verts = members(S)
    return Graph._trusted(len(verts), [_compress(G.rows[v], verts) for v in verts])


def _compress(row: int, verts: list[int]) -> int:
    out = 0
    for i, v in enumerate(verts):
        if (row >> v) & 1:
            out |= 1 << i
    return out


def expand(S_local: VertexSet, verts: Sequence[int]) -> VertexSet:
    """Map a set of G[S] indices back to indices of G (``verts`` = members(S))."""
    out = 0
    for i in iter_bits(S_local):
        out |= 1 << verts[i]
    return out


def common_neighbourhood(G: Graph, X: VertexSet) -> VertexSet:
    _check_set(G, X)
    if X == 0:
        raise DomainError("common neighbourhood of the empty set is undefined")
    out = full(G.n)
    for x in iter_bits(X):
        out &= G.rows[x]
    return out


def lexicographic_product(G: Graph, H: Graph) -> Graph:
    """G·H: vertex (u, a) becomes u*v(H) + a."""
    m = H.n
    n = G.n * m
    if n > MAX_VERTICES:
        raise SizeError(f"product would have {n} > {MAX_VERTICES} vertices")
    block = full(m)
    rows = []
    for u in range(G.n):
        cross = 0
        for v in iter_bits(G.rows[u]):
            cross |= block << (v * m)
        shift = u * m
        rows.extend(cross | (H.rows[a] << shift) for a in range(m))
    return Graph._trusted(n, rows)


def union_same_vertices(G1: Graph, G2: Graph) -> Graph:
    if G1.n != G2.n:
        raise DomainError(f"vertex counts differ: {G1.n} vs {G2.n}")
    return Graph._trusted(G1.n, [a | b for a, b in zip(G1.rows, G2.rows)])


def random_gnp(n: int, p: float, rng: RngConfig) -> Graph:
    """Erdős–Rényi G(n, p); pairs drawn in row-major upper-triangle order."""
    if not 0 <= p <= 1:
        raise DomainError(f"edge probability {p} outside [0, 1]")
    if n > MAX_VERTICES:
        raise SizeError(f"n={n} exceeds {MAX_VERTICES}")
    if n < 2 or p == 0:
        return empty_graph(n)
    if p == 1:
        return complete_graph(n)
    gen = rng.generator()
    iu = np.triu_indices(n, 1)
    hits = gen.random(len(iu[0])) < p
    A = np.zeros((n, n), dtype=bool)
    A[iu[0][hits], iu[1][hits]] = True
    A |= A.T
    return Graph._trusted(n, _pack_rows(A))


# -- graph6 --------------------------------------------------------------
def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def graph6_encode(G: Graph) -> bytes:
    """Standard graph6 (no header, no newline)."""
    out = bytearray(_encode_n(G.n))
    acc = 0
    nbits = 0
    for j in range(1, G.n):
        row = G.rows[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip(b"\r\n")
    pos = 0
    if data.startswith(b">>graph6<<"):
        pos = 10
    for off in range(pos, len(data)):
        if not 63 <= data[off] <= 126:
            raise ParseError(f"byte {data[off]!r} outside the printable graph6 range", off)
    if pos >= len(data):
        raise ParseError("missing vertex-count header", pos)
    if data[pos] != 126:
        n = data[pos] - 63
        pos += 1
    else:
        width = 3
        start = pos + 1
        if len(data) > pos + 1 and data[pos + 1] == 126:
            width, start = 6, pos + 2
        if len(data) < start + width:
            raise ParseError("truncated vertex-count header", len(data))
        n = 0
        for b in data[start:start + width]:
            n = (n << 6) | (b - 63)
        pos = start + width
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} adjacency bytes for n={n}, found {len(body)}", pos + min(len(body), need))
    if n > MAX_VERTICES:
        raise ParseError(f"n={n} exceeds supported size", pos)
    rows = [0] * n
    k = 0
    i = 0
    j = 1
    total = n * (n - 1) // 2
    for byte in body:
        value = byte - 63
        for shift in range(5, -1, -1):
            if k >= total:
                if (value >> shift) & 1:
                    raise ParseError("nonzero padding bits", pos)
                continue
            if (value >> shift) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
        pos += 1
    return Graph._trusted(n, rows)


def read_graph6(path) -> list[Graph]:
    graphs = []
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line:
                graphs.append(graph6_decode(line))
    return graphs


def write_graph6(path, graphs: Iterable[Graph]) -> None:
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(graph6_encode(g) + b"\n")


# -- edge list text format -----------------------------------------------
def edge_list_text(G: Graph) -> str:
    lines = [f"n={G.n}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    offset = 0
    n = None
    edges = []
    for line in lines:
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            if n is None:
                if not stripped.startswith("n="):
                    raise ParseError("edge list must start with an 'n=<count>' header", offset)
                try:
                    n = int(stripped[2:])
                except ValueError:
                    raise ParseError("bad vertex count", offset) from None
            else:
                parts = stripped.split()
                try:
                    u, v = (int(x) for x in parts)
                except ValueError:
                    raise ParseError(f"expected 'u v', got {stripped!r}", offset) from None
                if not (0 <= u < n and 0 <= v < n) or u == v:
                    raise ParseError(f"invalid edge {u} {v}", offset)
                edges.append((u, v))
        offset += len(line) + 1
    if n is None:
        raise ParseError("missing 'n=<count>' header", 0)
    return Graph.from_edges(n, edges)


def average_degree(G: Graph) -> float:
    return 2 * G.num_edges() / G.n if G.n else 0.0
