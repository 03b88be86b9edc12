"""Two-sided incidence structures (bipartite graphs with named sides)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ._bits import members, popcount
from .errors import DomainError, ParseError
from .graph import Graph


@dataclass(frozen=True)
class BipartiteIncidence:
    """Bipartite graph with parts X (size ``nx``) and Y (size ``ny``).

    ``x_adj[x]`` is the sorted tuple of Y-neighbours of ``x``.  Bitmask
    views over the opposite side are cached in ``x_rows`` / ``y_rows``.
    """

    nx: int
    ny: int
    x_adj: tuple[tuple[int, ...], ...]
    x_rows: tuple[int, ...] = field(init=False, repr=False, compare=False)
    y_rows: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.x_adj) != self.nx:
            raise DomainError(f"expected {self.nx} neighbour lists, got {len(self.x_adj)}")
        x_rows = []
        y_rows = [0] * self.ny
        for x, nbrs in enumerate(self.x_adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise DomainError(f"neighbour list of X-vertex {x} not sorted/unique")
            row = 0
            for y in nbrs:
                if not 0 <= y < self.ny:
                    raise DomainError(f"Y-index {y} out of range")
                row |= 1 << y
                y_rows[y] |= 1 << x
            x_rows.append(row)
        object.__setattr__(self, "x_rows", tuple(x_rows))
        object.__setattr__(self, "y_rows", tuple(y_rows))

    @classmethod
    def from_edges(cls, nx: int, ny: int, edges: Iterable[tuple[int, int]]) -> "BipartiteIncidence":
        adj: list[set[int]] = [set() for _ in range(nx)]
        for x, y in edges:
            if not (0 <= x < nx and 0 <= y < ny):
                raise DomainError(f"edge ({x}, {y}) out of range")
            adj[x].add(y)
        return cls(nx, ny, tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_y_lists(cls, nx: int, y_lists: Sequence[Iterable[int]]) -> "BipartiteIncidence":
        return cls.from_edges(nx, len(y_lists), ((x, y) for y, xs in enumerate(y_lists) for x in xs))

    def x_degree(self, x: int) -> int:
        return len(self.x_adj[x])

    def y_degree(self, y: int) -> int:
        return popcount(self.y_rows[y])

    def num_edges(self) -> int:
        return sum(len(a) for a in self.x_adj)

    def edges(self):
        for x, nbrs in enumerate(self.x_adj):
            for y in nbrs:
                yield x, y

    def y_neighbours(self, y: int) -> list[int]:
        return members(self.y_rows[y])

    def transpose(self) -> "BipartiteIncidence":
        return BipartiteIncidence.from_edges(self.ny, self.nx, ((y, x) for x, y in self.edges()))

    def to_graph(self) -> Graph:
        """Plain graph on X ∪ Y, X-vertices first."""
        n = self.nx + self.ny
        rows = [row << self.nx for row in self.x_rows]
        rows.extend(self.y_rows)
        return Graph._trusted(n, rows)


def incidence_text(K: BipartiteIncidence) -> str:
    lines = [f"X={K.nx} Y={K.ny}"]
    lines.extend(f"{x} {y}" for x, y in K.edges())
    return "\n".join(lines) + "\n"


def parse_incidence(text: str) -> BipartiteIncidence:
    header = None
    edges = []
    offset = 0
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            if header is None:
                try:
                    left, right = stripped.split()
                    if not (left.startswith("X=") and right.startswith("Y=")):
                        raise ValueError
                    header = int(left[2:]), int(right[2:])
                except ValueError:
                    raise ParseError("incidence list must start with 'X=<count> Y=<count>'", offset) from None
            else:
                try:
                    x, y = (int(t) for t in stripped.split())
                except ValueError:
                    raise ParseError(f"expected 'x y', got {stripped!r}", offset) from None
                if not (0 <= x < header[0] and 0 <= y < header[1]):
                    raise ParseError(f"edge {x} {y} out of range", offset)
                edges.append((x, y))
        offset += len(line) + 1
    if header is None:
        raise ParseError("missing 'X=<count> Y=<count>' header", 0)
    return BipartiteIncidence.from_edges(header[0], header[1], edges)
