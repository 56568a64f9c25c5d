"""Graphs, colorings, repair moves and the structural predicates built on them.

Vertices are dense integers ``0..n-1`` and colors are ``0..r-1`` everywhere.
All objects are frozen; operations return new objects.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, NamedTuple, Sequence, Union

from colorfix.errors import AdjacencyViolation, SearchCapExceeded, ValidationError

Edge = tuple[int, int]
Variant = Literal["fix", "swap"]

#: Default vertex cap for :func:`chromatic_number`.
CHROMATIC_CAP = 60


def normalize_edges(n: int, edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    """Return edges as sorted ``(u, v)`` pairs with ``u < v``.

    Raises :class:`ValidationError` on self-loops, out-of-range endpoints and
    duplicate edges (in either orientation).
    """
    seen: set[Edge] = set()
    for pair in edges:
        if len(pair) != 2:
            raise ValidationError(f"edge {tuple(pair)!r} does not have two endpoints")
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise ValidationError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise ValidationError(f"duplicate edge {e}")
        seen.add(e)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", normalize_edges(self.n, self.edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ColoredGraph(Graph):
    """A graph together with a total coloring ``vertex -> 0..r-1``."""

    r: int = 1
    coloring: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.r < 1:
            raise ValidationError("color count r must be at least 1")
        coloring = tuple(int(c) for c in self.coloring)
        if len(coloring) != self.n:
            raise ValidationError(
                f"coloring has {len(coloring)} entries for {self.n} vertices"
            )
        for v, c in enumerate(coloring):
            if not 0 <= c < self.r:
                raise ValidationError(f"vertex {v} has color {c} outside 0..{self.r - 1}")
        object.__setattr__(self, "coloring", coloring)

    @classmethod
    def from_graph(cls, graph: Graph, r: int, coloring: Sequence[int]) -> ColoredGraph:
        return cls(graph.n, graph.edges, r, tuple(coloring))

    @property
    def structure(self) -> Graph:
        return Graph(self.n, self.edges)

    def with_coloring(self, coloring: Sequence[int]) -> ColoredGraph:
        return ColoredGraph(self.n, self.edges, self.r, tuple(coloring))


@dataclass(frozen=True)
class RepairInstance:
    """A colored graph with a move budget and the problem variant to solve."""

    graph: ColoredGraph
    k: int
    variant: Variant = "fix"
    promise: bool = False
    adjacent_only: bool = False

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValidationError("budget k must be nonnegative")
        if self.variant not in ("fix", "swap"):
            raise ValidationError(f"unknown variant {self.variant!r}")
        if self.adjacent_only and self.variant != "swap":
            raise ValidationError("adjacent_only requires the swap variant")


class Recolor(NamedTuple):
    vertex: int
    color: int


class Swap(NamedTuple):
    u: int
    v: int


Move = Union[Recolor, Swap]


@dataclass(frozen=True)
class Certificate:
    """An ordered, homogeneous list of repair moves."""

    moves: tuple[Move, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        moves = tuple(self.moves)
        kinds = {type(m) for m in moves}
        if len(kinds) > 1:
            raise ValidationError("certificate mixes recolorings and swaps")
        for m in moves:
            if isinstance(m, Swap) and m.u == m.v:
                raise ValidationError(f"swap of vertex {m.u} with itself")
        object.__setattr__(self, "moves", moves)

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    @property
    def kind(self) -> Variant | None:
        if not self.moves:
            return None
        return "fix" if isinstance(self.moves[0], Recolor) else "swap"

    def lines(self) -> list[str]:
        """One ``R v c`` or ``S u v`` line per move."""
        out = []
        for m in self.moves:
            if isinstance(m, Recolor):
                out.append(f"R {m.vertex} {m.color}")
            else:
                out.append(f"S {m.u} {m.v}")
        return out

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> Certificate:
        moves: list[Move] = []
        for line in lines:
            parts = line.split()
            if not parts:
                continue
            tag, a, b = parts[0], int(parts[1]), int(parts[2])
            moves.append(Recolor(a, b) if tag == "R" else Swap(a, b))
        return cls(tuple(moves))


def conflicts(g: ColoredGraph) -> set[Edge]:
    """Edges whose endpoints share a color."""
    col = g.coloring
    return {(u, v) for u, v in g.edges if col[u] == col[v]}


def is_proper(g: ColoredGraph) -> bool:
    col = g.coloring
    return all(col[u] != col[v] for u, v in g.edges)


def apply(g: ColoredGraph, cert: Certificate | Iterable[Move], adjacent_only: bool = False) -> ColoredGraph:
    """Execute ``cert`` move by move and return the resulting colored graph.

    A recoloring must change the vertex's color. With ``adjacent_only`` set,
    every swap has to be across an edge of ``g``.
    """
    if not isinstance(cert, Certificate):
        cert = Certificate(tuple(cert))
    col = list(g.coloring)
    for i, m in enumerate(cert.moves):
        if isinstance(m, Recolor):
            v, c = m
            if not 0 <= v < g.n:
                raise ValidationError(f"move {i}: vertex {v} out of range")
            if not 0 <= c < g.r:
                raise ValidationError(f"move {i}: color {c} out of range")
            if col[v] == c:
                raise ValidationError(f"move {i}: recoloring vertex {v} to its current color")
            col[v] = c
        else:
            u, v = m
            if not (0 <= u < g.n and 0 <= v < g.n):
                raise ValidationError(f"move {i}: swap ({u}, {v}) out of range")
            if adjacent_only and not g.has_edge(u, v):
                raise AdjacencyViolation(f"move {i}: vertices {u} and {v} are not adjacent")
            col[u], col[v] = col[v], col[u]
    return g.with_coloring(col)


def color_class_sizes(g: ColoredGraph) -> tuple[int, ...]:
    """Number of vertices of each color, indexed by color."""
    sizes = [0] * g.r
    for c in g.coloring:
        sizes[c] += 1
    return tuple(sizes)


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """Two-color ``g`` by BFS, or return ``None`` if it has an odd cycle.

    In every component the smallest vertex lands in the first side.
    """
    side = [-1] * g.n
    adj = g.adjacency
    for start in range(g.n):
        if side[start] != -1:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    a = [v for v in range(g.n) if side[v] == 0]
    b = [v for v in range(g.n) if side[v] == 1]
    return a, b


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def planarity_bound_check(g: Graph) -> bool:
    """Euler-formula necessary condition for planarity.

    ``m <= 3n - 6``, tightened to ``m <= 2n - 4`` for bipartite graphs; both
    only apply once ``n >= 3``. Passing does not prove planarity.
    """
    if g.n < 3:
        return True
    if g.m > 3 * g.n - 6:
        return False
    if is_bipartite(g) and g.m > 2 * g.n - 4:
        return False
    return True


def _greedy_clique(adj: Sequence[frozenset[int]]) -> int:
    order = sorted(range(len(adj)), key=lambda v: -len(adj[v]))
    best = 1 if adj else 0
    for start in order:
        if len(adj[start]) + 1 <= best:
            break
        clique = [start]
        cand = set(adj[start])
        while cand:
            v = max(cand, key=lambda x: (len(adj[x] & cand), -x))
            clique.append(v)
            cand &= adj[v]
        best = max(best, len(clique))
    return best


def _dsatur_greedy(adj: Sequence[frozenset[int]]) -> list[int]:
    n = len(adj)
    col = [-1] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if col[u] == -1),
            key=lambda u: (len({col[w] for w in adj[u] if col[w] != -1}), len(adj[u]), -u),
        )
        used = {col[w] for w in adj[v]}
        c = 0
        while c in used:
            c += 1
        col[v] = c
    return col


def chromatic_number(g: Graph, cap: int | None = CHROMATIC_CAP) -> int:
    """Exact chromatic number by DSATUR branch and bound.

    The greedy clique size is the lower bound, a greedy DSATUR coloring the
    initial upper bound.
    """
    n = g.n
    if cap is not None and n > cap:
        raise SearchCapExceeded(f"chromatic_number: n={n} exceeds cap {cap}")
    if n == 0:
        return 0
    adj = g.adjacency
    lower = _greedy_clique(adj)
    best = max(_dsatur_greedy(adj)) + 1
    if best == lower:
        return best

    col = [-1] * n

    def search(colored: int, used: int) -> bool:
        nonlocal best
        if colored == n:
            best = used
            return best == lower
        v = -1
        key = None
        for u in range(n):
            if col[u] != -1:
                continue
            sat = {col[w] for w in adj[u] if col[w] != -1}
            kk = (len(sat), sum(1 for w in adj[u] if col[w] == -1))
            if key is None or kk > key:
                v, key = u, kk
        blocked = {col[w] for w in adj[v]}
        for c in range(min(used + 1, best - 1)):
            if c in blocked:
                continue
            col[v] = c
            if search(colored + 1, max(used, c + 1)):
                return True
            col[v] = -1
            if best == lower:
                return True
        return False

    search(0, 0)
    return best
