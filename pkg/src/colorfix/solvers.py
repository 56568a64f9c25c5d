"""Exact solvers for coloring repair by recolorings and by swaps.

Two routes are available for every variant: an exhaustive search over
target colorings (``fix_optimum``, ``swap_optimum``) and a move-based search
(``fix_branch``, ``adjacent_swap_optimum``, and the BFS oracles in
:mod:`colorfix.verify.oracles`).

The colorings search works on *twin classes*: vertices with the same open
neighbourhood and the same current color are interchangeable, so a class is
assigned a vector of per-color counts instead of one color per vertex. Two
twins are never adjacent, and two classes are either completely joined or
not joined at all, which keeps the quotient exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from colorfix.errors import MultisetMismatch, SearchCapExceeded
from colorfix.graph import (
    Certificate,
    ColoredGraph,
    RepairInstance,
    Recolor,
    Swap,
    chromatic_number,
    color_class_sizes,
    is_proper,
)

#: Default vertex cap for the coloring searches.
SEARCH_CAP = 160
#: Default vertex cap for breadth-first search over coloring states.
BFS_CAP = 14


class Unreachable:
    """Marker for 'no proper coloring can be reached'."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (Unreachable, ())


UNREACHABLE = Unreachable()


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solver call.

    ``optimum`` is the minimum number of moves, :data:`UNREACHABLE`, or
    ``None`` when a budget-limited search only established that the optimum
    exceeds the budget. ``decision`` is ``None`` when no budget was given.
    """

    optimum: int | Unreachable | None
    decision: bool | None = None
    certificate: Certificate | None = None

    @property
    def reachable(self) -> bool:
        return isinstance(self.optimum, int)


def _decide(optimum, k: int | None) -> bool | None:
    if k is None:
        return None
    return isinstance(optimum, int) and optimum <= k


def _check_cap(g: ColoredGraph, cap: int | None, who: str) -> None:
    if cap is not None and g.n > cap:
        raise SearchCapExceeded(f"{who}: n={g.n} exceeds cap {cap}")


# ---------------------------------------------------------------------------
# exchange digraph and swap distance to a fixed target


@lru_cache(maxsize=None)
def cycle_types(r: int) -> tuple[tuple[int, ...], ...]:
    """All simple directed cycles on colors ``0..r-1``, smallest color first."""
    out = []
    for size in range(2, r + 1):
        for subset in itertools.combinations(range(r), size):
            head, rest = subset[0], subset[1:]
            for perm in itertools.permutations(rest):
                out.append((head,) + perm)
    return tuple(out)


@lru_cache(maxsize=None)
def _cycles_through(r: int) -> dict[tuple[int, int], tuple[tuple[int, ...], ...]]:
    table: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for cyc in cycle_types(r):
        for i, a in enumerate(cyc):
            table.setdefault((a, cyc[(i + 1) % len(cyc)]), []).append(cyc)
    return {k: tuple(v) for k, v in table.items()}


@lru_cache(maxsize=1 << 18)
def _max_cycles(r: int, counts: tuple[int, ...]) -> tuple[int, tuple[int, ...] | None]:
    """Maximum cycle count of a decomposition and the first cycle used.

    ``counts`` is the flattened ``r x r`` edge multiplicity matrix. Any
    decomposition must cover the smallest present edge, so only cycles through
    that edge are branched on. Returns ``(-1, None)`` if no decomposition
    exists (unbalanced input).
    """
    try:
        idx = next(i for i, x in enumerate(counts) if x)
    except StopIteration:
        return 0, None
    edge = divmod(idx, r)
    best, best_cyc = -1, None
    for cyc in _cycles_through(r).get(edge, ()):
        arcs = [cyc[i] * r + cyc[(i + 1) % len(cyc)] for i in range(len(cyc))]
        if any(counts[a] == 0 for a in arcs):
            continue
        rest = list(counts)
        for a in arcs:
            rest[a] -= 1
        sub, _ = _max_cycles(r, tuple(rest))
        if sub >= 0 and sub + 1 > best:
            best, best_cyc = sub + 1, cyc
    return best, best_cyc


@dataclass(frozen=True)
class ExchangeDigraph:
    """Counts ``counts[a][b]`` of vertices colored ``a`` whose target is ``b != a``."""

    counts: tuple[tuple[int, ...], ...]

    @classmethod
    def between(cls, source: Sequence[int], target: Sequence[int], r: int) -> ExchangeDigraph:
        counts = [[0] * r for _ in range(r)]
        for a, b in zip(source, target):
            if a != b:
                counts[a][b] += 1
        return cls(tuple(tuple(row) for row in counts))

    @property
    def r(self) -> int:
        return len(self.counts)

    @property
    def mismatches(self) -> int:
        return sum(map(sum, self.counts))

    @property
    def balanced(self) -> bool:
        r = self.r
        return all(
            sum(self.counts[a]) == sum(self.counts[b][a] for b in range(r)) for a in range(r)
        )

    def _flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.counts for x in row)

    def max_cycles(self) -> int:
        best, _ = _max_cycles(self.r, self._flat())
        if best < 0:
            raise MultisetMismatch("exchange digraph is not balanced")
        return best

    def decomposition(self) -> list[tuple[int, ...]]:
        """A maximum-size decomposition into simple color cycles."""
        r = self.r
        flat = list(self._flat())
        out = []
        while any(flat):
            best, cyc = _max_cycles(r, tuple(flat))
            if best < 0 or cyc is None:
                raise MultisetMismatch("exchange digraph is not balanced")
            out.append(cyc)
            for i, a in enumerate(cyc):
                flat[a * r + cyc[(i + 1) % len(cyc)]] -= 1
        return out

    def swap_distance(self) -> int:
        return self.mismatches - self.max_cycles()


def _swaps_realizing(source: Sequence[int], target: Sequence[int], r: int) -> list[Swap]:
    """Explicit transpositions turning ``source`` into ``target``.

    Each color cycle ``a1 -> a2 -> ... -> aL`` picks one vertex per arc and
    rotates colors along it with ``L - 1`` swaps.
    """
    pools: dict[tuple[int, int], list[int]] = {}
    for v, (a, b) in enumerate(zip(source, target)):
        if a != b:
            pools.setdefault((a, b), []).append(v)
    for p in pools.values():
        p.reverse()
    swaps = []
    for cyc in ExchangeDigraph.between(source, target, r).decomposition():
        verts = [pools[(cyc[i], cyc[(i + 1) % len(cyc)])].pop() for i in range(len(cyc))]
        swaps.extend(Swap(verts[i], verts[i + 1]) for i in range(len(verts) - 1))
    return swaps


def swap_distance_to(g: ColoredGraph, target: Sequence[int]) -> int:
    """Minimum number of swaps turning ``g``'s coloring into ``target``.

    Equals mismatches minus the maximum number of cycles in a decomposition
    of the exchange digraph.
    """
    target = tuple(target)
    if len(target) != g.n:
        raise MultisetMismatch("target has the wrong length")
    if sorted(target) != sorted(g.coloring):
        raise MultisetMismatch("target does not have the same color-class sizes")
    return ExchangeDigraph.between(g.coloring, target, g.r).swap_distance()


# ---------------------------------------------------------------------------
# branch and bound over target colorings


def _count_vectors(size: int, allowed: Sequence[int]):
    if not allowed:
        return
    if len(allowed) == 1:
        yield {allowed[0]: size} if size else {}
        return
    head, rest = allowed[0], allowed[1:]
    for take in range(size, -1, -1):
        for tail in _count_vectors(size - take, rest):
            d = {head: take} if take else {}
            d.update(tail)
            yield d


class _ClassSearch:
    """Branch and bound over count vectors of twin classes.

    ``mode`` is ``"fix"`` (minimize Hamming distance), ``"swap"`` (minimize
    swap distance under equal class sizes) or ``"feasible"`` (any proper
    coloring with equal class sizes).
    """

    def __init__(self, g: ColoredGraph, mode: str, bound: int | None = None):
        self.g = g
        self.mode = mode
        n, r = g.n, g.r
        adj, col = g.adjacency, g.coloring
        index: dict = {}
        members: list[list[int]] = []
        for v in range(n):
            key = (adj[v], col[v])
            i = index.get(key)
            if i is None:
                index[key] = len(members)
                members.append([v])
            else:
                members[i].append(v)
        cls_of = [0] * n
        for i, ms in enumerate(members):
            for v in ms:
                cls_of[v] = i
        self.members = members
        self.size = [len(ms) for ms in members]
        self.cur = [col[ms[0]] for ms in members]
        self.nbr = [sorted({cls_of[w] for w in adj[ms[0]]}) for ms in members]
        K = len(members)

        order: list[int] = []
        placed = [False] * K
        weight = [0] * K
        deg = [len(adj[ms[0]]) * len(ms) for ms in members]
        for _ in range(K):
            i = max((j for j in range(K) if not placed[j]), key=lambda j: (weight[j], deg[j], -j))
            placed[i] = True
            order.append(i)
            for j in self.nbr[i]:
                weight[j] += 1
        self.order = order

        self.block = [[0] * r for _ in range(K)]
        self.assigned = [False] * K
        self.counts: list[dict[int, int] | None] = [None] * K
        self.remaining = list(color_class_sizes(g))
        self.E = [[0] * r for _ in range(r)]
        self.diff = [0] * r
        self.m = 0
        self.forced = 0
        self.best = float("inf") if bound is None else bound + 1
        self.best_counts: list[dict[int, int]] | None = None

    # bookkeeping -----------------------------------------------------------

    def _assign(self, i: int, counts: dict[int, int]) -> None:
        a, s = self.cur[i], self.size[i]
        if self.block[i][a]:
            self.forced -= s
        self.assigned[i] = True
        self.counts[i] = counts
        for c, x in counts.items():
            self.remaining[c] -= x
            if c != a:
                self.E[a][c] += x
                self.diff[a] += x
                self.diff[c] -= x
                self.m += x
        for j in self.nbr[i]:
            bj = self.block[j]
            for c in counts:
                if not self.assigned[j] and c == self.cur[j] and bj[c] == 0:
                    self.forced += self.size[j]
                bj[c] += 1

    def _unassign(self, i: int) -> None:
        a, s = self.cur[i], self.size[i]
        counts = self.counts[i]
        for j in self.nbr[i]:
            bj = self.block[j]
            for c in counts:
                bj[c] -= 1
                if not self.assigned[j] and c == self.cur[j] and bj[c] == 0:
                    self.forced -= self.size[j]
        for c, x in counts.items():
            self.remaining[c] += x
            if c != a:
                self.E[a][c] -= x
                self.diff[a] -= x
                self.diff[c] += x
                self.m -= x
        self.assigned[i] = False
        self.counts[i] = None
        if self.block[i][a]:
            self.forced += s

    def _lower_bound(self) -> int:
        if self.mode == "fix":
            return self.m + self.forced
        if self.mode == "feasible":
            return 0
        imb = sum(abs(x) for x in self.diff)
        future = max(self.forced, (imb + 1) // 2)
        return (self.m + future + 1) // 2

    def _leaf_cost(self) -> int:
        if self.mode == "fix":
            return self.m
        if self.mode == "feasible":
            return 0
        return ExchangeDigraph(tuple(tuple(row) for row in self.E)).swap_distance()

    # search ----------------------------------------------------------------

    def _options(self, i: int):
        a, s = self.cur[i], self.size[i]
        r = self.g.r
        equal = self.mode != "fix"
        allowed = [c for c in range(r) if not self.block[i][c] and (not equal or self.remaining[c] > 0)]
        opts = []
        for vec in _count_vectors(s, allowed):
            if equal and any(x > self.remaining[c] for c, x in vec.items()):
                continue
            opts.append((s - vec.get(a, 0), len(vec), sorted(vec.items()), vec))
        opts.sort(key=lambda t: (t[0], t[1], t[2]))
        return [o[3] for o in opts]

    def _feasible_capacity(self, depth: int) -> bool:
        if self.mode == "fix":
            return True
        r = self.g.r
        room = [0] * r
        for j in self.order[depth:]:
            bj = self.block[j]
            for c in range(r):
                if not bj[c]:
                    room[c] += self.size[j]
        return all(self.remaining[c] <= room[c] for c in range(r))

    def run(self) -> bool:
        root_lb = self._lower_bound()
        order = self.order
        K = len(order)

        def rec(depth: int) -> bool:
            if depth == K:
                cost = self._leaf_cost()
                if cost < self.best:
                    self.best = cost
                    self.best_counts = [dict(c) for c in self.counts]
                    return self.mode == "feasible" or cost <= root_lb
                return False
            i = order[depth]
            for vec in self._options(i):
                self._assign(i, vec)
                if self._lower_bound() < self.best and self._feasible_capacity(depth + 1):
                    if rec(depth + 1):
                        self._unassign(i)
                        return True
                self._unassign(i)
            return False

        rec(0)
        return self.best_counts is not None

    def coloring(self) -> list[int]:
        assert self.best_counts is not None
        out = list(self.g.coloring)
        for i, vec in enumerate(self.best_counts):
            a = self.cur[i]
            keep = vec.get(a, 0)
            ms = self.members[i]
            colors = [a] * keep
            for c in sorted(vec):
                if c != a:
                    colors.extend([c] * vec[c])
            for v, c in zip(ms, colors):
                out[v] = c
        return out


# ---------------------------------------------------------------------------
# public solvers


def fix_optimum(
    g: ColoredGraph, k: int | None = None, bound: int | None = None, cap: int | None = SEARCH_CAP
) -> SolveResult:
    """Minimum number of recolorings making ``g`` properly ``r``-colored.

    This is the minimum Hamming distance from the current coloring to a proper
    ``r``-coloring. With ``bound`` set, solutions costing more are not
    searched for; if none is found the optimum is reported as ``None``.
    """
    _check_cap(g, cap, "fix_optimum")
    search = _ClassSearch(g, "fix", bound)
    if not search.run():
        optimum = UNREACHABLE if bound is None else None
        return SolveResult(optimum, _decide(optimum, k) if k is not None else None)
    target = search.coloring()
    moves = tuple(Recolor(v, c) for v, (a, c) in enumerate(zip(g.coloring, target)) if a != c)
    optimum = len(moves)
    return SolveResult(optimum, _decide(optimum, k), Certificate(moves))


def fix_branch(g: ColoredGraph, k: int) -> SolveResult:
    """Decide whether ``k`` recolorings suffice by bounded-depth branching.

    Takes the lexicographically smallest monochromatic edge ``uv`` and
    branches on recoloring ``u``, then ``v``, to every other color in
    ascending order. Depths are tried in increasing order, so a returned
    certificate is shortest.
    """
    r = g.r
    col = list(g.coloring)
    edges = g.edges

    def first_conflict():
        for u, v in edges:
            if col[u] == col[v]:
                return u, v
        return None

    def dfs(depth: int):
        e = first_conflict()
        if e is None:
            return []
        if depth == 0:
            return None
        for w in e:
            old = col[w]
            for c in range(r):
                if c == old:
                    continue
                col[w] = c
                rest = dfs(depth - 1)
                col[w] = old
                if rest is not None:
                    return [Recolor(w, c)] + rest
        return None

    for depth in range(k + 1):
        moves = dfs(depth)
        if moves is not None:
            return SolveResult(depth, True, Certificate(tuple(moves)))
    return SolveResult(None, False)


def swap_optimum(
    g: ColoredGraph, k: int | None = None, bound: int | None = None, cap: int | None = SEARCH_CAP
) -> SolveResult:
    """Minimum number of swaps making ``g`` properly colored.

    Minimizes the swap distance over proper colorings with the same
    color-class sizes; swaps cannot change those sizes, so the optimum is
    :data:`UNREACHABLE` when no such coloring exists.
    """
    _check_cap(g, cap, "swap_optimum")
    search = _ClassSearch(g, "swap", bound)
    if not search.run():
        optimum = UNREACHABLE if bound is None else None
        return SolveResult(optimum, _decide(optimum, k) if k is not None else None)
    target = search.coloring()
    moves = _swaps_realizing(g.coloring, target, g.r)
    return SolveResult(len(moves), _decide(len(moves), k), Certificate(tuple(moves)))


def proper_coloring_with_sizes(g: ColoredGraph, cap: int | None = SEARCH_CAP) -> list[int] | None:
    """Some proper coloring with the same color-class sizes as ``g``, or ``None``."""
    _check_cap(g, cap, "proper_coloring_with_sizes")
    search = _ClassSearch(g, "feasible")
    return search.coloring() if search.run() else None


def adjacent_swap_optimum(g: ColoredGraph, k: int | None = None, cap: int | None = BFS_CAP) -> SolveResult:
    """Shortest repair when every swap must be across an edge.

    Breadth-first search over coloring states.
    """
    _check_cap(g, cap, "adjacent_swap_optimum")
    start = g.coloring
    if is_proper(g):
        return SolveResult(0, _decide(0, k), Certificate(()))
    edges = [(u, v) for u, v in g.edges]
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, int]] | None] = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            for u, v in edges:
                if state[u] == state[v]:
                    continue
                s = list(state)
                s[u], s[v] = s[v], s[u]
                new = tuple(s)
                if new in parent:
                    continue
                parent[new] = (state, (u, v))
                if all(new[a] != new[b] for a, b in edges):
                    moves = []
                    cur = new
                    while parent[cur] is not None:
                        prev, mv = parent[cur]
                        moves.append(Swap(*mv))
                        cur = prev
                    moves.reverse()
                    return SolveResult(len(moves), _decide(len(moves), k), Certificate(tuple(moves)))
                nxt.append(new)
        frontier = nxt
    return SolveResult(UNREACHABLE, _decide(UNREACHABLE, k))


class PromiseCheck(NamedTuple):
    holds: bool
    diagnosis: str

    def __bool__(self) -> bool:
        return self.holds


def promise_check(inst: RepairInstance | ColoredGraph, cap: int | None = SEARCH_CAP) -> PromiseCheck:
    """Check that chi(G) = r and some proper r-coloring has the same class sizes."""
    g = inst.graph if isinstance(inst, RepairInstance) else inst
    chi = chromatic_number(g, cap=cap)
    if chi != g.r:
        return PromiseCheck(False, f"chromatic number is {chi}, not r={g.r}")
    sizes = color_class_sizes(g)
    if proper_coloring_with_sizes(g, cap=cap) is None:
        return PromiseCheck(False, f"no proper {g.r}-coloring has color-class sizes {sizes}")
    return PromiseCheck(True, f"chromatic number {chi}; class sizes {sizes} are attainable")


def solve(inst: RepairInstance, mode: str = "auto", cap: int | None = None) -> SolveResult:
    """Run the solver matching ``inst``'s variant.

    ``mode`` is ``auto`` (coloring search limited to the budget, so the
    optimum is only reported when it is at most ``k``), ``brute`` (unbounded
    coloring search), ``branch`` (bounded branching, recoloring only) or
    ``bfs-oracle`` (state-space BFS).
    """
    g, k = inst.graph, inst.k
    if mode == "bfs-oracle":
        from colorfix.verify.oracles import bfs_optimum

        res = bfs_optimum(g, inst.variant, adjacent_only=inst.adjacent_only, cap=cap or BFS_CAP)
        return SolveResult(res.optimum, _decide(res.optimum, k), res.certificate)
    if inst.adjacent_only:
        if mode not in ("auto", "brute"):
            raise ValueError(f"mode {mode!r} does not support adjacent-only swaps")
        return adjacent_swap_optimum(g, k, cap=cap or BFS_CAP)
    if inst.variant == "fix":
        if mode == "branch":
            return fix_branch(g, k)
        if mode in ("auto", "brute"):
            return fix_optimum(g, k, bound=k if mode == "auto" else None, cap=cap or SEARCH_CAP)
    else:
        if mode in ("auto", "brute"):
            return swap_optimum(g, k, bound=k if mode == "auto" else None, cap=cap or SEARCH_CAP)
    raise ValueError(f"mode {mode!r} is not available for the {inst.variant} variant")
