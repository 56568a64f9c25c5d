"""Brute-force oracles.

Everything here is deliberately naive: plain enumeration or breadth-first
search, sharing no code with the solvers it is used to check.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterator, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix

from colorfix.errors import SearchCapExceeded, ValidationError
from colorfix.graph import Certificate, ColoredGraph, Graph, Recolor, Swap
from colorfix.reductions.sources import Cnf3, IndSetInstance, PrExtInstance
from colorfix.solvers import UNREACHABLE, SolveResult

ORACLE_CAP = 20


def _cap(n: int, cap: int | None, who: str) -> None:
    if cap is not None and n > cap:
        raise SearchCapExceeded(f"{who}: n={n} exceeds cap {cap}")


def _proper(edges, col) -> bool:
    return all(col[u] != col[v] for u, v in edges)


def all_colorings(n: int, r: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(r), repeat=n)


def proper_colorings(g: Graph, r: int) -> list[tuple[int, ...]]:
    """Every proper ``r``-coloring of ``g``, by plain enumeration."""
    return [c for c in all_colorings(g.n, r) if _proper(g.edges, c)]


def min_hamming(g: ColoredGraph):
    """Minimum Hamming distance from ``g.coloring`` to a proper coloring."""
    best = None
    for c in proper_colorings(g, g.r):
        d = sum(a != b for a, b in zip(c, g.coloring))
        if best is None or d < best:
            best = d
    return UNREACHABLE if best is None else best


def fix_optimum_milp(g: ColoredGraph):
    """Minimum Hamming distance to a proper coloring as a 0/1 program (HiGHS via scipy).

    Independent of the combinatorial solvers; used where enumeration is out of reach.
    """
    n, r = g.n, g.r
    idx = lambda v, c: v * r + c  # noqa: E731
    rows, cols, lo, hi = [], [], [], []
    row = 0
    for v in range(n):
        for c in range(r):
            rows.append(row)
            cols.append(idx(v, c))
        lo.append(1)
        hi.append(1)
        row += 1
    for u, v in g.edges:
        for c in range(r):
            rows += [row, row]
            cols += [idx(u, c), idx(v, c)]
            lo.append(0)
            hi.append(1)
            row += 1
    if n == 0:
        return 0
    a = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(row, n * r))
    cost = np.ones(n * r)
    for v, c in enumerate(g.coloring):
        cost[idx(v, c)] = 0
    res = milp(
        cost,
        constraints=LinearConstraint(a, lo, hi),
        integrality=np.ones(n * r),
        bounds=Bounds(0, 1),
        options={"mip_rel_gap": 0},
    )
    if res.status == 2:
        return UNREACHABLE
    if res.status != 0:
        raise RuntimeError(f"MILP solver failed: {res.message}")
    return int(round(res.fun))


def _set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length ``n``."""
    if n == 0:
        yield []
        return
    block = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield list(block)
            return
        for b in range(top + 2):
            block[i] = b
            yield from rec(i + 1, max(top, b))

    block[0] = 0
    yield from rec(1, 0)


def chromatic_number_oracle(g: Graph) -> int:
    """Fewest blocks over all partitions of the vertices into independent sets."""
    best = g.n
    for part in _set_partitions(g.n):
        if _proper(g.edges, part):
            best = min(best, max(part, default=-1) + 1)
    return best


def swap_bfs_distances(coloring: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Swap distance from ``coloring`` to every coloring reachable by swaps."""
    start = tuple(coloring)
    n = len(start)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for u in range(n):
            for v in range(u + 1, n):
                if s[u] == s[v]:
                    continue
                t = list(s)
                t[u], t[v] = t[v], t[u]
                t = tuple(t)
                if t not in dist:
                    dist[t] = dist[s] + 1
                    queue.append(t)
    return dist


def bfs_optimum(
    g: ColoredGraph, variant: str, adjacent_only: bool = False, cap: int | None = 10
) -> SolveResult:
    """Shortest move sequence to a proper coloring by BFS over coloring states."""
    _cap(g.n, cap, "bfs_optimum")
    edges = g.edges
    start = g.coloring
    if _proper(edges, start):
        return SolveResult(0, None, Certificate(()))
    if variant == "fix":
        moves = [Recolor(v, c) for v in range(g.n) for c in range(g.r)]
    elif adjacent_only:
        moves = [Swap(u, v) for u, v in edges]
    else:
        moves = [Swap(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
    parent = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for mv in moves:
            t = list(s)
            if isinstance(mv, Recolor):
                if t[mv.vertex] == mv.color:
                    continue
                t[mv.vertex] = mv.color
            else:
                if t[mv.u] == t[mv.v]:
                    continue
                t[mv.u], t[mv.v] = t[mv.v], t[mv.u]
            t = tuple(t)
            if t in parent:
                continue
            parent[t] = (s, mv)
            if _proper(edges, t):
                path = []
                while parent[t] is not None:
                    t, mv = parent[t]
                    path.append(mv)
                path.reverse()
                return SolveResult(len(path), None, Certificate(tuple(path)))
            queue.append(t)
    return SolveResult(UNREACHABLE, None)


def oracle_prext(src: PrExtInstance, cap: int | None = ORACLE_CAP) -> bool:
    """Does the precoloring extend to a proper ``r``-coloring? Backtracking."""
    g = src.graph
    _cap(g.n, cap, "oracle_prext")
    if not src.precoloring_is_proper():
        raise ValidationError("precoloring is not proper on the precolored vertices")
    col = [-1] * g.n
    for w, c in src.precoloring:
        col[w] = c
    free = list(src.X)
    adj = g.adjacency

    def rec(i: int) -> bool:
        if i == len(free):
            return True
        v = free[i]
        for c in range(src.r):
            if all(col[w] != c for w in adj[v]):
                col[v] = c
                if rec(i + 1):
                    return True
                col[v] = -1
        return False

    return rec(0)


def independent_set_witness(src: IndSetInstance, cap: int | None = ORACLE_CAP) -> tuple[int, ...] | None:
    """Lexicographically first independent set of size ``k``, or ``None``."""
    g = src.graph
    _cap(g.n, cap, "oracle_indset")
    for combo in itertools.combinations(range(g.n), src.k):
        if all(not g.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
            return combo
    return None


def oracle_indset(src: IndSetInstance, cap: int | None = ORACLE_CAP) -> bool:
    return independent_set_witness(src, cap) is not None


def satisfying_assignment(phi: Cnf3, cap: int | None = ORACLE_CAP) -> tuple[bool, ...] | None:
    """First satisfying assignment in truth-table order, or ``None``."""
    _cap(phi.n, cap, "oracle_3sat")
    for bits in itertools.product((False, True), repeat=phi.n):
        if phi.satisfied_by(bits):
            return bits
    return None


def oracle_3sat(phi: Cnf3, cap: int | None = ORACLE_CAP) -> bool:
    return satisfying_assignment(phi, cap) is not None
