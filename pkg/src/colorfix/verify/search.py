"""Budget-bounded depth-first search over move sequences.

Used for NO-direction checks on reduction outputs that are too large for
plain state-space BFS. Two prunings:

* a lower bound from a greedy matching of the conflict edges (a recoloring
  fixes at most one matched edge, a swap at most two);
* optionally, only moves touching a conflict vertex or a neighbour of one.

The restriction is exact for recolorings (the last conflict-free state is
reached only by touching a current conflict). For swaps it is checked against
the unrestricted search on small instances, see the tests.
"""

from __future__ import annotations

from colorfix.graph import Certificate, ColoredGraph, Recolor, Swap


def _conflict_edges(edges, col) -> list[tuple[int, int]]:
    return [(u, v) for u, v in edges if col[u] == col[v]]


def _matching_size(conf) -> int:
    used = set()
    size = 0
    for u, v in conf:
        if u not in used and v not in used:
            used.update((u, v))
            size += 1
    return size


def bounded_move_search(
    g: ColoredGraph,
    variant: str,
    budget: int,
    restricted: bool = True,
    adjacent_only: bool = False,
) -> Certificate | None:
    """A shortest certificate of at most ``budget`` moves, or ``None``."""
    if variant not in ("fix", "swap"):
        raise ValueError(f"unknown variant {variant!r}")
    edges, adj, n, r = g.edges, g.adjacency, g.n, g.r
    col = list(g.coloring)
    per_move = 1 if variant == "fix" else 2
    failed: dict[tuple[int, ...], int] = {}
    path: list = []

    def candidates(conf):
        hot = set()
        for u, v in conf:
            hot.update((u, v))
        if restricted:
            for v in list(hot):
                hot.update(adj[v])
            return sorted(hot)
        return range(n)

    def moves(conf):
        if variant == "fix":
            for v in candidates(conf):
                for c in range(r):
                    if c != col[v]:
                        yield Recolor(v, c)
            return
        seen = set()
        for u in candidates(conf):
            partners = adj[u] if adjacent_only else range(n)
            for v in partners:
                if col[u] == col[v]:
                    continue
                pair = (min(u, v), max(u, v))
                if pair not in seen:
                    seen.add(pair)
                    yield Swap(*pair)

    def apply(mv):
        if isinstance(mv, Recolor):
            old = col[mv.vertex]
            col[mv.vertex] = mv.color
            return lambda: col.__setitem__(mv.vertex, old)
        col[mv.u], col[mv.v] = col[mv.v], col[mv.u]
        return lambda: apply(mv)

    def dfs(left: int) -> bool:
        conf = _conflict_edges(edges, col)
        if not conf:
            return True
        if left == 0 or -(-_matching_size(conf) // per_move) > left:
            return False
        key = tuple(col)
        if failed.get(key, -1) >= left:
            return False
        for mv in moves(conf):
            undo = apply(mv)
            path.append(mv)
            if dfs(left - 1):
                return True
            path.pop()
            undo()
        failed[key] = left
        return False

    for depth in range(budget + 1):
        if dfs(depth):
            return Certificate(tuple(path))
    return None
