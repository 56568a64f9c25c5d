"""Precoloring extension to recoloring / swap repair.

The graph is kept and every precolored vertex ``w`` is pinned by
``(r-1)(k+1)`` pendants, ``k+1`` in each color other than ``c(w)``, where
the budget ``k`` is the number of uncolored vertices. Uncolored vertices
start at color 0.
"""

from __future__ import annotations

from colorfix.reductions.sources import PrExtInstance
from colorfix.reductions.trace import Builder, Reduction


def _pinned(src: PrExtInstance) -> tuple[Builder, int]:
    g, r = src.graph, src.r
    colors = src.colors
    k = len(src.X)
    b = Builder(r)
    for v in range(g.n):
        b.add(f"v[{v}]", colors.get(v, 0))
    for u, v in g.edges:
        b.edge(u, v)
    for w, cw in src.precoloring:
        pend = [c for c in range(r) if c != cw for _ in range(k + 1)]
        b.pendants(f"P[{w}]", w, pend)
    return b, k


def prext_to_fix(src: PrExtInstance) -> Reduction:
    """Recoloring instance that is YES iff the precoloring extends.

    Vertex count: ``n + |W| (r-1)(k+1)`` with ``k = |V \\ W|``.
    """
    b, k = _pinned(src)
    red = b.finish(k, "fix")
    assert red.graph.n == src.graph.n + len(src.W) * (src.r - 1) * (k + 1)
    return red


def prext_to_swap(src: PrExtInstance) -> Reduction:
    """Swap instance: the recoloring instance plus ``k`` isolated vertices of each color.

    The isolated vertices give each uncolored vertex one swap partner per
    color. Vertex count: ``n + |W| (r-1)(k+1) + r k``.
    """
    b, k = _pinned(src)
    for c in range(src.r):
        b.add_many(f"iso[{c}]", [c] * k)
    red = b.finish(k, "swap")
    assert red.graph.n == src.graph.n + len(src.W) * (src.r - 1) * (k + 1) + src.r * k
    return red
