"""Bipartite 3-PrExt with degree-one precolored vertices to 3-Swap-Promise / 3-Fix-Promise.

Outputs are planar whenever the source is: every added vertex is a pendant,
a pendant of a pendant, or part of one triangle hanging off a pendant.
"""

from __future__ import annotations

from colorfix.errors import NotBipartite, PrecoloredDegreeNotOne
from colorfix.graph import RepairInstance, bipartition
from colorfix.reductions.sources import PrExtInstance
from colorfix.reductions.trace import Builder, Reduction, ReductionTrace

TRIANGLE = ("tri.v", "tri.r", "tri.r'")


def planar_vertex_count(src: PrExtInstance) -> int:
    h = len(src.X)
    sides = bipartition(src.graph)
    a = set(sides[0])
    special = sum(1 for w, c in src.precoloring if _fan(w in a, c)[2])
    extra = 3 if not src.W else 2
    return src.graph.n + 2 * h + 2 * (h + 1) * len(src.W) + h * special + extra


def _fan(in_a: bool, c: int) -> tuple[int, int, bool]:
    """Colors of the s and t pendants of a precolored vertex, and whether it gets s' vertices."""
    if in_a and c != 0:
        return 0, 3 - c, True
    if not in_a and c != 1:
        return 1, ({0, 1, 2} - {1, c}).pop(), True
    return (c + 1) % 3, (c + 2) % 3, False


def _check(src: PrExtInstance) -> tuple[set[int], ...]:
    if src.r != 3:
        raise ValueError("the planar reductions are for r = 3")
    sides = bipartition(src.graph)
    if sides is None:
        raise NotBipartite("source graph has an odd cycle")
    bad = [w for w in src.W if src.graph.degree(w) != 1]
    if bad:
        raise PrecoloredDegreeNotOne(f"precolored vertices {bad} do not have degree 1")
    return set(sides[0]), set(sides[1])


def _build(src: PrExtInstance, detach: bool) -> Reduction:
    a_side, _ = _check(src)
    g = src.graph
    colors = src.colors
    h = len(src.X)
    b = Builder(3)

    for v in range(g.n):
        if v in colors:
            c = colors[v]
        else:
            nbr = sorted(colors[u] for u in g.adjacency[v] if u in colors)
            # several distinct neighbor colors cannot be avoided anyway; take the smallest
            c = nbr[0] if nbr else (0 if v in a_side else 1)
        b.add(f"v[{v}]", c)
    for u, v in g.edges:
        b.edge(u, v)

    for x in src.X:
        i = b.colors[x]
        x1 = b.add(f"x[{x}].1", (i + 1) % 3)
        x2 = b.add(f"x[{x}].2", (i + 2) % 3)
        if detach:
            b.edge(x1, x2)
        else:
            b.edge(x, x1)
            b.edge(x, x2)

    anchor = None
    for w, c in src.precoloring:
        s_col, t_col, primed = _fan(w in a_side, c)
        s = b.pendants(f"s[{w}]", w, [s_col] * (h + 1))
        t = b.pendants(f"t[{w}]", w, [t_col] * (h + 1))
        if anchor is None:
            anchor = t[0]
        if primed:
            for j in range(h):
                b.edge(s[j], b.add(f"s'[{w}]", c))

    # the triangle is emitted last so that stripping it is a truncation
    if anchor is None:
        v = b.add(TRIANGLE[0], 0)
    else:
        v = anchor
    cv = b.colors[v]
    r1 = b.add(TRIANGLE[1], (cv + 1) % 3)
    r2 = b.add(TRIANGLE[2], (cv + 2) % 3)
    b.edge(v, r1)
    b.edge(v, r2)
    b.edge(r1, r2)

    red = b.finish(h, "fix" if detach else "swap", promise=True)
    assert red.graph.n == planar_vertex_count(src)
    return red


def prext_to_planar_swap_promise(src: PrExtInstance) -> Reduction:
    """Swap instance with budget ``h = |X|`` that is YES iff the precoloring extends.

    Each uncolored ``x`` starts in the color of its precolored neighbors (or
    0 / 1 by side) and gets two pendants in the other colors to swap with.
    Each precolored ``w`` gets ``h+1`` pendants in each of two other colors.
    """
    return _build(src, detach=False)


def prext_to_planar_fix_promise(src: PrExtInstance) -> Reduction:
    """The swap construction with each ``x1, x2`` pair detached from ``x`` and joined to each other."""
    return _build(src, detach=True)


def strip_promise_bipartite(red: Reduction) -> Reduction:
    """Drop the triangle (the only odd cycle) and the promise flag."""
    inst = red.instance
    g = inst.graph
    drop = set()
    for label in TRIANGLE:
        if label in red.trace:
            drop.update(red.trace[label])
    keep = g.n - len(drop)
    assert drop == set(range(keep, g.n))
    edges = tuple(e for e in g.edges if e[1] < keep)
    graph = type(g)(keep, edges, g.r, g.coloring[:keep])
    trace = ReductionTrace({k: v for k, v in red.trace.records.items() if k not in TRIANGLE})
    trace.check_partition(keep)
    return Reduction(RepairInstance(graph, inst.k, inst.variant, False, inst.adjacent_only), trace)
