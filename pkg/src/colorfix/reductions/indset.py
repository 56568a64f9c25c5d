"""Independent set to 3-coloring repair by swaps, and the lifts built on top of it."""

from __future__ import annotations

from colorfix.errors import InvalidTarget
from colorfix.graph import ColoredGraph, RepairInstance
from colorfix.reductions.sources import IndSetInstance
from colorfix.reductions.trace import Builder, Reduction, ReductionTrace


def indset_vertex_count(n: int, k: int) -> int:
    return n + 3 * k + 3 * n + 2 * (k + 1) * n + 3 * (k + 1) * n


def indset_to_3swap(src: IndSetInstance) -> Reduction:
    """Build the 3-Swap instance with budget ``2k``.

    * one vertex ``u[i]`` per source vertex, color 0;
    * ``k`` triangles ``a[j] b[j] c[j]`` colored 2, 1, 1 (the ``k`` conflicts);
    * per source vertex a triangle ``C[i]`` colored 0, 1, 2 whose ``a``
      corner carries ``k+1`` pendants of colors 1 and 2 each, with
      ``u[i]`` joined to ``C[i].b`` and ``u[j]`` joined to ``C[i].c`` for each
      source edge ``ij`` with ``j > i``;
    * per source vertex ``k+1`` triangles ``T[i,j]`` colored 2, 1, 0 whose
      ``a`` corner is joined to ``u[i]``.
    """
    g, k = src.graph, src.k
    if k < 1:
        raise ValueError("indset_to_3swap needs k >= 1")
    b = Builder(3)
    u = [b.add(f"u[{i}]", 0) for i in range(g.n)]
    for j in range(k):
        tri = [b.add(f"a[{j}]", 2), b.add(f"b[{j}]", 1), b.add(f"c[{j}]", 1)]
        _triangle(b, tri)
    cb, cc = [], []
    for i in range(g.n):
        tri = [b.add(f"C[{i}].a", 0), b.add(f"C[{i}].b", 1), b.add(f"C[{i}].c", 2)]
        _triangle(b, tri)
        b.pendants(f"C[{i}].pendants", tri[0], [1] * (k + 1) + [2] * (k + 1))
        b.edge(u[i], tri[1])
        cb.append(tri[1])
        cc.append(tri[2])
    for i, j in g.edges:
        b.edge(u[j], cc[i])
    for i in range(g.n):
        for j in range(k + 1):
            tri = [b.add(f"T[{i},{j}].a", 2), b.add(f"T[{i},{j}].b", 1), b.add(f"T[{i},{j}].c", 0)]
            _triangle(b, tri)
            b.edge(u[i], tri[0])
    red = b.finish(2 * k, "swap")
    assert red.graph.n == indset_vertex_count(g.n, k)
    return red


def _triangle(b: Builder, tri) -> None:
    x, y, z = tri
    b.edge(x, y)
    b.edge(y, z)
    b.edge(x, z)


def _as_reduction(inst: RepairInstance | Reduction) -> Reduction:
    if isinstance(inst, Reduction):
        return inst
    return Reduction(inst, ReductionTrace({"base": tuple(range(inst.graph.n))}))


def _extend(red: Reduction, r: int) -> Builder:
    g = red.graph
    b = Builder(r)
    b.colors = list(g.coloring)
    b.edges = list(g.edges)
    b.records = {k: list(v) for k, v in red.trace.records.items()}
    return b


def lift_to_r(inst: RepairInstance | Reduction, r_new: int) -> Reduction:
    """Add a disjoint properly colored ``r_new``-clique and raise ``r`` to ``r_new``.

    Meant for swap instances: the clique holds the only vertex of each new
    color, so spending a new color elsewhere breaks the clique. For
    recoloring instances the new colors are free and the answer can change.
    """
    red = _as_reduction(inst)
    old = red.instance
    if r_new < 3 or r_new <= old.graph.r:
        raise InvalidTarget(f"cannot lift from r={old.graph.r} to r={r_new}")
    b = _extend(red, r_new)
    clique = b.add_many("lift.clique", range(r_new))
    for i, x in enumerate(clique):
        for y in clique[i + 1:]:
            b.edge(x, y)
    g = b.graph()
    new = RepairInstance(g, old.k, old.variant, old.promise, old.adjacent_only)
    trace = b.trace()
    trace.check_partition(g.n)
    return Reduction(new, trace)


def promise_augment(inst: RepairInstance | Reduction, n_src: int, k_src: int) -> Reduction:
    """Add ``n_src`` double stars and a colored triangle so the promise holds.

    Each double star has a center ``s`` (color 0), ``k_src+1`` neighbours
    ``q`` (color 1) and one further vertex ``q'`` (color 2) behind each ``q``.
    Adds ``n_src (2 k_src + 3) + 3`` vertices.
    """
    red = _as_reduction(inst)
    old = red.instance
    r = old.graph.r
    b = _extend(red, r)
    for i in range(n_src):
        s = b.add(f"S[{i}].s", 0)
        for _ in range(k_src + 1):
            q = b.add(f"S[{i}].q", 1)
            b.edge(s, q)
            b.edge(q, b.add(f"S[{i}].q'", 2))
    clique = b.add_many("promise.clique", range(r))
    for i, x in enumerate(clique):
        for y in clique[i + 1:]:
            b.edge(x, y)
    g = b.graph()
    assert g.n == old.graph.n + n_src * (2 * k_src + 3) + r
    new = RepairInstance(g, old.k, old.variant, True, old.adjacent_only)
    trace = b.trace()
    trace.check_partition(g.n)
    return Reduction(new, trace)
