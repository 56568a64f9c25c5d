"""Composition of ``t`` 3-SAT formulas into one 3-Fix instance.

Colors: 0 is "false" (and the color every pendant pins against), 1 is
"true", 2 is the selector color. Each formula ``h`` gets

* a variable edge ``x[i]`` (1) -- ``nx[i]`` (0) per variable and an extra
  variable vertex ``u`` (1) that is added to every clause, so all formulas
  start out satisfied by the all-true assignment;
* a selector ``w`` (2) adjacent to all its variable vertices and pinned by
  ``k+1`` pendants of colors 0 and 1 each;
* one clause gadget per clause (see :data:`GADGET_VERTICES`).

A spread gadget (binary tree of triangles) links the formulas: its root
carries ``k+1`` pendants of its own color, the single initial conflict,
and leaf ``h`` forms a triangle with ``u`` and ``w`` of formula ``h``.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Sequence

from colorfix.errors import ValidationError
from colorfix.reductions.sources import Cnf3Batch
from colorfix.reductions.trace import Builder, Reduction, ReductionTrace

FALSE, TRUE, SELECT = 0, 1, 2

GADGET_VERTICES = ("a", "b", "c", "d", "y1", "y2", "y3", "y4", "y5", "r")
GADGET_EDGES = (
    (0, 1), (0, 4), (1, 4),      # a b y1
    (2, 3), (2, 5), (3, 5),      # c d y2
    (6, 7), (6, 9), (7, 9),      # y3 y4 r
    (4, 7), (5, 6), (8, 9),      # y1-y4, y2-y3, y5-r
)
#: Literal slots; slot ``d`` always holds the extra variable ``u``.
SLOTS = (0, 1, 2, 3)
R_INDEX = 9

#: Initial gadget coloring keyed by the colors of the variable vertices
#: attached to slots a, b, c under the all-true assignment (slot d sees
#: ``u``, color 1). Produced by :func:`search_gadget_table`.
GADGET_TABLE: dict[tuple[int, int, int], tuple[int, ...]] = {
    (0, 0, 0): (1, 2, 1, 0, 0, 2, 0, 1, 0, 2),
    (0, 0, 1): (1, 2, 0, 2, 0, 1, 0, 1, 0, 2),
    (0, 1, 0): (1, 0, 1, 0, 2, 2, 0, 1, 0, 2),
    (0, 1, 1): (1, 0, 0, 2, 2, 1, 0, 1, 0, 2),
    (1, 0, 0): (0, 1, 1, 0, 2, 2, 0, 1, 0, 2),
    (1, 0, 1): (0, 1, 0, 2, 2, 1, 0, 1, 0, 2),
    (1, 1, 0): (0, 2, 1, 0, 1, 2, 0, 2, 0, 1),
    (1, 1, 1): (0, 2, 0, 2, 1, 1, 0, 2, 0, 1),
}


def gadget_colorings(boundary: Sequence[int], r: int = 3):
    """Yield every proper coloring of one isolated clause gadget.

    ``boundary[s]`` is the color of the variable vertex attached to slot
    ``s``; a slot must differ from it. Enumerated in lexicographic order.
    """
    nbrs: list[list[int]] = [[] for _ in GADGET_VERTICES]
    for x, y in GADGET_EDGES:
        nbrs[max(x, y)].append(min(x, y))
    col = [0] * len(GADGET_VERTICES)

    def rec(i: int):
        if i == len(col):
            yield tuple(col)
            return
        for c in range(r):
            if i in SLOTS and c == boundary[i]:
                continue
            if any(col[j] == c for j in nbrs[i]):
                continue
            col[i] = c
            yield from rec(i + 1)

    yield from rec(0)


def _admissible(coloring: Sequence[int]) -> bool:
    # r is pinned by FALSE pendants; y5 hangs off r only
    return coloring[R_INDEX] != FALSE and coloring[8] != coloring[R_INDEX]


def search_gadget_table() -> dict[tuple[int, int, int], tuple[int, ...]]:
    """First admissible gadget coloring for each literal sign pattern."""
    table = {}
    for abc in itertools.product((FALSE, TRUE), repeat=3):
        boundary = abc + (TRUE,)
        table[abc] = next(c for c in gadget_colorings(boundary) if _admissible(c))
    return table


@lru_cache(maxsize=None)
def gadget_repair(initial: tuple[int, ...], boundary: tuple[int, ...]) -> tuple[int, ...]:
    """Closest admissible gadget coloring to ``initial`` under ``boundary``."""
    best = None
    for c in gadget_colorings(boundary):
        if not _admissible(c):
            continue
        d = sum(x != y for x, y in zip(c, initial))
        if best is None or d < best[0]:
            best = (d, c)
    if best is None:
        raise ValidationError(f"no admissible gadget coloring for boundary {boundary}")
    return best[1]


def crosscompose_budget(t: int, n: int, m: int) -> int:
    return 2 * int(math.log2(t)) + 2 * n + 9 * m


def crosscompose_vertex_count(t: int, n: int, m: int, r: int = 3) -> int:
    k = crosscompose_budget(t, n, m)
    spread = 3 * (t - 1) + t + (k + 1)
    per_formula = 2 * n + 2 + 2 * (k + 1) + m * (len(GADGET_VERTICES) + k + 1)
    base = spread + t * per_formula
    return base * (1 + (r - 3) * (k + 1))


def padded_clause(clause: Sequence[int]) -> tuple[int, int, int]:
    lits = list(clause)
    while len(lits) < 3:
        lits.append(lits[-1])
    return tuple(lits)


def _entry_label(p: int, t: int) -> str:
    return f"spread.tri[{p}].top" if p < t else f"leaf[{p - t}]"


def spread_root(trace: ReductionTrace, t: int) -> int:
    return trace.one(_entry_label(1, t))


def cross_compose(batch: Cnf3Batch, r: int = 3) -> Reduction:
    """Compose the batch into one r-Fix instance with budget ``2 log2 t + 2n + 9m``.

    For ``r > 3`` every vertex of the 3-color construction additionally gets
    ``k+1`` pendants in each color ``3..r-1``.
    """
    t, n, m = batch.t, batch.n, batch.m
    if t & (t - 1):
        raise ValueError(f"batch size t={t} is not a power of two")
    if r < 3:
        raise ValueError("cross_compose needs r >= 3")
    k = crosscompose_budget(t, n, m)
    b = Builder(r)

    tri = {}
    for p in range(1, t):
        tri[p] = (
            b.add(f"spread.tri[{p}].top", 0),
            b.add(f"spread.tri[{p}].left", 2),
            b.add(f"spread.tri[{p}].right", 1),
        )
        top, left, right = tri[p]
        b.edge(top, left)
        b.edge(top, right)
        b.edge(left, right)
    leaves = [b.add(f"leaf[{h}]", 0) for h in range(t)]

    def entry(p: int) -> int:
        return tri[p][0] if p < t else leaves[p - t]

    for p in range(2, 2 * t):
        side = tri[p // 2][1] if p % 2 == 0 else tri[p // 2][2]
        b.edge(side, entry(p))
    b.pendants("spread.pendants", entry(1), [0] * (k + 1))

    for h, phi in enumerate(batch.formulas):
        lit_vertex = {}
        for i in range(1, n + 1):
            x = b.add(f"F[{h}].x[{i}]", TRUE)
            nx = b.add(f"F[{h}].nx[{i}]", FALSE)
            b.edge(x, nx)
            lit_vertex[i], lit_vertex[-i] = x, nx
        u = b.add(f"F[{h}].u", TRUE)
        w = b.add(f"F[{h}].w", SELECT)
        for v in list(lit_vertex.values()) + [u]:
            b.edge(w, v)
        b.pendants(f"F[{h}].w.pendants", w, [FALSE] * (k + 1) + [TRUE] * (k + 1))
        b.edge(leaves[h], u)
        b.edge(leaves[h], w)
        for j, clause in enumerate(phi.clauses):
            lits = padded_clause(clause)
            key = tuple(TRUE if l > 0 else FALSE for l in lits)
            ids = [b.add(f"H[{h},{j}].{name}", c) for name, c in zip(GADGET_VERTICES, GADGET_TABLE[key])]
            for x, y in GADGET_EDGES:
                b.edge(ids[x], ids[y])
            for slot, lit in zip(SLOTS, lits):
                b.edge(ids[slot], lit_vertex[lit])
            b.edge(ids[3], u)
            b.pendants(f"H[{h},{j}].pendants", ids[R_INDEX], [FALSE] * (k + 1))

    if r > 3:
        base = b.n
        extra = [c for c in range(3, r) for _ in range(k + 1)]
        for v in range(base):
            b.pendants(f"lift[{v}]", v, extra)

    red = b.finish(k, "fix")
    assert red.graph.n == crosscompose_vertex_count(t, n, m, r)
    return red
