"""Constructive certificates for YES instances, replayed from source witnesses."""

from __future__ import annotations

import itertools
from typing import Sequence

from colorfix.errors import WitnessInvalid
from colorfix.graph import Certificate, Recolor, Swap
from colorfix.reductions.crosscomp import (
    FALSE,
    GADGET_VERTICES,
    TRUE,
    gadget_repair,
    padded_clause,
)
from colorfix.reductions.sources import Cnf3Batch, IndSetInstance
from colorfix.reductions.trace import Reduction


def replay_indset_certificate(src: IndSetInstance, witness: Sequence[int], red: Reduction) -> Certificate:
    """The ``2k`` swaps selecting ``witness``.

    Triangle ``j`` trades its second color-1 corner with ``u[i_j]``; each
    selected ``C[i]`` then swaps its ``b`` and ``c`` corners.
    """
    chosen = sorted(set(witness))
    g = src.graph
    if len(chosen) != src.k or len(witness) != src.k:
        raise WitnessInvalid(f"witness has {len(set(witness))} distinct vertices, expected {src.k}")
    if any(not 0 <= v < g.n for v in chosen):
        raise WitnessInvalid("witness vertex out of range")
    for u, v in itertools.combinations(chosen, 2):
        if g.has_edge(u, v):
            raise WitnessInvalid(f"witness vertices {u} and {v} are adjacent")
    tr = red.trace
    moves = [Swap(tr.one(f"c[{j}]"), tr.one(f"u[{i}]")) for j, i in enumerate(chosen)]
    moves += [Swap(tr.one(f"C[{i}].b"), tr.one(f"C[{i}].c")) for i in chosen]
    return Certificate(tuple(moves))


def replay_crosscompose_certificate(
    batch: Cnf3Batch, s: int, assignment: Sequence[bool], red: Reduction
) -> Certificate:
    """Recolorings that select formula ``s`` and set its variables to ``assignment``.

    The root conflict is pushed down the tree path to leaf ``s`` (two
    recolorings per level), the leaf takes color 1 and ``u`` color 0, the
    false variables flip, and each clause gadget of ``s`` moves to its nearest
    admissible coloring.
    """
    if not 0 <= s < batch.t:
        raise WitnessInvalid(f"formula index {s} out of range")
    phi = batch.formulas[s]
    if len(assignment) != phi.n or not phi.satisfied_by(assignment):
        raise WitnessInvalid(f"assignment does not satisfy formula {s}")
    tr = red.trace
    col = red.graph.coloring
    moves = []
    p = batch.t + s
    while p > 1:
        parent = p // 2
        side = tr.one(f"spread.tri[{parent}].{'left' if p % 2 == 0 else 'right'}")
        top = tr.one(f"spread.tri[{parent}].top")
        moves.append(Recolor(side, 0))
        moves.append(Recolor(top, col[side]))
        p = parent
    moves.append(Recolor(tr.one(f"leaf[{s}]"), TRUE))
    moves.append(Recolor(tr.one(f"F[{s}].u"), FALSE))
    value = {}
    for i, val in enumerate(assignment, start=1):
        value[i], value[-i] = (TRUE, FALSE) if val else (FALSE, TRUE)
        if not val:
            moves.append(Recolor(tr.one(f"F[{s}].x[{i}]"), FALSE))
            moves.append(Recolor(tr.one(f"F[{s}].nx[{i}]"), TRUE))
    for j, clause in enumerate(phi.clauses):
        boundary = tuple(value[lit] for lit in padded_clause(clause)) + (FALSE,)
        ids = [tr.one(f"H[{s},{j}].{name}") for name in GADGET_VERTICES]
        initial = tuple(col[v] for v in ids)
        target = gadget_repair(initial, boundary)
        moves.extend(Recolor(v, c) for v, a, c in zip(ids, initial, target) if a != c)
    return Certificate(tuple(moves))
