"""Exhaustive check of the clause gadget's two forcing properties."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from colorfix.reductions.crosscomp import (
    FALSE,
    GADGET_TABLE,
    R_INDEX,
    TRUE,
    gadget_colorings,
    search_gadget_table,
)


@dataclass
class GadgetReport:
    """Per boundary: number of proper gadget colorings and the colors ``r`` can take."""

    boundaries: dict[tuple[int, ...], tuple[int, frozenset[int]]] = field(default_factory=dict)
    p1: bool = False
    p2: bool = False
    table_ok: bool = False

    @property
    def ok(self) -> bool:
        return self.p1 and self.p2 and self.table_ok

    def lines(self) -> list[str]:
        out = []
        for bd, (count, r_colors) in sorted(self.boundaries.items()):
            out.append(f"boundary {bd}: {count} colorings, r in {sorted(r_colors)}")
        out.append(f"P1 {'pass' if self.p1 else 'FAIL'}; P2 {'pass' if self.p2 else 'FAIL'}; "
                   f"table {'pass' if self.table_ok else 'FAIL'}")
        return out


def verify_gadget_p1_p2() -> GadgetReport:
    """Enumerate the isolated gadget under all 81 boundaries.

    P1: with every slot facing color 0, ``r`` is always 0.
    P2: with slots facing colors in {0, 1}, at least one 1, some coloring has ``r != 0``.
    Boundaries with a color-2 neighbor are recorded only.
    """
    report = GadgetReport()
    for bd in itertools.product(range(3), repeat=4):
        cols = list(gadget_colorings(bd))
        report.boundaries[bd] = (len(cols), frozenset(c[R_INDEX] for c in cols))
    _, r_forced = report.boundaries[(FALSE,) * 4]
    report.p1 = r_forced == frozenset({FALSE})
    report.p2 = all(
        report.boundaries[bd][1] - {FALSE}
        for bd in itertools.product((FALSE, TRUE), repeat=4)
        if TRUE in bd
    )
    report.table_ok = search_gadget_table() == GADGET_TABLE
    return report
