"""Instances of the source problems the reductions start from."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from colorfix.errors import BatchShapeMismatch, ValidationError
from colorfix.graph import Graph


@dataclass(frozen=True)
class PrExtInstance:
    """Precoloring extension: extend the colors fixed on ``W`` to all of ``graph``.

    ``precoloring`` is stored as sorted ``(vertex, color)`` pairs; a mapping is
    accepted on construction.
    """

    graph: Graph
    r: int
    precoloring: tuple[tuple[int, int], ...] = ()
    bipartite_planar_expected: bool = False
    degree_one_precolored: bool = False

    def __post_init__(self) -> None:
        pre = self.precoloring
        items = pre.items() if isinstance(pre, Mapping) else pre
        pairs = tuple(sorted((int(w), int(c)) for w, c in items))
        seen = set()
        for w, c in pairs:
            if not 0 <= w < self.graph.n:
                raise ValidationError(f"precolored vertex {w} is not in the graph")
            if w in seen:
                raise ValidationError(f"vertex {w} precolored twice")
            if not 0 <= c < self.r:
                raise ValidationError(f"precolor {c} of vertex {w} outside 0..{self.r - 1}")
            seen.add(w)
        if self.r < 1:
            raise ValidationError("r must be at least 1")
        object.__setattr__(self, "precoloring", pairs)

    @property
    def W(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.precoloring)

    @property
    def X(self) -> tuple[int, ...]:
        pre = set(self.W)
        return tuple(v for v in range(self.graph.n) if v not in pre)

    @property
    def colors(self) -> dict[int, int]:
        return dict(self.precoloring)

    def precoloring_is_proper(self) -> bool:
        col = self.colors
        return all(
            not (u in col and v in col and col[u] == col[v]) for u, v in self.graph.edges
        )


@dataclass(frozen=True)
class IndSetInstance:
    """Does ``graph`` contain ``k`` pairwise non-adjacent vertices?"""

    graph: Graph
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.graph.n:
            raise ValidationError(f"k={self.k} must lie in 0..n={self.graph.n}")


@dataclass(frozen=True)
class Cnf3:
    """A CNF formula over variables ``1..n``; literals are signed integers."""

    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(x) for x in cl) for cl in self.clauses)
        for j, cl in enumerate(clauses):
            if not 1 <= len(cl) <= 3:
                raise ValidationError(f"clause {j} has {len(cl)} literals; expected 1..3")
            for lit in cl:
                if lit == 0 or abs(lit) > self.n:
                    raise ValidationError(f"clause {j}: literal {lit} outside +-1..{self.n}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment) -> bool:
        """``assignment[i-1]`` is the truth value of variable ``i``."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in cl) for cl in self.clauses)


@dataclass(frozen=True)
class Cnf3Batch:
    """``t`` formulas sharing their variable and clause counts."""

    formulas: tuple[Cnf3, ...]

    def __post_init__(self) -> None:
        formulas = tuple(self.formulas)
        if not formulas:
            raise ValidationError("a batch needs at least one formula")
        n, m = formulas[0].n, formulas[0].m
        for h, f in enumerate(formulas):
            if f.n != n or f.m != m:
                raise BatchShapeMismatch(
                    f"formula {h} has n={f.n}, m={f.m}; formula 0 has n={n}, m={m}"
                )
        object.__setattr__(self, "formulas", formulas)

    @property
    def t(self) -> int:
        return len(self.formulas)

    @property
    def n(self) -> int:
        return self.formulas[0].n

    @property
    def m(self) -> int:
        return self.formulas[0].m
