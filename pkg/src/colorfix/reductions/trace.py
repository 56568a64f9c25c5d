"""Reduction traces and the builder every generator uses to emit vertices."""

from __future__ import annotations

from dataclasses import dataclass, field

from colorfix.errors import ValidationError
from colorfix.graph import ColoredGraph, RepairInstance


@dataclass(frozen=True)
class ReductionTrace:
    """Labelled groups of emitted vertex ids.

    Every vertex of the emitted graph belongs to exactly one record.
    """

    records: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def __getitem__(self, label: str) -> tuple[int, ...]:
        return self.records[label]

    def one(self, label: str) -> int:
        (v,) = self.records[label]
        return v

    def __contains__(self, label: str) -> bool:
        return label in self.records

    def label_of(self, vertex: int) -> str:
        for label, ids in self.records.items():
            if vertex in ids:
                return label
        raise KeyError(vertex)

    def check_partition(self, n: int) -> None:
        seen: dict[int, str] = {}
        for label, ids in self.records.items():
            for v in ids:
                if v in seen:
                    raise ValidationError(f"vertex {v} is in both {seen[v]!r} and {label!r}")
                seen[v] = label
        if set(seen) != set(range(n)):
            missing = sorted(set(range(n)) - set(seen))[:5]
            raise ValidationError(f"trace does not cover vertices {missing}...")


@dataclass(frozen=True)
class Reduction:
    """A generated repair instance and the trace of where its vertices came from."""

    instance: RepairInstance
    trace: ReductionTrace

    @property
    def graph(self) -> ColoredGraph:
        return self.instance.graph


class Builder:
    """Accumulates vertices, colors, edges and trace records."""

    def __init__(self, r: int):
        self.r = r
        self.colors: list[int] = []
        self.edges: list[tuple[int, int]] = []
        self.records: dict[str, list[int]] = {}

    @property
    def n(self) -> int:
        return len(self.colors)

    def add(self, label: str, color: int) -> int:
        v = len(self.colors)
        self.colors.append(color)
        self.records.setdefault(label, []).append(v)
        return v

    def add_many(self, label: str, colors) -> list[int]:
        return [self.add(label, c) for c in colors]

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def pendants(self, label: str, anchor: int, colors) -> list[int]:
        vs = self.add_many(label, colors)
        for p in vs:
            self.edge(anchor, p)
        return vs

    def graph(self) -> ColoredGraph:
        return ColoredGraph(self.n, tuple(self.edges), self.r, tuple(self.colors))

    def trace(self) -> ReductionTrace:
        return ReductionTrace({k: tuple(v) for k, v in self.records.items()})

    def finish(self, k: int, variant: str, promise: bool = False) -> Reduction:
        inst = RepairInstance(self.graph(), k, variant, promise)
        trace = self.trace()
        trace.check_partition(inst.graph.n)
        return Reduction(inst, trace)
