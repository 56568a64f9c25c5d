"""JSON instance files.

Every file is one JSON object with ``format_version``, ``kind`` and the
payload fields of that kind, plus an optional ``trace`` mapping labels to
vertex ids. Output is byte-stable: keys sorted, edges sorted, one line.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from colorfix.errors import ParseError
from colorfix.graph import ColoredGraph, Graph, RepairInstance
from colorfix.reductions.sources import Cnf3, Cnf3Batch, IndSetInstance, PrExtInstance
from colorfix.reductions.trace import Reduction, ReductionTrace

FORMAT_VERSION = 1
KINDS = ("repair", "prext", "indset", "cnf3batch")

Loadable = Union[RepairInstance, Reduction, PrExtInstance, IndSetInstance, Cnf3Batch]


def to_dict(obj: Loadable) -> dict[str, Any]:
    if isinstance(obj, Reduction):
        d = to_dict(obj.instance)
        d["trace"] = {k: list(v) for k, v in obj.trace.records.items()}
        return d
    if isinstance(obj, RepairInstance):
        g = obj.graph
        payload = {
            "kind": "repair", "n": g.n, "edges": [list(e) for e in g.edges], "r": g.r,
            "coloring": list(g.coloring), "k": obj.k, "variant": obj.variant,
            "promise": obj.promise, "adjacent_only": obj.adjacent_only,
        }
    elif isinstance(obj, PrExtInstance):
        g = obj.graph
        payload = {
            "kind": "prext", "n": g.n, "edges": [list(e) for e in g.edges], "r": obj.r,
            "W": list(obj.W), "precoloring": [obj.colors[w] for w in obj.W],
            "bipartite_planar_expected": obj.bipartite_planar_expected,
            "degree_one_precolored": obj.degree_one_precolored,
        }
    elif isinstance(obj, IndSetInstance):
        g = obj.graph
        payload = {"kind": "indset", "n": g.n, "edges": [list(e) for e in g.edges], "k": obj.k}
    elif isinstance(obj, Cnf3Batch):
        payload = {
            "kind": "cnf3batch", "t": obj.t, "n": obj.n, "m": obj.m,
            "clauses": [[list(c) for c in phi.clauses] for phi in obj.formulas],
        }
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {"format_version": FORMAT_VERSION, **payload}


def dumps(obj: Loadable) -> str:
    return json.dumps(to_dict(obj), sort_keys=True, separators=(",", ":")) + "\n"


def save(obj: Loadable, path: str | Path) -> None:
    Path(path).write_text(dumps(obj))


class _Fields:
    """Typed access to a payload, raising ParseError that names the field."""

    def __init__(self, d: dict, kind: str):
        self.d, self.kind = d, kind

    def get(self, name: str, typ, default=...):
        if name not in self.d:
            if default is not ...:
                return default
            raise ParseError(f"{self.kind}: missing field {name!r}")
        value = self.d[name]
        if typ is int and (isinstance(value, bool) or not isinstance(value, int)):
            raise ParseError(f"{self.kind}: field {name!r} must be an integer, got {value!r}")
        if typ is not int and not isinstance(value, typ):
            raise ParseError(f"{self.kind}: field {name!r} must be {typ.__name__}, got {type(value).__name__}")
        return value

    def ints(self, name: str) -> list[int]:
        value = self.get(name, list)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
            raise ParseError(f"{self.kind}: field {name!r} must be a list of integers")
        return value

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, e in enumerate(self.get("edges", list)):
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise ParseError(f"{self.kind}: edges[{i}] must be a pair of integers, got {e!r}")
            out.append(tuple(e))
        return out


def from_dict(d: Any) -> Loadable:
    if not isinstance(d, dict):
        raise ParseError("top level must be a JSON object")
    version = d.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")
    kind = d.get("kind")
    if kind not in KINDS:
        raise ParseError(f"field 'kind' must be one of {', '.join(KINDS)}, got {kind!r}")
    f = _Fields(d, kind)
    if kind == "repair":
        g = ColoredGraph(f.get("n", int), tuple(f.edges()), f.get("r", int), tuple(f.ints("coloring")))
        obj: Loadable = RepairInstance(
            g, f.get("k", int), f.get("variant", str),
            f.get("promise", bool, False), f.get("adjacent_only", bool, False),
        )
    elif kind == "prext":
        W, pre = f.ints("W"), f.ints("precoloring")
        if len(W) != len(pre):
            raise ParseError("prext: fields 'W' and 'precoloring' differ in length")
        obj = PrExtInstance(
            Graph(f.get("n", int), tuple(f.edges())), f.get("r", int), tuple(zip(W, pre)),
            f.get("bipartite_planar_expected", bool, False), f.get("degree_one_precolored", bool, False),
        )
    elif kind == "indset":
        obj = IndSetInstance(Graph(f.get("n", int), tuple(f.edges())), f.get("k", int))
    else:
        formulas = []
        n = f.get("n", int)
        for i, clauses in enumerate(f.get("clauses", list)):
            if not isinstance(clauses, list) or not all(isinstance(c, list) for c in clauses):
                raise ParseError(f"cnf3batch: clauses[{i}] must be a list of literal lists")
            formulas.append(Cnf3(n, tuple(tuple(c) for c in clauses)))
        obj = Cnf3Batch(tuple(formulas))
        for name in ("t", "m"):
            if name in d and f.get(name, int) != getattr(obj, name):
                raise ParseError(f"cnf3batch: field {name!r} disagrees with the clause lists")
    if "trace" in d:
        if not isinstance(obj, RepairInstance):
            raise ParseError(f"{kind}: only repair instances carry a trace")
        trace = d["trace"]
        if not isinstance(trace, dict):
            raise ParseError("trace must be an object mapping labels to vertex lists")
        records = {}
        for label, ids in trace.items():
            if not isinstance(ids, list) or not all(isinstance(x, int) for x in ids):
                raise ParseError(f"trace[{label!r}] must be a list of integers")
            records[label] = tuple(ids)
        tr = ReductionTrace(records)
        tr.check_partition(obj.graph.n)
        obj = Reduction(obj, tr)
    return obj


def loads(text: str) -> Loadable:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_dict(d)


def load(path: str | Path) -> Loadable:
    return loads(Path(path).read_text())


def to_dimacs(g: Graph) -> str:
    """Graph structure only, 1-based vertices."""
    lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
