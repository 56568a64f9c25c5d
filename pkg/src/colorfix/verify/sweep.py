"""Equivalence sweeps: source oracle against target solver, instance by instance."""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

import networkx as nx

from colorfix.errors import SearchCapExceeded
from colorfix.graph import Graph, chromatic_number, is_bipartite, planarity_bound_check
from colorfix.reductions.indset import indset_to_3swap, promise_augment
from colorfix.reductions.planar import (
    prext_to_planar_fix_promise,
    prext_to_planar_swap_promise,
    strip_promise_bipartite,
)
from colorfix.reductions.prext import prext_to_fix, prext_to_swap
from colorfix.reductions.sources import IndSetInstance, PrExtInstance
from colorfix.solvers import fix_optimum, promise_check, swap_optimum
from colorfix.verify.oracles import oracle_indset, oracle_prext
from colorfix.verify.search import bounded_move_search

DEFAULT_SEED = 20240611
FAMILIES = (
    "prext-fix",
    "prext-swap",
    "indset-3swap",
    "promise-augment",
    "planar-swap-promise",
    "planar-fix-promise",
)


# ---------------------------------------------------------------------------
# source enumeration


@lru_cache(maxsize=None)
def _atlas() -> tuple[Graph, ...]:
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0:
            continue
        out.append(Graph(n, tuple(sorted(tuple(sorted(e)) for e in h.edges()))))
    return tuple(out)


def graphs_up_to(max_n: int, bipartite: bool = False) -> Iterator[Graph]:
    """All graphs on 1..max_n vertices up to isomorphism (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("graph enumeration goes up to 7 vertices")
    for g in _atlas():
        if g.n <= max_n and (not bipartite or is_bipartite(g)):
            yield g


def prext_sources(max_n: int, r: int = 3, degree_one: bool = False) -> Iterator[PrExtInstance]:
    """Every bipartite source with every proper precoloring on every vertex subset.

    With ``degree_one`` only vertices of degree 1 may be precolored.
    """
    for g in graphs_up_to(max_n, bipartite=True):
        allowed = [v for v in range(g.n) if not degree_one or g.degree(v) == 1]
        for size in range(len(allowed) + 1):
            for W in itertools.combinations(allowed, size):
                for cols in itertools.product(range(r), repeat=size):
                    src = PrExtInstance(
                        g, r, tuple(zip(W, cols)),
                        bipartite_planar_expected=True, degree_one_precolored=degree_one,
                    )
                    if src.precoloring_is_proper():
                        yield src


def indset_sources(max_n: int, max_k: int) -> Iterator[IndSetInstance]:
    for g in graphs_up_to(max_n):
        for k in range(1, min(max_k, g.n) + 1):
            yield IndSetInstance(g, k)


# ---------------------------------------------------------------------------
# reports


@dataclass
class SweepRecord:
    index: int
    source: str
    expected: bool | None
    got: bool | None
    agree: bool | None
    seconds: float
    note: str = ""


@dataclass
class EquivalenceReport:
    family: str
    mode: str
    seed: int
    records: list[SweepRecord] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def disagreements(self) -> list[SweepRecord]:
        return [r for r in self.records if r.agree is False]

    @property
    def skipped(self) -> list[SweepRecord]:
        return [r for r in self.records if r.agree is None]

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def counts(self) -> dict[str, int]:
        yes = sum(1 for r in self.records if r.expected is True)
        return {
            "total": self.total,
            "yes": yes,
            "no": sum(1 for r in self.records if r.expected is False),
            "disagreements": len(self.disagreements),
            "skipped": len(self.skipped),
        }

    def jsonl(self, timings: bool = True) -> str:
        """Header line with the counts, then one line per record.

        ``timings=False`` drops the per-record seconds so the output is
        reproducible byte for byte.
        """
        head = {"family": self.family, "mode": self.mode, "seed": self.seed, **self.counts()}
        lines = [json.dumps(head, sort_keys=True)]
        for r in self.records:
            d = asdict(r)
            if not timings:
                del d["seconds"]
            lines.append(json.dumps(d, sort_keys=True))
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        c = self.counts()
        status = "ok" if self.ok else "DISAGREE"
        return (f"{self.family}: {c['total']} instances ({c['yes']} yes, {c['no']} no), "
                f"{c['disagreements']} disagreements, {c['skipped']} skipped [{status}]")


# ---------------------------------------------------------------------------
# per-family checks; each returns (expected, got, problems), where a
# non-empty problems string marks a failed structural check


def _describe(src) -> str:
    g = src.graph
    if isinstance(src, PrExtInstance):
        return f"n={g.n} edges={list(g.edges)} pre={list(src.precoloring)}"
    return f"n={g.n} edges={list(g.edges)} k={src.k}"


def _decide_swap(inst) -> bool:
    try:
        return bool(swap_optimum(inst.graph, k=inst.k, bound=inst.k).decision)
    except SearchCapExceeded:
        return bounded_move_search(inst.graph, "swap", inst.k) is not None


def _check_prext_fix(src):
    inst = prext_to_fix(src).instance
    return oracle_prext(src), bool(fix_optimum(inst.graph, k=inst.k, bound=inst.k).decision), ""


def _check_prext_swap(src):
    return oracle_prext(src), _decide_swap(prext_to_swap(src).instance), ""


def _indset_checker(search: bool) -> Callable:
    def check(src):
        inst = indset_to_3swap(src).instance
        if search:
            got = bounded_move_search(inst.graph, "swap", inst.k) is not None
        else:
            got = bool(swap_optimum(inst.graph, k=inst.k, bound=inst.k).decision)
        return oracle_indset(src), got, ""

    return check


def _check_promise_augment(src):
    red = promise_augment(indset_to_3swap(src), src.graph.n, src.k)
    pc = promise_check(red.instance)
    return True, pc.holds, "" if pc.holds else pc.diagnosis


def _planar_checker(build: Callable) -> Callable:
    def check(src):
        expected = oracle_prext(src)
        red = build(src)
        inst = red.instance
        decide = _decide_swap if inst.variant == "swap" else (
            lambda i: bool(fix_optimum(i.graph, k=i.k, bound=i.k).decision))
        got = decide(inst)
        stripped = strip_promise_bipartite(red).instance
        problems = []
        pc = promise_check(inst)
        if not pc.holds:
            problems.append(pc.diagnosis)
        if chromatic_number(inst.graph) != 3:
            problems.append("chromatic number is not 3")
        if not is_bipartite(stripped.graph):
            problems.append("stripped output is not bipartite")
        if not planarity_bound_check(stripped.graph):
            problems.append("stripped output violates m <= 2n-4")
        if decide(stripped) != expected:
            problems.append("stripped output disagrees")
        return expected, got, "; ".join(problems)

    return check


def _family(family: str, max_n: int, max_k: int, search: bool):
    if family == "prext-fix":
        return prext_sources(max_n), _check_prext_fix
    if family == "prext-swap":
        return prext_sources(max_n), _check_prext_swap
    if family == "indset-3swap":
        return indset_sources(max_n, max_k), _indset_checker(search)
    if family == "promise-augment":
        return indset_sources(max_n, max_k), _check_promise_augment
    if family == "planar-swap-promise":
        return prext_sources(max_n, degree_one=True), _planar_checker(prext_to_planar_swap_promise)
    if family == "planar-fix-promise":
        return prext_sources(max_n, degree_one=True), _planar_checker(prext_to_planar_fix_promise)
    raise ValueError(f"unknown sweep family {family!r}; choose from {', '.join(FAMILIES)}")


def equivalence_sweep(
    family: str,
    max_n: int = 5,
    max_k: int = 1,
    mode: str = "exhaustive",
    samples: int = 200,
    seed: int = DEFAULT_SEED,
    search: bool = False,
) -> EquivalenceReport:
    """Compare the source oracle with the target decision on every source.

    ``mode="sampled"`` draws ``samples`` sources with ``seed``. ``search``
    makes the IndSet family use :func:`bounded_move_search` on the target.
    A record disagrees when the answers differ or a structural check fails;
    instances over a solver cap are recorded with ``agree=None``.
    """
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown sweep mode {mode!r}")
    sources, check = _family(family, max_n, max_k, search)
    sources = list(sources)
    if mode == "sampled" and len(sources) > samples:
        picked = sorted(random.Random(seed).sample(range(len(sources)), samples))
        sources = [sources[i] for i in picked]
    report = EquivalenceReport(family, mode, seed)
    for i, src in enumerate(sources):
        t0 = time.perf_counter()
        try:
            expected, got, note = check(src)
            agree = expected == got and not note
        except SearchCapExceeded as exc:
            expected, got, agree, note = None, None, None, str(exc)
        report.records.append(
            SweepRecord(i, _describe(src), expected, got, agree, round(time.perf_counter() - t0, 4), note)
        )
    return report
