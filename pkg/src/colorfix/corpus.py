"""Fixed example instances and seeded random source generators."""

from __future__ import annotations

import itertools
import random

from colorfix.graph import ColoredGraph, Graph, RepairInstance
from colorfix.reductions.sources import Cnf3, Cnf3Batch, IndSetInstance, PrExtInstance


def separating_example(variant: str = "fix", k: int = 3) -> RepairInstance:
    """Triangle ``v0 v1 v2`` colored 0, 1, 2 where ``v_i`` has three pendants
    of its own color and three of color ``i+1``.

    Three recolorings repair it, but so do two swaps.
    """
    edges = [(0, 1), (0, 2), (1, 2)]
    colors = [0, 1, 2]
    for i in range(3):
        for c in (i, (i + 1) % 3):
            for _ in range(3):
                edges.append((i, len(colors)))
                colors.append(c)
    return RepairInstance(ColoredGraph(len(colors), tuple(edges), 3, tuple(colors)), k, variant)


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def random_repair(rng: random.Random, n: int, r: int = 3, k: int = 2, variant: str = "fix") -> RepairInstance:
    g = random_graph(rng, n)
    coloring = tuple(rng.randrange(r) for _ in range(n))
    return RepairInstance(ColoredGraph(n, g.edges, r, coloring), k, variant)


def random_prext(rng: random.Random, n: int, r: int = 3, degree_one: bool = False) -> PrExtInstance:
    """Random bipartite graph with a random proper precoloring."""
    side = [rng.random() < 0.5 for _ in range(n)]
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if side[u] != side[v] and rng.random() < 0.5]
    g = Graph(n, tuple(edges))
    candidates = [v for v in range(n) if not degree_one or g.degree(v) == 1]
    pre: dict[int, int] = {}
    for v in candidates:
        if rng.random() < 0.5:
            options = [c for c in range(r) if all(pre.get(u) != c for u in g.adjacency[v])]
            pre[v] = rng.choice(options)
    return PrExtInstance(g, r, pre, bipartite_planar_expected=True, degree_one_precolored=degree_one)


def random_indset(rng: random.Random, n: int, k: int = 1) -> IndSetInstance:
    return IndSetInstance(random_graph(rng, n), min(k, n))


def random_cnf3(rng: random.Random, n: int, m: int) -> Cnf3:
    clauses = []
    for _ in range(m):
        vars_ = rng.sample(range(1, n + 1), min(3, n))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return Cnf3(n, tuple(clauses))


def random_cnf3_batch(rng: random.Random, t: int, n: int, m: int) -> Cnf3Batch:
    return Cnf3Batch(tuple(random_cnf3(rng, n, m) for _ in range(t)))
