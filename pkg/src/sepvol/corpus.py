"""Deterministic graph corpora for the verification suites."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .combinat import Graph, complete_graph, cycle_graph, path_graph, star_graph

FAMILIES = ("path", "cycle", "star", "complete", "random")


@dataclass(frozen=True)
class CorpusSpec:
    families: tuple = FAMILIES
    n_max: int = 6
    random_count: int = 20
    random_seed: int = 0
    random_n_max: int = 5

    def __post_init__(self):
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown families: {sorted(unknown)}")
        if not 2 <= self.n_max <= 7:
            raise ValueError("n_max must lie in 2..7")
        if not 0 <= self.random_seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: Graph

    def to_json(self) -> dict:
        return {"name": self.name, **self.graph.to_json()}


def random_connected_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    """G(n, p) resampled until connected."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    while True:
        g = Graph.from_edges(n, [e for e in pairs if rng.random() < p])
        if g.edges and g.is_connected():
            return g


def build_corpus(spec: CorpusSpec) -> list[NamedGraph]:
    out = []
    fam = set(spec.families)
    for n in range(2, spec.n_max + 1):
        if "path" in fam:
            out.append(NamedGraph(f"P{n}", path_graph(n)))
        if "cycle" in fam and n >= 3:
            out.append(NamedGraph(f"C{n}", cycle_graph(n)))
        if "star" in fam and n >= 3:
            out.append(NamedGraph(f"Star{n - 1}", star_graph(n - 1)))
        if "complete" in fam:
            out.append(NamedGraph(f"K{n}", complete_graph(n)))
    if "random" in fam:
        rng = random.Random(spec.random_seed)
        hi = min(spec.random_n_max, spec.n_max)
        for k in range(spec.random_count):
            n = rng.randint(min(3, hi), hi)
            out.append(NamedGraph(f"R{k:02d}", random_connected_graph(rng, n)))
    return out
