"""Graphs on [n], permutations, cycle blocks, and graph contraction."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .linalg import QVector, lcm_list

Edge = tuple  # (i, j) with i < j, 1-based


class ParseError(ValueError):
    pass


def _edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n."""

    n: int
    edges: frozenset

    def __post_init__(self):
        for i, j in self.edges:
            if not (1 <= i < j <= self.n):
                raise ValueError(f"bad edge {(i, j)} for a simple graph on {self.n} vertices")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        es = set()
        for e in edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            es.add(_edge(i, j))
        return cls(n, frozenset(es))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return _edge(i, j) in self.edges

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = {v: set() for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def __str__(self) -> str:
        return f"G(n={self.n}, E={self.sorted_edges()})"


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(1, n + 1), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        return path_graph(n)
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def star_graph(spokes: int) -> Graph:
    """Star with center 1 and ``spokes`` leaves 2..spokes+1."""
    return Graph.from_edges(spokes + 1, [(1, k) for k in range(2, spokes + 2)])


def parse_graph(text: str) -> Graph:
    """Parse a graph from JSON ``{"n": .., "edges": [[i, j], ..]}`` or "i j" lines.

    For the plain-text form the vertex count is the largest endpoint, unless
    a line of the form ``n <count>`` is given.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            n = int(obj["n"])
            edges = [tuple(int(v) for v in e) for e in obj["edges"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"malformed graph JSON: {exc}") from exc
        if any(len(e) != 2 for e in edges):
            raise ParseError("every edge needs exactly two endpoints")
    else:
        n = None
        edges = []
        for lineno, line in enumerate(stripped.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 2 and parts[0] == "n":
                n = _int(parts[1], lineno)
                continue
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'i j', got {line!r}")
            edges.append((_int(parts[0], lineno), _int(parts[1], lineno)))
        if n is None:
            n = max((max(e) for e in edges), default=0)
    for i, j in edges:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"edge {(i, j)} has an endpoint outside 1..{n}")
        if i == j:
            raise ParseError(f"loop at vertex {i}")
    return Graph.from_edges(n, edges)


def _int(s: str, lineno: int) -> int:
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"line {lineno}: {s!r} is not an integer") from None


@dataclass(frozen=True)
class CycleBlocks:
    """Orbit partition of a permutation, fixed points kept as singletons.

    ``blocks`` are sorted tuples, ordered by their minimum element.
    """

    blocks: tuple
    n: int

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def block_orders(self) -> tuple:
        return tuple(len(b) for b in self.blocks)

    @property
    def group_order(self) -> int:
        return lcm_list(self.block_orders)

    def block_of(self) -> dict:
        """Map vertex -> 0-based index of its block."""
        return {v: k for k, b in enumerate(self.blocks) for v in b}


@dataclass(frozen=True)
class Permutation:
    """Bijection of [n]; ``images[i - 1]`` is sigma(i)."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: Permutation) -> Permutation:
        """self ∘ other."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def power(self, k: int) -> Permutation:
        p = Permutation.identity(self.n)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            p = base.compose(p)
        return p

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    @cached_property
    def cycles(self) -> list[tuple]:
        """Disjoint cycles in traversal order, fixed points included."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles if len(c) > 1)

    def __str__(self) -> str:
        return self.cycle_notation() or "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as "(1 2 3)(4 5)"; omitted points are fixed.

    Entries may be separated by spaces or commas. "" and "()" give the identity.
    """
    s = text.strip()
    if _CYCLE_RE.sub("", s).strip():
        raise ParseError(f"malformed cycle notation: {text!r}")
    images = list(range(1, n + 1))
    seen: set[int] = set()
    for body in _CYCLE_RE.findall(s):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        try:
            entries = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer entry in {text!r}") from None
        for e in entries:
            if not 1 <= e <= n:
                raise ParseError(f"entry {e} out of range 1..{n}")
            if e in seen:
                raise ParseError(f"element {e} repeated in {text!r}")
            seen.add(e)
        for a, b in zip(entries, entries[1:] + entries[:1]):
            images[a - 1] = b
    return Permutation(tuple(images))


def cycle_blocks(p: Permutation) -> CycleBlocks:
    blocks = sorted((tuple(sorted(c)) for c in p.cycles), key=lambda b: b[0])
    return CycleBlocks(tuple(blocks), p.n)


def all_permutations(n: int) -> Iterator[Permutation]:
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def act_vector(p: Permutation, x: Sequence) -> QVector:
    """Coordinate permutation with (p.x)_{p(i)} = x_i, so p.e_i = e_{p(i)}."""
    if len(x) != p.n:
        raise ValueError(f"vector of length {len(x)} for a permutation of [{p.n}]")
    out = [None] * p.n
    for i, xi in enumerate(x, 1):
        out[p(i) - 1] = xi
    return tuple(out)


def graph_invariant(g: Graph, p: Permutation) -> bool:
    """True iff p maps the edge set of g onto itself."""
    if p.n != g.n:
        raise ValueError("permutation and graph sizes differ")
    return all(_edge(p(i), p(j)) in g.edges for i, j in g.edges)


def automorphisms(g: Graph) -> list[Permutation]:
    return [p for p in all_permutations(g.n) if graph_invariant(g, p)]


def contract(g: Graph, blocks: CycleBlocks) -> Graph:
    """Quotient graph: one vertex per block, loops dropped, parallel edges merged."""
    where = blocks.block_of()
    if sorted(where) != list(range(1, g.n + 1)):
        raise ValueError("blocks do not partition the vertex set")
    edges = set()
    for i, j in g.edges:
        a, b = where[i], where[j]
        if a != b:
            edges.add(_edge(a + 1, b + 1))
    return Graph(blocks.m, frozenset(edges))
