"""Symmetric edge polytopes, their fixed subpolytopes, and the K_n facet calculus."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .combinat import (
    CycleBlocks,
    Graph,
    Permutation,
    act_vector,
    all_permutations,
    complete_graph,
    contract,
    cycle_blocks,
    graph_invariant,
)
from .polytope import HPolytope, Polytope, canonical_halfspace, convex_hull, facets_adjacent, rvol


class TheoremViolation(AssertionError):
    """Two computations that must agree did not."""


class NotAutomorphismError(ValueError):
    pass


class EdgelessGraphError(ValueError):
    pass


def _check(cond: bool, message: str):
    if not cond:
        raise TheoremViolation(message)


@dataclass(frozen=True)
class SepPolytope:
    graph: Graph
    polytope: Polytope

    @property
    def vertices(self):
        return self.polytope.vertices


@dataclass(frozen=True)
class FixedSep:
    base: SepPolytope
    sigma: Permutation
    blocks: CycleBlocks
    polytope: Polytope


@dataclass(frozen=True, order=True)
class FacetLabel:
    """Nonempty proper subset S of [n]; the facet lies in {x : e_S . x = 1}."""

    subset: tuple

    def normal(self, n: int):
        return la.e_set_vector(self.subset, n)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.subset)) + "}"


def sep_generators(g: Graph) -> list:
    out = []
    for i, j in g.sorted_edges():
        v = la.sub(la.e_vector(i, g.n), la.e_vector(j, g.n))
        out.extend([v, la.neg(v)])
    return out


@lru_cache(maxsize=256)
def sep_build(g: Graph) -> SepPolytope:
    """SEP(G) = conv{±(e_i - e_j) : ij ∈ E}."""
    if not g.edges:
        raise EdgelessGraphError("SEP of an edgeless graph is empty")
    gens = sep_generators(g)
    poly = convex_hull(gens)
    _check(set(poly.vertices) == set(gens), "a generator of SEP(G) is not a vertex")
    return SepPolytope(g, poly)


def psi_project(sigma: Permutation, x) -> tuple:
    """Orbit average (1/|σ|) Σ σ^i.x, cross-checked against the block-average form."""
    order = cycle_blocks(sigma).group_order
    acc = la.zeros(len(x))
    y = tuple(Fraction(c) for c in x)
    for _ in range(order):
        y = act_vector(sigma, y)
        acc = la.add(acc, y)
    orbit = la.scale(Fraction(1, order), acc)
    _check(orbit == block_average(cycle_blocks(sigma), x), "orbit average and block average differ")
    return orbit


def block_average(blocks: CycleBlocks, x) -> tuple:
    out = [Fraction(0)] * blocks.n
    for b in blocks.blocks:
        mean = sum((Fraction(x[i - 1]) for i in b), Fraction(0)) / len(b)
        for i in b:
            out[i - 1] = mean
    return tuple(out)


def _block_vertex(blocks: CycleBlocks, i: int, j: int) -> tuple:
    """(1/|σ_i|) e_{σ_i} - (1/|σ_j|) e_{σ_j} for 0-based block indices."""
    bi, bj = blocks.blocks[i], blocks.blocks[j]
    n = blocks.n
    return la.sub(
        la.scale(Fraction(1, len(bi)), la.e_set_vector(bi, n)),
        la.scale(Fraction(1, len(bj)), la.e_set_vector(bj, n)),
    )


def fixed_vertices_formula(g: Graph, sigma: Permutation) -> list:
    """Closed-form vertex list of SEP(G)^σ (empty when every edge is intra-block)."""
    blocks = cycle_blocks(sigma)
    where = blocks.block_of()
    out = set()
    for a, b in g.edges:
        i, j = where[a], where[b]
        if i != j:
            out.add(_block_vertex(blocks, i, j))
            out.add(_block_vertex(blocks, j, i))
    return sorted(out)


def invariance_check(g: Graph, sigma: Permutation, sep: SepPolytope | None = None) -> bool:
    """Graph-side and polytope-side invariance under σ, asserted equal."""
    graph_side = graph_invariant(g, sigma)
    if not g.edges:
        return graph_side
    verts = set((sep or sep_build(g)).vertices)
    poly_side = {act_vector(sigma, v) for v in verts} == verts
    _check(graph_side == poly_side, f"invariance disagrees for {g} under {sigma}: "
           f"graph {graph_side}, polytope {poly_side}")
    return graph_side


def fixed_polytope(s: SepPolytope, sigma: Permutation) -> FixedSep:
    """P^σ = ψ_σ(P) for σ an automorphism of the graph."""
    if sigma.n != s.graph.n:
        raise ValueError("permutation and graph sizes differ")
    if not invariance_check(s.graph, sigma, s):
        raise NotAutomorphismError(f"{sigma} is not an automorphism of {s.graph}")
    blocks = cycle_blocks(sigma)
    images = sorted({psi_project(sigma, v) for v in s.vertices})
    poly = convex_hull(images)
    formula = fixed_vertices_formula(s.graph, sigma)
    if formula:
        _check(list(poly.vertices) == formula, "hull vertices differ from the closed form")
    else:
        _check(list(poly.vertices) == [la.zeros(s.graph.n)], "expected the origin as fixed polytope")
    for v in poly.vertices:
        _check(act_vector(sigma, v) == v, f"vertex {v} is not fixed by {sigma}")
    return FixedSep(s, sigma, blocks, poly)


def equivalence_map_phi(blocks: CycleBlocks) -> tuple:
    """m x n matrix sending e_{σ_k} to |σ_k| e_k (row k is the indicator of block k)."""
    return tuple(la.e_set_vector(b, blocks.n) for b in blocks.blocks)


def apply_matrix(m, x) -> tuple:
    return la.matvec(m, x)


def check_phi_equivalence(g: Graph, sigma: Permutation, fixed: FixedSep | None = None) -> dict:
    """φ maps fixed vertices bijectively onto SEP(G') vertices with matching facet data."""
    blocks = cycle_blocks(sigma)
    gc = contract(g, blocks)
    fixed = fixed or fixed_polytope(sep_build(g), sigma)
    phi = equivalence_map_phi(blocks)
    images = [apply_matrix(phi, v) for v in fixed.polytope.vertices]
    if not gc.edges:
        target_vertices = [la.zeros(blocks.m)]
        target = convex_hull(target_vertices)
    else:
        target = sep_build(gc).polytope
        target_vertices = list(target.vertices)
    bijective = len(set(images)) == len(images) and sorted(images) == sorted(target_vertices)
    facets_equal = fixed.polytope.facet_count == target.facet_count
    # facet-vertex incidence sizes, matched as multisets
    inc_src = sorted(len(f) for f in fixed.polytope.facet_vertices)
    inc_dst = sorted(len(f) for f in target.facet_vertices)
    return {
        "bijective": bijective,
        "facet_counts": (fixed.polytope.facet_count, target.facet_count),
        "facets_equal": facets_equal,
        "incidence_equal": inc_src == inc_dst,
    }


# ---------------------------------------------------------------------------
# Volumes


@lru_cache(maxsize=256)
def _rvol_sep(g: Graph) -> Fraction:
    return rvol(sep_build(g).polytope)


def rvol_fixed_formula(g: Graph, sigma: Permutation) -> Fraction:
    """gcd(|σ_1|..|σ_m|) / Π|σ_i| · rvol(SEP(G')), the last factor by triangulation."""
    blocks = cycle_blocks(sigma)
    gc = contract(g, blocks)
    if not gc.edges:
        return Fraction(1)
    orders = blocks.block_orders
    return Fraction(la.gcd_list(orders), math.prod(orders)) * _rvol_sep(gc)


def rvol_kn_closed_form(m: int) -> Fraction:
    """rvol(SEP(K_m)) = binom(2(m-1), m-1) / (m-1)!."""
    return Fraction(la.binomial(2 * (m - 1), m - 1), math.factorial(m - 1))


def rvol_kn_fixed_formula(n: int, sigma: Permutation) -> Fraction:
    blocks = cycle_blocks(sigma)
    if blocks.n != n:
        raise ValueError("permutation is not on [n]")
    m = blocks.m
    if m == 1:
        return Fraction(1)
    orders = blocks.block_orders
    return Fraction(la.gcd_list(orders), math.factorial(m - 1) * math.prod(orders)) * la.binomial(
        2 * (m - 1), m - 1
    )


# ---------------------------------------------------------------------------
# Facets of SEP(K_n)


def _proper_subsets(ground) -> list[tuple]:
    ground = sorted(ground)
    return [c for r in range(1, len(ground)) for c in itertools.combinations(ground, r)]


def facet_label_of(p: Polytope, facet: int, labels) -> list:
    """Labels S whose hyperplane e_S.x = 1 supports ``p`` exactly along ``facet``."""
    n = p.ambient_dim
    on = p.facet_vertices[facet]
    out = []
    for lab in labels:
        e = lab.normal(n)
        values = [la.dot(e, v) for v in p.vertices]
        if max(values) == 1 and {i for i, val in enumerate(values) if val == 1} == set(on):
            out.append(lab)
    return out


def _assert_labels_match(p: Polytope, labels: list) -> None:
    """Each label supports exactly one facet of p and every facet gets exactly one label."""
    _check(p.facet_count == len(labels), f"{p.facet_count} facets, {len(labels)} labels")
    seen = set()
    for k in range(p.facet_count):
        match = facet_label_of(p, k, labels)
        _check(len(match) == 1, f"facet {k} matches labels {[str(m) for m in match]}")
        seen.add(match[0])
    _check(seen == set(labels), "some label supports no facet")


def kn_facet_labels(n: int, verify: bool = True) -> list[FacetLabel]:
    """The 2^n - 2 nonempty proper subsets of [n], asserted against SEP(K_n)'s facets."""
    if n < 3:
        raise ValueError("facet labels need n >= 3")
    labels = [FacetLabel(s) for s in _proper_subsets(range(1, n + 1))]
    if verify:
        _assert_labels_match(sep_build(complete_graph(n)).polytope, labels)
    return labels


def kn_facets_adjacent(s1: FacetLabel, s2: FacetLabel, n: int | None = None) -> bool:
    """Labels differ in exactly one element; with ``n`` (<= 5) also checked geometrically."""
    if s1 == s2:
        raise ValueError("adjacency is defined for distinct facets")
    combinatorial = len(set(s1.subset) ^ set(s2.subset)) == 1
    if n is not None and n <= 5:
        p = sep_build(complete_graph(n)).polytope
        labels = kn_facet_labels(n, verify=False)
        index = {}
        for k in range(p.facet_count):
            index[facet_label_of(p, k, labels)[0]] = k
        geometric = facets_adjacent(p, index[s1], index[s2])
        _check(geometric == combinatorial, f"adjacency of {s1} and {s2} disagrees with the ridge test")
    return combinatorial


def kn_fixed_facet_labels(n: int, sigma: Permutation, verify: bool = True) -> list[FacetLabel]:
    """Block unions labelling the 2^m - 2 facets of SEP(K_n)^σ."""
    blocks = cycle_blocks(sigma)
    if blocks.m < 2:
        raise ValueError("fixed polytope has no facets when m < 2")
    labels = []
    for r in range(1, blocks.m):
        for combo in itertools.combinations(blocks.blocks, r):
            labels.append(FacetLabel(tuple(sorted(itertools.chain(*combo)))))
    labels.sort(key=lambda lab: (len(lab.subset), lab.subset))
    if verify:
        fixed = fixed_polytope(sep_build(complete_graph(n)), sigma)
        _assert_labels_match(fixed.polytope, labels)
    return labels


def kn_h_description(n: int) -> HPolytope:
    """1.x = 0 and |e_S . x| <= 1 for nonempty S with |S| <= n/2, deduplicated."""
    if n < 2:
        raise ValueError("need n >= 2")
    eq = ((tuple([1] * n), Fraction(0)),)
    ineqs = set()
    for s in _proper_subsets(range(1, n + 1)):
        if 2 * len(s) > n:
            continue
        e = la.e_set_vector(s, n)
        ineqs.add(canonical_halfspace(e, 1, eq))
        ineqs.add(canonical_halfspace(la.neg(e), 1, eq))
    return HPolytope(n, eq, tuple(sorted(ineqs)))


def check_kn_h_description(n: int) -> bool:
    """The H-description equals the hull's facets and contains every hull vertex."""
    h = kn_h_description(n)
    p = sep_build(complete_graph(n)).polytope
    same = set(h.inequalities) == set(p.inequalities) and set(h.equalities) == set(p.equalities)
    return same and all(h.contains(v) for v in p.vertices)


# ---------------------------------------------------------------------------
# Automorphisms of SEP(K_n)


@dataclass(frozen=True)
class CensusReport:
    n: int
    count: int
    candidates: int
    maps: tuple  # (sign, permutation string) for one representative of each distinct map


def kn_automorphism_census(n: int) -> CensusReport:
    """Distinct vertex bijections of SEP(K_n) induced by the signed permutation matrices ±P."""
    if not 2 <= n <= 6:
        raise ValueError("census is capped at 2 <= n <= 6")
    verts = list(sep_build(complete_graph(n)).vertices)
    index = {v: k for k, v in enumerate(verts)}
    induced = {}
    candidates = 0
    for sign in (1, -1):
        for p in all_permutations(n):
            candidates += 1
            image = []
            for v in verts:
                w = act_vector(p, v)
                if sign < 0:
                    w = la.neg(w)
                if w not in index:
                    raise TheoremViolation(f"{'-' if sign < 0 else ''}{p} does not preserve SEP(K_{n})")
                image.append(index[w])
            _check(sorted(image) == list(range(len(verts))), "induced map is not a bijection")
            induced.setdefault(tuple(image), (sign, str(p)))
    return CensusReport(n, len(induced), candidates, tuple(sorted(induced.values())))


# ---------------------------------------------------------------------------
# Parallelepipeds whose lattice counts give the volume scaling


def index_parallelepipeds(blocks: CycleBlocks) -> tuple[list, list]:
    """Generators |σ_m| e_{σ_i} - |σ_i| e_{σ_m} in R^n and their φ-images
    |σ_i||σ_m| (e_i - e_m) in R^m, for i < m (σ_m the last block)."""
    n, m = blocks.n, blocks.m
    last = blocks.blocks[-1]
    sm = len(last)
    in_space, image = [], []
    for i, b in enumerate(blocks.blocks[:-1]):
        si = len(b)
        v = la.sub(la.scale(sm, la.e_set_vector(b, n)), la.scale(si, la.e_set_vector(last, n)))
        in_space.append(tuple(int(c) for c in v))
        w = la.scale(si * sm, la.sub(la.e_vector(i + 1, m), la.e_vector(m, m)))
        image.append(tuple(int(c) for c in w))
    return in_space, image


def predicted_lattice_counts(blocks: CycleBlocks) -> tuple[int, int]:
    """Predicted lattice counts: (|σ_m|^{m-2} gcd, |σ_m|^{m-2} Π|σ_i|)."""
    orders = blocks.block_orders
    m, sm = blocks.m, orders[-1]
    scale = Fraction(sm) ** (m - 2)
    return int(scale * la.gcd_list(orders)), int(scale * math.prod(orders))
