"""Verification suites: each case yields named checks of expected vs actual."""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from fractions import Fraction
from typing import Callable

from . import linalg as la
from .combinat import (
    CycleBlocks,
    Permutation,
    act_vector,
    all_permutations,
    automorphisms,
    complete_graph,
    cycle_blocks,
    graph_invariant,
)
from .corpus import CorpusSpec, NamedGraph, build_corpus
from .ehrhart import leading_coefficient
from .polytope import convex_hull, facets_adjacent, parallelepiped_lattice_count, rvol
from .sep import (
    check_kn_h_description,
    check_phi_equivalence,
    facet_label_of,
    fixed_polytope,
    fixed_vertices_formula,
    kn_automorphism_census,
    kn_facet_labels,
    kn_fixed_facet_labels,
    predicted_lattice_counts,
    index_parallelepipeds,
    psi_project,
    rvol_fixed_formula,
    rvol_kn_closed_form,
    rvol_kn_fixed_formula,
    sep_build,
)

EHRHART_MAX_DIM = 3


def _show(value) -> str:
    if isinstance(value, (set, frozenset)):
        return "{" + ", ".join(map(str, sorted(value))) + "}"
    return str(value)


def check(name: str, expected, actual) -> dict:
    return {"name": name, "expected": _show(expected), "actual": _show(actual), "pass": expected == actual}


def error_check(name: str, exc: Exception) -> dict:
    return {"name": name, "expected": "no error", "actual": f"{type(exc).__name__}: {exc}", "pass": False}


def case(graph, sigma, checks: list[dict]) -> dict:
    return {"case": {"graph": graph, "sigma": sigma}, "checks": checks}


def _graph_json(ng: NamedGraph) -> dict:
    return ng.to_json()


# ---------------------------------------------------------------------------
# per-case workers (top level so a process pool can pickle them)


def thm_sub_vol_case(ng: NamedGraph, sigma: Permutation) -> dict:
    g = ng.graph
    checks = []
    try:
        fixed = fixed_polytope(sep_build(g), sigma)
        formula = rvol_fixed_formula(g, sigma)
        hull = rvol(fixed.polytope)
        checks.append(check("hull rvol = formula", formula, hull))
        if fixed.polytope.dim <= EHRHART_MAX_DIM:
            checks.append(check("ehrhart leading coefficient = formula", formula,
                                leading_coefficient(fixed.polytope)))
    except Exception as exc:  # reported, never swallowed silently
        checks.append(error_check("volume channels", exc))
    return case(_graph_json(ng), str(sigma), checks)


def vert_desc_case(ng: NamedGraph, sigma: Permutation) -> dict:
    g = ng.graph
    checks = []
    try:
        sep = sep_build(g)
        images = sorted({psi_project(sigma, v) for v in sep.vertices})
        hull = convex_hull(images)
        formula = fixed_vertices_formula(g, sigma) or [la.zeros(g.n)]
        checks.append(check("hull vertices = closed form", _vlist(formula), _vlist(hull.vertices)))
        checks.append(check("vertices fixed by sigma", True,
                            all(act_vector(sigma, v) == v for v in hull.vertices)))
        checks.append(check("central symmetry", True,
                            {la.neg(v) for v in hull.vertices} == set(hull.vertices)))
    except Exception as exc:
        checks.append(error_check("vertex description", exc))
    return case(_graph_json(ng), str(sigma), checks)


def equivalence_case(ng: NamedGraph, sigma: Permutation) -> dict:
    checks = []
    try:
        res = check_phi_equivalence(ng.graph, sigma)
        checks.append(check("phi bijects vertices", True, res["bijective"]))
        src, dst = res["facet_counts"]
        checks.append(check("facet counts agree", dst, src))
        checks.append(check("facet incidence sizes agree", True, res["incidence_equal"]))
    except Exception as exc:
        checks.append(error_check("equivalence", exc))
    return case(_graph_json(ng), str(sigma), checks)


def invariance_case(ng: NamedGraph, sigma: Permutation) -> dict:
    g = ng.graph
    verts = set(sep_build(g).vertices)
    graph_side = graph_invariant(g, sigma)
    poly_side = {act_vector(sigma, v) for v in verts} == verts
    return case(_graph_json(ng), str(sigma), [check("graph side = polytope side", graph_side, poly_side)])


def kn_volume_case(n: int, sigma: Permutation) -> dict:
    checks = []
    try:
        fixed = fixed_polytope(sep_build(complete_graph(n)), sigma)
        m = cycle_blocks(sigma).m
        checks.append(check("hull rvol = K_n closed form", rvol_kn_fixed_formula(n, sigma), rvol(fixed.polytope)))
        checks.append(check("dimension = m - 1", m - 1, fixed.polytope.dim))
    except Exception as exc:
        checks.append(error_check("K_n fixed volume", exc))
    return case({"name": f"K{n}", "n": n}, str(sigma), checks)


def kn_closed_form_case(m: int) -> dict:
    value = rvol(sep_build(complete_graph(m)).polytope)
    return case({"name": f"K{m}", "n": m}, "()", [check("rvol SEP(K_m) closed form", rvol_kn_closed_form(m), value)])


def kn_facets_case(n: int) -> dict:
    checks = []
    p = sep_build(complete_graph(n)).polytope
    checks.append(check("facet count 2^n - 2", 2**n - 2, p.facet_count))
    try:
        labels = kn_facet_labels(n)
        checks.append(check("facets labelled by e_S", True, True))
    except Exception as exc:
        checks.append(error_check("facet labels", exc))
        return case({"name": f"K{n}", "n": n}, "()", checks)
    index = {facet_label_of(p, k, labels)[0]: k for k in range(p.facet_count)}
    sizes_ok = all(len(p.facet_vertices[index[lab]]) == len(lab.subset) * (n - len(lab.subset)) for lab in labels)
    checks.append(check("facet S has |S||S^C| vertices", True, sizes_ok))
    checks.append(check("H-description matches hull", True, check_kn_h_description(n)))
    if n <= 5:
        mismatches = 0
        for s1, s2 in itertools.combinations(labels, 2):
            combinatorial = len(set(s1.subset) ^ set(s2.subset)) == 1
            if combinatorial != facets_adjacent(p, index[s1], index[s2]):
                mismatches += 1
        checks.append(check("adjacency <=> symmetric difference 1", 0, mismatches))
    # common neighbours of a size-1 facet and a size-(n-1) facet
    def neighbours(lab):
        return {o for o in labels if o != lab and len(set(o.subset) ^ set(lab.subset)) == 1}

    counts = {
        len(neighbours(a) & neighbours(b))
        for a in labels if len(a.subset) == 1
        for b in labels if len(b.subset) == n - 1
    }
    checks.append(check("size-1/size-(n-1) common neighbour counts", {0, 2} if n == 4 else {0}, counts))
    return case({"name": f"K{n}", "n": n}, "()", checks)


def kn_fixed_facets_case(n: int, sigma: Permutation) -> dict:
    m = cycle_blocks(sigma).m
    checks = []
    try:
        fixed = fixed_polytope(sep_build(complete_graph(n)), sigma)
        checks.append(check("fixed facet count 2^m - 2", 2**m - 2, fixed.polytope.facet_count))
        kn_fixed_facet_labels(n, sigma)
        checks.append(check("facets labelled by block unions", True, True))
    except Exception as exc:
        checks.append(error_check("fixed facets", exc))
    return case({"name": f"K{n}", "n": n}, str(sigma), checks)


def census_case(n: int) -> dict:
    report = kn_automorphism_census(n)
    expected = 2 if n == 2 else 2 * math.factorial(n)
    return case({"name": f"K{n}", "n": n}, "±P", [
        check("distinct induced automorphisms", expected, report.count),
        check("candidate signed permutations", 2 * math.factorial(n), report.candidates),
    ])


def blocks_from_sizes(sizes) -> CycleBlocks:
    """Consecutive-cycle permutation with the given ordered block sizes."""
    n = sum(sizes)
    images = list(range(1, n + 1))
    start = 1
    for s in sizes:
        block = list(range(start, start + s))
        for a, b in zip(block, block[1:] + block[:1]):
            images[a - 1] = b
        start += s
    return cycle_blocks(Permutation(tuple(images)))


def parallelepiped_case(sizes: tuple) -> dict:
    blocks = blocks_from_sizes(sizes)
    p_gens, phi_gens = index_parallelepipeds(blocks)
    want_p, want_phi = predicted_lattice_counts(blocks)
    sigma = Permutation(tuple(_images_of(blocks)))
    return case({"block_sizes": list(sizes), "n": blocks.n}, str(sigma), [
        check("count(P) = |s_m|^(m-2) gcd", want_p, parallelepiped_lattice_count(p_gens)),
        check("count(phi P) = |s_m|^(m-2) prod", want_phi, parallelepiped_lattice_count(phi_gens)),
    ])


def _images_of(blocks: CycleBlocks):
    images = list(range(1, blocks.n + 1))
    for b in blocks.blocks:
        for a, c in zip(b, b[1:] + b[:1]):
            images[a - 1] = c
    return images


CONTROL_POLYTOPES = {
    # name: (points, rvol computed by hand)
    "unit-square": ([(0, 0), (1, 0), (0, 1), (1, 1)], Fraction(1)),
    "unit-cube": (list(itertools.product((0, 1), repeat=3)), Fraction(1)),
    "standard-simplex-3": ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], Fraction(1, 6)),
    "cross-polytope-3": ([tuple(s * (k == i) for k in range(3)) for i in range(3) for s in (1, -1)],
                         Fraction(4, 3)),
    "triangle-e1e2e3": ([(1, 0, 0), (0, 1, 0), (0, 0, 1)], Fraction(1, 2)),
    "segment-0-3": ([(0,), (3,)], Fraction(3)),
    "square-2x1-in-R3": ([(0, 0, 1), (2, 0, 1), (0, 1, 1), (2, 1, 1)], Fraction(2)),
    "skew-triangle": ([(0, 0), (2, 1), (1, 3)], Fraction(5, 2)),
}


def oracle_case(name: str) -> dict:
    points, expected = CONTROL_POLYTOPES[name]
    p = convex_hull(points)
    return case({"name": name}, "-", [
        check("hull rvol = hand value", expected, rvol(p)),
        check("ehrhart = hand value", expected, leading_coefficient(p)),
    ])


def _vlist(vs) -> list:
    return [[str(c) for c in v] for v in vs]


# ---------------------------------------------------------------------------
# suite assembly


def _graph_sigma_tasks(spec: CorpusSpec, all_sigma: bool) -> list[tuple]:
    tasks = []
    for ng in build_corpus(spec):
        sigmas = all_permutations(ng.graph.n) if all_sigma else automorphisms(ng.graph)
        tasks.extend((ng, s) for s in sigmas)
    return tasks


def suite_tasks(suite: str, spec: CorpusSpec) -> tuple[Callable, list[tuple]]:
    kn_max = min(spec.n_max, 5)
    if suite == "thm-sub-vol":
        return thm_sub_vol_case, _graph_sigma_tasks(spec, False)
    if suite == "vert-desc":
        return vert_desc_case, _graph_sigma_tasks(spec, False)
    if suite == "equivalence":
        return equivalence_case, _graph_sigma_tasks(spec, False)
    if suite == "prop-invariance":
        return invariance_case, _graph_sigma_tasks(spec, True)
    if suite == "kn-volumes":
        tasks = [(n, s) for n in range(2, kn_max + 1) for s in all_permutations(n)]
        return _kn_volume_dispatch, [("closed", m) for m in range(2, spec.n_max + 1)] + \
            [("fixed", t) for t in tasks]
    if suite == "facets-kn":
        tasks = [("kn", n) for n in range(3, spec.n_max + 1)]
        tasks += [("fixed", (n, s)) for n in range(3, kn_max + 1) for s in all_permutations(n)
                  if cycle_blocks(s).m >= 2]
        return _facets_dispatch, tasks
    if suite == "auto-census":
        return census_case, [(n,) for n in range(2, min(spec.n_max, 6) + 1)]
    if suite == "parallelepiped":
        sizes = [t for m in (1, 2, 3) for t in itertools.product(range(1, 5), repeat=m)]
        return parallelepiped_case, [(t,) for t in sizes]
    if suite == "oracle":
        return oracle_case, [(name,) for name in CONTROL_POLYTOPES]
    raise ValueError(f"unknown suite {suite!r}")


def _kn_volume_dispatch(kind, arg):
    return kn_closed_form_case(arg) if kind == "closed" else kn_volume_case(*arg)


def _facets_dispatch(kind, arg):
    return kn_facets_case(arg) if kind == "kn" else kn_fixed_facets_case(*arg)


SUITES = (
    "thm-sub-vol",
    "vert-desc",
    "equivalence",
    "facets-kn",
    "auto-census",
    "prop-invariance",
    "parallelepiped",
    "kn-volumes",
    "oracle",
)


def worker_count() -> int:
    cap = os.environ.get("SEP_THREADS")
    cpus = os.cpu_count() or 1
    if cap:
        return max(1, min(int(cap), cpus))
    return cpus


def _call(args):
    fn, a = args
    return fn(*a)


def case_key(entry: dict):
    g = entry["case"]["graph"]
    return (str(g.get("name", g.get("block_sizes"))), g.get("n", 0), entry["case"]["sigma"])


def run_suite(suite: str, spec: CorpusSpec, workers: int | None = None) -> dict:
    fn, tasks = suite_tasks(suite, spec)
    workers = workers or worker_count()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cases = list(pool.map(_call, [(fn, t) for t in tasks], chunksize=8))
    else:
        cases = [fn(*t) for t in tasks]
    cases.sort(key=case_key)
    failed = sum(1 for c in cases if not all(ch["pass"] for ch in c["checks"]))
    spec_json = asdict(spec)
    spec_json["families"] = list(spec.families)
    return {
        "suite": suite,
        "corpus": spec_json,
        "cases": cases,
        "summary": {"cases": len(cases), "failed": failed, "pass": failed == 0},
    }
