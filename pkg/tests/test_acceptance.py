"""Acceptance checks, one test per criterion, all by exact rational equality.

Run with pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python3 tests/test_acceptance.py``.
"""

import time
from fractions import Fraction

import pytest

from sepvol.combinat import complete_graph
from sepvol.corpus import CorpusSpec
from sepvol.polytope import rvol
from sepvol.sep import sep_build
from sepvol.suites import CONTROL_POLYTOPES, run_suite

FULL_CORPUS = CorpusSpec(n_max=6, random_count=20, random_seed=0, random_n_max=5)
RESULTS: dict[int, tuple[bool, str]] = {}

TITLES = {
    1: "volume identity, formula = hull = Ehrhart over corpus x Aut(G)",
    2: "closed-form K_n volumes",
    3: "vertex description of fixed polytopes",
    4: "equivalence map onto the contraction",
    5: "facet calculus of SEP(K_n)",
    6: "graph/polytope invariance over all of S_n",
    7: "automorphism census 2, 12, 48, 240",
    8: "parallelepiped lattice counts",
    9: "Ehrhart vs hull on control polytopes",
}


def _failures(report):
    return [
        (c["case"], [ch for ch in c["checks"] if not ch["pass"]])
        for c in report["cases"]
        if not all(ch["pass"] for ch in c["checks"])
    ]


def _record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    print(f"criterion {n} {'PASS' if ok else 'FAIL'}: {TITLES[n]} ({detail})")
    assert ok, detail


def _suite_criterion(n, suite, spec=FULL_CORPUS, extra=""):
    report = run_suite(suite, spec)
    bad = _failures(report)
    detail = f"{report['summary']['cases']} cases, {len(bad)} failing{extra}"
    if bad:
        detail += f"; first: {bad[0]}"
    _record(n, not bad and report["summary"]["cases"] > 0, detail)
    return report


def test_criterion_1_volume_identity():
    start = time.perf_counter()
    report = run_suite("thm-sub-vol", FULL_CORPUS)
    elapsed = time.perf_counter() - start
    bad = _failures(report)
    channels = sum(len(c["checks"]) for c in report["cases"])
    ehrhart = sum(1 for c in report["cases"] for ch in c["checks"] if ch["name"].startswith("ehrhart"))
    ok = not bad and elapsed < 600 and ehrhart > 0
    _record(1, ok, f"{report['summary']['cases']} cases, {channels} comparisons "
                   f"({ehrhart} Ehrhart), {len(bad)} failing, {elapsed:.1f}s")


def test_criterion_2_kn_volumes():
    # binom(2(m-1), m-1) / (m-1)! worked by hand: 2/1, 6/2, 20/6, 70/24, 252/120
    expected = [Fraction(2), Fraction(3), Fraction(10, 3), Fraction(35, 12), Fraction(21, 10)]
    hull = [rvol(sep_build(complete_graph(m)).polytope) for m in range(2, 7)]
    if hull != expected:
        _record(2, False, f"hull values {list(map(str, hull))}")
    _suite_criterion(2, "kn-volumes", CorpusSpec(n_max=6, families=("complete",)),
                     extra=f"; SEP(K_2..K_6) = {', '.join(map(str, hull))}")


def test_criterion_3_vertex_description():
    _suite_criterion(3, "vert-desc")


def test_criterion_4_equivalence():
    _suite_criterion(4, "equivalence")


def test_criterion_5_facets():
    report = _suite_criterion(5, "facets-kn", CorpusSpec(n_max=6, families=("complete",)))
    counts = {c["case"]["graph"]["n"]: c["checks"][0]["actual"]
              for c in report["cases"] if c["case"]["sigma"] == "()"}
    assert counts == {3: "6", 4: "14", 5: "30", 6: "62"}


def test_criterion_6_invariance():
    _suite_criterion(6, "prop-invariance")


def test_criterion_7_census():
    report = run_suite("auto-census", CorpusSpec(n_max=5, families=("complete",)))
    counts = [int(c["checks"][0]["actual"]) for c in report["cases"]]
    _record(7, counts == [2, 12, 48, 240] and not _failures(report), f"counts {counts}")


def test_criterion_8_parallelepipeds():
    _suite_criterion(8, "parallelepiped")


def test_criterion_9_oracle():
    hand = {"unit-cube": Fraction(1), "standard-simplex-3": Fraction(1, 6), "cross-polytope-3": Fraction(4, 3)}
    assert all(CONTROL_POLYTOPES[k][1] == v for k, v in hand.items())
    _suite_criterion(9, "oracle")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
