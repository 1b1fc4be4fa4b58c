"""Lattice-point counts of integer dilates and the Ehrhart leading coefficient.

This is the brute-force volume channel: it shares nothing with the
triangulation code beyond the H-representation it tests membership against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from .polytope import Polytope

MAX_DIM = 4
_INT64_SAFE = 2**62


class InterpolationError(ArithmeticError):
    """Dilate counts do not fit a polynomial of the expected degree."""


@dataclass(frozen=True)
class DilateCount:
    t: int
    count: int


def _integer_frame(p: Polytope, t: int):
    """Anchor x0 in Z^n and lattice basis rows L of the affine hull of tP, or None."""
    eqs = p.equalities
    rhs = [t * b for _, b in eqs]
    if any(r.denominator != 1 for r in rhs):
        return None
    n = p.ambient_dim
    if eqs:
        a = [list(e) for e, _ in eqs]
        x0 = la.solve_integer(a, [int(r) for r in rhs])
        if x0 is None:
            return None
        basis = la.row_hnf(la.integer_kernel(a, n))
    else:
        x0 = (0,) * n
        basis = [[int(i == j) for j in range(n)] for i in range(n)]
    return x0, basis


def count_dilate(p: Polytope, t: int, interior: bool = False) -> DilateCount:
    """|tP ∩ Z^n| (relative interior points only if ``interior``).

    Walks integer coordinates of the lattice of the affine hull of tP over a
    bounding box, testing the dilated inequalities a.x <= t*b.
    """
    if t < 0:
        raise ValueError("dilation factor must be non-negative")
    if p.dim > MAX_DIM:
        raise ValueError(f"dilate counting is capped at dimension {MAX_DIM}, got {p.dim}")
    if t == 0:
        return DilateCount(0, 0 if interior and p.dim > 0 else 1)
    frame = _integer_frame(p, t)
    if frame is None:
        return DilateCount(t, 0)
    x0, basis = frame
    k = len(basis)
    if k == 0:
        inside = all(la.dot(a, x0) <= t * b for a, b in p.inequalities)
        return DilateCount(t, int(inside))

    lattice = la.IntLatticeBasis(tuple(map(tuple, basis)), p.ambient_dim)
    coords = [lattice.coordinates(la.sub(la.scale(t, v), x0)) for v in p.vertices]
    lo = [math.floor(min(c[j] for c in coords)) for j in range(k)]
    hi = [math.ceil(max(c[j] for c in coords)) for j in range(k)]

    # a.(x0 + z L) <= t b  <=>  (a L^T) z <= floor(t b - a.x0), all integral
    A = [[sum(ai * li for ai, li in zip(a, row)) for row in basis] for a, _ in p.inequalities]
    bounds = []
    for a, b in p.inequalities:
        slack = t * b - sum(ai * xi for ai, xi in zip(a, x0))
        if interior:
            bounds.append(math.ceil(slack) - 1)  # strict: a.x < slack
        else:
            bounds.append(math.floor(slack))

    span = max(max(abs(v) for v in lo + hi), 1)
    big = max((abs(v) for row in A for v in row), default=0) * span * k + max(map(abs, bounds), default=0)
    dtype = np.int64 if big < _INT64_SAFE else object
    A_np = np.array(A, dtype=dtype).reshape(len(A), k)
    b_np = np.array(bounds, dtype=dtype)

    # first coordinate in a Python loop, the rest vectorized
    rest = [np.arange(lo[j], hi[j] + 1, dtype=dtype) for j in range(1, k)]
    if rest:
        grid = np.stack([g.ravel() for g in np.meshgrid(*rest, indexing="ij")], axis=1)
    else:
        grid = np.zeros((1, 0), dtype=dtype)
    partial = grid @ A_np[:, 1:].T if k > 1 else np.zeros((1, len(A)), dtype=dtype)
    total = 0
    for z0 in range(lo[0], hi[0] + 1):
        vals = partial + z0 * A_np[:, 0]
        total += int(np.count_nonzero(np.all(vals <= b_np, axis=1)))
    return DilateCount(t, total)


def period(p: Polytope) -> int:
    """lcm of the vertex-coordinate denominators (a period of the quasipolynomial)."""
    return la.lcm_list(c.denominator for v in p.vertices for c in v)


def _newton(nodes: list[int], values: list[int]):
    """Divided-difference coefficients of the interpolating polynomial."""
    coef = [Fraction(v) for v in values]
    for j in range(1, len(nodes)):
        for i in range(len(nodes) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])
    return coef


def _newton_eval(nodes: list[int], coef: list[Fraction], x) -> Fraction:
    result = coef[-1]
    for i in range(len(coef) - 2, -1, -1):
        result = result * (x - nodes[i]) + coef[i]
    return result


@dataclass(frozen=True)
class EhrhartFit:
    """Polynomial in k fitted to counts at t = k * period, k = 1..d+1."""

    period: int
    dim: int
    counts: tuple
    coefficients: tuple  # Newton form in k

    def at(self, k) -> Fraction:
        return _newton_eval(list(range(1, self.dim + 2)), list(self.coefficients), k)

    @property
    def leading_coefficient(self) -> Fraction:
        # top divided difference is the k^d coefficient; rescale to t = k p
        return self.coefficients[-1] / Fraction(self.period) ** self.dim


def ehrhart_fit(p: Polytope, d: int | None = None, extra_check: bool = True) -> EhrhartFit:
    if d is None:
        d = p.dim
    if d != p.dim:
        raise ValueError(f"stated dimension {d} differs from polytope dimension {p.dim}")
    per = period(p)
    nodes = list(range(1, d + 2))
    counts = [count_dilate(p, k * per) for k in nodes]
    coef = _newton(nodes, [c.count for c in counts])
    fit = EhrhartFit(per, d, tuple(counts), tuple(coef))
    # kpP is a lattice polytope: its Ehrhart polynomial has constant term 1
    if fit.at(0) != 1:
        raise InterpolationError(f"interpolated value at t=0 is {fit.at(0)}, expected 1")
    if extra_check:
        k = d + 2
        extra = count_dilate(p, k * per).count
        if fit.at(k) != extra:
            raise InterpolationError(f"count {extra} at t={k * per} off the fitted polynomial ({fit.at(k)})")
    return fit


def leading_coefficient(p: Polytope, d: int | None = None, extra_check: bool = True) -> Fraction:
    """Coefficient of t^d in the Ehrhart quasipolynomial; equals rvol(p)."""
    if (d if d is not None else p.dim) == 0:
        return Fraction(1)
    return ehrhart_fit(p, d, extra_check).leading_coefficient
