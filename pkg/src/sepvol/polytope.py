"""Exact convex hulls, triangulation volumes and lattice-normalized volume.

Hulls are computed by beneath-beyond inside the affine hull of the input:
points are projected onto the free coordinates of the affine equations,
scaled to integers, and inserted in lexicographic order.  Facet normals are
therefore zero on the pivot columns of the (row-reduced) equalities, which
gives every halfspace a canonical representative modulo the affine hull.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .linalg import IntLatticeBasis

Halfspace = tuple  # (normal: IntVector, rhs: Fraction), meaning normal . x <= rhs


class EmptyPolytopeError(ValueError):
    pass


class NoLatticePointError(ValueError):
    """The affine span contains no integer point, so rvol has no normalizer."""


@dataclass(frozen=True)
class HPolytope:
    """{x : a.x == b for equalities, a.x <= b for inequalities}."""

    ambient_dim: int
    equalities: tuple = ()
    inequalities: tuple = ()

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        return membership(self, x, strict=strict)


def membership(h: HPolytope, x: Sequence, strict: bool = False) -> bool:
    """Exact membership; with ``strict`` every inequality must hold strictly."""
    if len(x) != h.ambient_dim:
        raise ValueError("dimension mismatch")
    if any(la.dot(a, x) != b for a, b in h.equalities):
        return False
    if strict:
        return all(la.dot(a, x) < b for a, b in h.inequalities)
    return all(la.dot(a, x) <= b for a, b in h.inequalities)


def canonical_halfspace(normal: Sequence, rhs, equalities: Sequence[Halfspace]) -> Halfspace:
    """Representative of {normal.x <= rhs} modulo the given (row-reduced) equalities.

    The normal is cleared on each equality's pivot column and scaled by a
    positive factor to a primitive integer vector.
    """
    a = [Fraction(v) for v in normal]
    b = Fraction(rhs)
    for e, c in equalities:
        piv = next(i for i, v in enumerate(e) if v != 0)
        if a[piv] != 0:
            f = a[piv] / e[piv]
            a = [x - f * y for x, y in zip(a, e)]
            b -= f * c
    prim = la.primitive_integer(a)
    nz = next((i for i, v in enumerate(a) if v != 0), None)
    if nz is None:
        return tuple(prim), b
    factor = Fraction(prim[nz]) / a[nz]
    return tuple(prim), b * factor


@dataclass(frozen=True)
class Polytope:
    """A polytope held in both representations.

    ``vertices`` are sorted lexicographically; ``inequalities`` are the
    irredundant facet halfspaces sorted by (normal, rhs); ``facet_vertices[k]``
    holds the indices of the vertices on facet ``k``.
    """

    ambient_dim: int
    vertices: tuple
    equalities: tuple
    inequalities: tuple
    facet_vertices: tuple

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equalities)

    @property
    def h(self) -> HPolytope:
        return HPolytope(self.ambient_dim, self.equalities, self.inequalities)

    @property
    def facet_count(self) -> int:
        return len(self.inequalities)

    def to_json(self) -> dict:
        return polytope_json(self)


def fraction_str(q) -> str:
    """"p/q", or just "p" for integers."""
    return str(Fraction(q))


def polytope_json(p: Polytope) -> dict:
    """Canonical JSON document; rationals are "p/q" strings."""
    return {
        "ambient": p.ambient_dim,
        "vertices": [[fraction_str(c) for c in v] for v in p.vertices],
        "equalities": [
            {"normal": [fraction_str(c) for c in a], "rhs": fraction_str(b)} for a, b in p.equalities
        ],
        "inequalities": [
            {"normal": [fraction_str(c) for c in a], "rhs": fraction_str(b)} for a, b in p.inequalities
        ],
    }


def _affine_dim(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    base = points[0]
    return la.int_rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _hyperplane_through(points: Sequence[Sequence[int]], interior: Sequence[int], weight: int):
    """Primitive integer (a, b) with a.x = b through ``points``, oriented so
    that a.interior < b * weight (``interior`` is a scaled interior point)."""
    base = points[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    dim = len(base)
    kernel = la.nullspace(diffs, dim) if diffs else [la.e_vector(1, dim)]
    if len(kernel) != 1:
        raise AssertionError("facet candidate does not span a hyperplane")
    a = la.primitive_integer(kernel[0])
    b = sum(x * y for x, y in zip(a, base))
    side = sum(x * y for x, y in zip(a, interior)) - b * weight
    if side == 0:
        raise AssertionError("interior point lies on a facet hyperplane")
    if side > 0:
        a = tuple(-x for x in a)
        b = -b
    return tuple(a), b


def _beneath_beyond(points: list[tuple[int, ...]], d: int):
    """Full-dimensional hull of integer points in Z^d.

    Returns (vertex indices, facets) where facets map (normal, rhs) to the
    set of point indices lying on that hyperplane.
    """
    # initial simplex: greedy in input (lexicographic) order
    simplex = [0]
    for k in range(1, len(points)):
        if _affine_dim([points[i] for i in simplex + [k]]) == len(simplex):
            simplex.append(k)
            if len(simplex) == d + 1:
                break
    assert len(simplex) == d + 1, "points are not full-dimensional"
    interior = [sum(points[i][c] for i in simplex) for c in range(d)]
    weight = d + 1

    facets: dict = {}
    for omit in simplex:
        members = [i for i in simplex if i != omit]
        facets[_hyperplane_through([points[i] for i in members], interior, weight)] = set(members)

    in_simplex = set(simplex)
    for k, p in enumerate(points):
        if k in in_simplex:
            continue
        visible, coplanar, hidden = [], [], []
        for key in facets:
            a, b = key
            s = sum(x * y for x, y in zip(a, p)) - b
            (visible if s > 0 else coplanar if s == 0 else hidden).append(key)
        if not visible:
            continue  # inside the current hull, never a vertex
        new: dict = {}
        for fv in visible:
            for g in coplanar + hidden:
                ridge = facets[fv] & facets[g]
                if _affine_dim([points[i] for i in ridge]) != d - 2:
                    continue
                if g in coplanar:
                    facets[g].add(k)
                    continue
                pts = [p] + [points[i] for i in sorted(ridge)]
                key = _hyperplane_through(pts, interior, weight)
                new.setdefault(key, set()).update(ridge)
                new[key].add(k)
        for fv in visible:
            del facets[fv]
        for key, members in new.items():
            facets.setdefault(key, set()).update(members)

    candidates = sorted(set().union(*facets.values()))
    vertices = []
    for i in candidates:
        normals = [a for (a, _), members in facets.items() if i in members]
        if la.int_rank(normals) == d:
            vertices.append(i)
    return vertices, facets


def _free_columns(equalities: Sequence[Halfspace], n: int) -> list[int]:
    pivots = {next(i for i, v in enumerate(a) if v != 0) for a, _ in equalities}
    return [c for c in range(n) if c not in pivots]


def convex_hull(generators: Sequence[Sequence]) -> Polytope:
    """Vertices and irredundant facets of conv(generators), exactly."""
    if len(generators) == 0:
        raise EmptyPolytopeError("convex hull of no points")
    n = len(generators[0])
    if any(len(g) != n for g in generators):
        raise ValueError("generators have different lengths")
    pts = sorted(set(la.qvec(g) for g in generators))
    equalities = tuple(la.affine_equations(pts))
    d = n - len(equalities)
    if d == 0:
        return Polytope(n, (pts[0],), equalities, (), ())

    free = _free_columns(equalities, n)
    denom = la.common_denominator(v[c] for v in pts for c in free)
    proj = [tuple(int(v[c] * denom) for c in free) for v in pts]
    vert_idx, facets = _beneath_beyond(proj, d)

    vertices = tuple(pts[i] for i in vert_idx)
    pos = {i: k for k, i in enumerate(vert_idx)}
    halfspaces = []
    for (a, b), members in facets.items():
        normal = [0] * n
        for c, coef in zip(free, a):
            normal[c] = coef
        on = frozenset(pos[i] for i in members if i in pos)
        halfspaces.append(((tuple(normal), Fraction(b, denom)), on))
    halfspaces.sort(key=lambda t: t[0])
    return Polytope(
        ambient_dim=n,
        vertices=vertices,
        equalities=equalities,
        inequalities=tuple(h for h, _ in halfspaces),
        facet_vertices=tuple(on for _, on in halfspaces),
    )


def dimension(p: Polytope) -> int:
    """Affine dimension of the vertex set (0 for a point)."""
    base = p.vertices[0]
    return la.rank([la.sub(v, base) for v in p.vertices[1:]]) if len(p.vertices) > 1 else 0


def _vertex_affine_dim(p: Polytope, ids) -> int:
    ids = sorted(ids)
    if not ids:
        return -1
    base = p.vertices[ids[0]]
    return la.rank([la.sub(p.vertices[i], base) for i in ids[1:]]) if len(ids) > 1 else 0


def facets_adjacent(p: Polytope, f1: int, f2: int) -> bool:
    """Facets meet in a ridge (a face of dimension d - 2); a facet is not adjacent to itself."""
    if f1 == f2:
        return False
    common = p.facet_vertices[f1] & p.facet_vertices[f2]
    return _vertex_affine_dim(p, common) == p.dim - 2


# ---------------------------------------------------------------------------
# Volumes


@dataclass(frozen=True)
class TriangulationVolume:
    """Volume of a d-polytope measured in the coordinates of ``frame``.

    ``frame`` is a basis of the direction space of the affine hull; the
    squared Euclidean d-volume is ``frame_volume**2 * gram(frame)``.
    """

    frame: tuple
    frame_volume: Fraction
    simplices: tuple = field(repr=False)

    @property
    def squared_euclidean(self) -> Fraction:
        return self.frame_volume ** 2 * la.gram_volume(self.frame).squared


def _frame(p: Polytope) -> tuple[list[int], tuple]:
    """Free columns of the equalities and the direction vectors they parametrize."""
    n = p.ambient_dim
    free = _free_columns(p.equalities, n)
    frame = []
    for c in free:
        vec = [Fraction(0)] * n
        vec[c] = Fraction(1)
        for a, _ in p.equalities:
            piv = next(i for i, v in enumerate(a) if v != 0)
            vec[piv] = -Fraction(a[c], a[piv])
        frame.append(tuple(vec))
    return free, tuple(frame)


def pulling_triangulation(p: Polytope) -> list[tuple[int, ...]]:
    """Simplices (vertex index tuples) of the pulling triangulation.

    Each face is coned from its lexicographically least vertex over its own
    facets not containing that vertex; facets of a face F are the maximal sets
    F ∩ G (G a facet of p) of dimension dim(F) - 1.
    """
    facet_sets = [frozenset(f) for f in p.facet_vertices]
    dims: dict = {}

    def adim(ids: frozenset) -> int:
        if ids not in dims:
            dims[ids] = _vertex_affine_dim(p, ids)
        return dims[ids]

    memo: dict = {}

    def pull(face: frozenset, k: int) -> list[tuple]:
        if face in memo:
            return memo[face]
        if k == 0:
            out = [(min(face),)]
        else:
            apex = min(face)  # vertices are lexicographically sorted
            subfaces = set()
            for g in facet_sets:
                s = face & g
                if s != face and len(s) >= k and adim(s) == k - 1:
                    subfaces.add(s)
            out = []
            for s in sorted(subfaces, key=sorted):
                if apex in s:
                    continue
                out.extend((apex,) + simplex for simplex in pull(s, k - 1))
        memo[face] = out
        return out

    return pull(frozenset(range(len(p.vertices))), p.dim)


def triangulate_volume(p: Polytope) -> TriangulationVolume:
    d = p.dim
    if d < 1:
        raise ValueError("triangulation volume needs dimension >= 1")
    free, frame = _frame(p)
    simplices = pulling_triangulation(p)
    coords = [tuple(v[c] for c in free) for v in p.vertices]
    total = Fraction(0)
    for s in simplices:
        base = coords[s[0]]
        vol = abs(la.det([la.sub(coords[i], base) for i in s[1:]]))
        if vol == 0:
            raise AssertionError("degenerate simplex in triangulation")
        total += vol
    return TriangulationVolume(frame, total / math.factorial(d), tuple(simplices))


@dataclass(frozen=True)
class AffineLattice:
    """anchor + Z-span(basis): the integer points of a polytope's affine hull."""

    anchor: tuple
    basis: IntLatticeBasis


def affine_lattice(p: Polytope) -> AffineLattice:
    n = p.ambient_dim
    for a, b in p.equalities:
        if b.denominator != 1:
            raise NoLatticePointError(f"equation {a}.x = {b} has no integer solution")
    integral = next((v for v in p.vertices if all(c.denominator == 1 for c in v)), None)
    if integral is not None:
        anchor = tuple(int(c) for c in integral)
    elif p.equalities:
        anchor = la.solve_integer([a for a, _ in p.equalities], [int(b) for _, b in p.equalities])
        if anchor is None:
            raise NoLatticePointError("affine span contains no integer point")
    else:
        anchor = (0,) * n
    base = p.vertices[0]
    basis = la.saturated_lattice_basis([la.sub(v, base) for v in p.vertices[1:]], n)
    return AffineLattice(tuple(anchor), basis)


def rvol(p: Polytope) -> Fraction:
    """Relative volume: Euclidean volume over the fundamental cell volume of
    the lattice in the affine span.  A point has rvol 1."""
    lattice = affine_lattice(p)
    if p.dim == 0:
        return Fraction(1)
    tri = triangulate_volume(p)
    ratio = tri.squared_euclidean / lattice.basis.gram()
    return la.rational_sqrt(ratio)


def parallelepiped_lattice_count(vectors: Sequence[Sequence]) -> int:
    """Integer points in {sum l_i v_i : 0 <= l_i < 1} by enumeration.

    Enumerates lattice coordinates over the bounding box of the cell and
    keeps the points whose coefficients fall in [0, 1).
    """
    if not vectors:
        return 1
    if any(Fraction(c).denominator != 1 for v in vectors for c in v):
        raise ValueError("parallelepiped generators must be integral")
    if la.rank(vectors) != len(vectors):
        raise ValueError("parallelepiped generators must be linearly independent")
    n = len(vectors[0])
    lattice = la.saturated_lattice_basis(vectors, n)
    k = lattice.rank
    m = [[int(c) for c in lattice.coordinates(v)] for v in vectors]  # k x k, rows = generators
    det = la.int_det(m)
    inv = [[Fraction(x) for x in row] for row in _inverse(m)]
    # lambda = z . m^{-1}; scale by |det| to stay in integers
    sgn = 1 if det > 0 else -1
    adj = [[int(x * det * sgn) for x in row] for row in inv]
    bound = abs(det)
    lo = [min(sum(m[i][j] for i in subset) for subset in _subsets(k)) for j in range(k)]
    hi = [max(sum(m[i][j] for i in subset) for subset in _subsets(k)) for j in range(k)]
    count = 0
    for z in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        ok = True
        for j in range(k):
            s = sum(z[i] * adj[i][j] for i in range(k))
            if not 0 <= s < bound:
                ok = False
                break
        count += ok
    return count


def _subsets(k: int):
    return [c for r in range(k + 1) for c in itertools.combinations(range(k), r)]


def _inverse(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    k = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(m)]
    red, _ = la.rref(aug)
    return [row[k:] for row in red]
