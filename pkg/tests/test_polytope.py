import itertools
import math
from fractions import Fraction

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import assume, given, settings
from scipy.spatial import ConvexHull

from sepvol import linalg as la
from sepvol.polytope import (
    EmptyPolytopeError,
    convex_hull,
    facets_adjacent,
    parallelepiped_lattice_count,
    polytope_json,
    pulling_triangulation,
    rvol,
)

coords = st.integers(-4, 4)


def point_sets(dim, min_size, max_size=9):
    return st.lists(st.tuples(*[coords] * dim), min_size=min_size, max_size=max_size, unique=True)


def full_dimensional(points):
    return la.rank([la.sub(p, points[0]) for p in points[1:]]) == len(points[0])


def pick_area(vertices):
    """Area of a lattice polygon from Pick's theorem: A = I + B/2 - 1."""
    vs = [tuple(map(int, v)) for v in vertices]
    # order vertices by angle around the centroid
    cx = sum(v[0] for v in vs) / len(vs)
    cy = sum(v[1] for v in vs) / len(vs)
    vs.sort(key=lambda v: math.atan2(v[1] - cy, v[0] - cx))
    boundary = sum(math.gcd(abs(a[0] - b[0]), abs(a[1] - b[1])) for a, b in zip(vs, vs[1:] + vs[:1]))
    xs = [v[0] for v in vs]
    ys = [v[1] for v in vs]
    inside = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            strictly = True
            for a, b in zip(vs, vs[1:] + vs[:1]):
                cross = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0])
                if cross <= 0:
                    strictly = False
                    break
            inside += strictly
    return inside + Fraction(boundary, 2) - 1


def test_unit_square():
    p = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert p.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert p.dim == 2
    assert p.facet_count == 4
    assert rvol(p) == 1


def test_cube_and_simplex():
    cube = convex_hull(list(itertools.product((0, 1), repeat=3)))
    assert (len(cube.vertices), cube.facet_count) == (8, 6)
    assert rvol(cube) == 1
    simplex = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert rvol(simplex) == Fraction(1, 6)


def test_lower_dimensional_triangle():
    p = convex_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert p.dim == 2
    assert len(p.equalities) == 1
    assert rvol(p) == Fraction(1, 2)


def test_single_point_and_empty():
    p = convex_hull([(0, 0, 0)])
    assert p.dim == 0 and p.facet_count == 0
    assert rvol(p) == 1
    with pytest.raises(EmptyPolytopeError):
        convex_hull([])


def test_segment_with_rational_endpoints():
    p = convex_hull([(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3), -1), (Fraction(-1, 3),) * 3 + (1,)])
    assert p.dim == 1
    # the line through the segment meets Z^4 in multiples of (1, 1, 1, -3)
    assert rvol(p) == Fraction(2, 3)


def test_json_is_canonical_strings():
    doc = polytope_json(convex_hull([(0, 0), (2, 0), (0, 3)]))
    assert doc["vertices"] == [["0", "0"], ["0", "3"], ["2", "0"]]
    assert all(isinstance(c, str) for ineq in doc["inequalities"] for c in ineq["normal"])


@given(point_sets(2, 3))
@settings(max_examples=120, deadline=None)
def test_polygon_area_matches_pick(points):
    assume(full_dimensional(points))
    p = convex_hull(points)
    assert rvol(p) == pick_area(p.vertices)


@given(point_sets(3, 4, 10))
@settings(max_examples=80, deadline=None)
def test_hull_agrees_with_qhull(points):
    assume(full_dimensional(points))
    p = convex_hull(points)
    q = ConvexHull(np.array(points, dtype=float))
    assert set(p.vertices) == {tuple(points[i]) for i in q.vertices}
    assert Fraction(q.volume).limit_denominator(1000) == rvol(p)


@given(point_sets(3, 1, 8))
@settings(max_examples=80, deadline=None)
def test_h_description_contains_generators_tightly(points):
    p = convex_hull(points)
    for x in points:
        assert p.h.contains(x)
    for k, (a, b) in enumerate(p.inequalities):
        on = p.facet_vertices[k]
        assert all(la.dot(a, p.vertices[i]) == b for i in on)
        assert all(la.dot(a, p.vertices[i]) < b for i in range(len(p.vertices)) if i not in on)
        assert la.rank([la.sub(p.vertices[i], p.vertices[min(on)]) for i in on]) == p.dim - 1


@given(point_sets(3, 4, 8), st.integers(2, 3))
@settings(max_examples=40, deadline=None)
def test_rvol_scales_with_dilation(points, k):
    p = convex_hull(points)
    assume(p.dim >= 1)
    q = convex_hull([la.scale(k, x) for x in points])
    assert rvol(q) == k ** p.dim * rvol(p)


@given(point_sets(2, 3, 7), st.tuples(coords, coords, coords))
@settings(max_examples=60, deadline=None)
def test_rvol_invariant_under_lattice_embedding(points, shift):
    assume(full_dimensional(points))
    # (x, y) -> (x, y, x + 2y) + shift maps Z^2 onto the lattice of a plane in Z^3
    lifted = [la.add((x, y, x + 2 * y), shift) for x, y in points]
    assert rvol(convex_hull(lifted)) == rvol(convex_hull(points))


def test_pulling_triangulation_of_square_has_two_triangles():
    p = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    tri = pulling_triangulation(p)
    assert len(tri) == 2
    assert all(len(s) == 3 for s in tri)


def test_octahedron_adjacency():
    pts = [tuple(s * (k == i) for k in range(3)) for i in range(3) for s in (1, -1)]
    p = convex_hull(pts)
    assert p.facet_count == 8
    adj = sum(facets_adjacent(p, i, j) for i, j in itertools.combinations(range(8), 2))
    assert adj == 12  # one per edge of the octahedron
    assert not facets_adjacent(p, 0, 0)


def test_parallelepiped_counts():
    assert parallelepiped_lattice_count([(2, 0), (0, 3)]) == 6
    assert parallelepiped_lattice_count([(1, 1), (1, -1)]) == 2
    # in a 2-plane of R^3: the saturated lattice decides the count
    assert parallelepiped_lattice_count([(2, -2, 0), (0, 2, -2)]) == 4
    assert parallelepiped_lattice_count([]) == 1
    with pytest.raises(ValueError):
        parallelepiped_lattice_count([(1, 1), (2, 2)])


@given(st.lists(st.tuples(coords, coords, coords), min_size=1, max_size=3))
@settings(max_examples=80, deadline=None)
def test_parallelepiped_count_is_lattice_index(vectors):
    assume(la.rank(vectors) == len(vectors))
    lat = la.saturated_lattice_basis(vectors, 3)
    coords_ = [lat.coordinates(v) for v in vectors]
    assert parallelepiped_lattice_count(vectors) == abs(la.det(coords_))
