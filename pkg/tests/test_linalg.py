from fractions import Fraction

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given, settings

from sepvol import linalg as la

small_ints = st.integers(-6, 6)


def int_matrix(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small_ints, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def test_unit_vectors():
    assert la.e_vector(2, 4) == (0, 1, 0, 0)
    assert la.e_set_vector({1, 3}, 4) == (1, 0, 1, 0)
    assert la.e_set_vector([], 3) == (0, 0, 0)
    assert la.ones(3) == (1, 1, 1)
    with pytest.raises(IndexError):
        la.e_vector(5, 4)
    with pytest.raises(IndexError):
        la.e_vector(0, 4)


def test_vector_arithmetic_stays_exact():
    x = la.qvec([Fraction(1, 3), 2])
    y = la.qvec([Fraction(2, 3), -1])
    assert la.add(x, y) == (1, 1)
    assert la.dot(x, y) == Fraction(2, 9) - 2
    assert la.scale(3, x) == (1, 6)
    assert all(isinstance(c, Fraction) for c in la.sub(x, y))


def test_binomial_and_gcd():
    assert la.binomial(6, 3) == 20
    assert la.binomial(10, 5) == 252
    assert la.gcd_list([4, 6, 10]) == 2
    assert la.lcm_list([4, 6]) == 12
    with pytest.raises(ValueError):
        la.gcd_list([])


def test_rational_sqrt():
    assert la.rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(ValueError):
        la.rational_sqrt(2)
    with pytest.raises(ValueError):
        la.rational_sqrt(-1)


def test_gram_volume_of_unit_square_in_r3():
    g = la.gram_volume([(1, 0, 0), (0, 1, 0)])
    assert g.squared == 1 and not g.degenerate
    assert la.gram_volume([(1, 1), (2, 2)]).degenerate
    assert la.gram_volume([]).squared == 1


def test_saturated_basis_of_sum_zero_plane():
    lat = la.saturated_lattice_basis([(1, -1, 0), (0, 1, -1)])
    assert lat.rank == 2
    assert lat.is_saturated()
    assert lat.gram() == 3


def test_saturation_recovers_lost_points():
    # (2, 2) generates only even multiples; the saturation contains (1, 1)
    lat = la.saturated_lattice_basis([(2, 2)])
    assert lat.basis == ((1, 1),)


@given(int_matrix())
@settings(max_examples=80, deadline=None)
def test_rank_matches_sympy(rows):
    assert la.rank(rows) == sympy.Matrix(rows).rank()


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=80, deadline=None)
def test_determinants_match_sympy(rows):
    expected = sympy.Matrix(rows).det()
    assert la.det(rows) == expected
    assert la.int_det(rows) == expected


@given(int_matrix())
@settings(max_examples=80, deadline=None)
def test_column_hnf_is_unimodular_transform(rows):
    h, u = la.column_hnf(rows)
    assert sympy.Matrix(rows) * sympy.Matrix(u) == sympy.Matrix(h)
    assert abs(sympy.Matrix(u).det()) == 1


@given(int_matrix())
@settings(max_examples=80, deadline=None)
def test_elementary_divisors_match_sympy_smith_form(rows):
    from sympy.matrices.normalforms import smith_normal_form

    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    expected = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert sorted(la.elementary_divisors(rows)) == sorted(expected)


@given(int_matrix(cols=st.integers(2, 4)))
@settings(max_examples=60, deadline=None)
def test_integer_kernel_spans_rational_kernel(rows):
    ncols = len(rows[0])
    ker = la.integer_kernel(rows, ncols)
    assert len(ker) == ncols - la.rank(rows)
    for v in ker:
        assert all(c == 0 for c in la.matvec(rows, v))
    if ker:
        assert la.saturated_lattice_basis(ker, ncols).is_saturated()
        # integer kernel basis must itself be saturated: SNF divisors all 1
        assert all(d == 1 for d in la.elementary_divisors(ker))


@given(int_matrix(cols=st.integers(2, 4)), st.lists(small_ints, min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_solve_integer_finds_integral_preimages(rows, x):
    x = x[: len(rows[0])]
    b = la.matvec(rows, x)
    sol = la.solve_integer(rows, [int(v) for v in b])
    assert sol is not None
    assert la.matvec(rows, sol) == b


def test_solve_integer_detects_no_integral_solution():
    assert la.solve_integer([[2, 4]], [3]) is None


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_affine_equations_hold_on_points(points):
    for a, b in la.affine_equations(points):
        assert all(la.dot(a, p) == b for p in points)
    d = la.rank([la.sub(p, points[0]) for p in points[1:]]) if len(points) > 1 else 0
    assert len(la.affine_equations(points)) == 3 - d
