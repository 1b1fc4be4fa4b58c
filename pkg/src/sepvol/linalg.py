"""Exact rational vectors and matrices, plus integer-lattice algorithms.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of
row vectors. Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

QVector = tuple  # tuple[Fraction, ...]
QMatrix = tuple  # tuple[QVector, ...]
IntVector = tuple  # tuple[int, ...]


def qvec(values: Iterable) -> QVector:
    return tuple(Fraction(v) for v in values)


def e_vector(i: int, n: int) -> QVector:
    """Standard basis vector e_i of Q^n (1-based index)."""
    if not 1 <= i <= n:
        raise IndexError(f"index {i} out of range for dimension {n}")
    return tuple(Fraction(1 if k == i else 0) for k in range(1, n + 1))


def e_set_vector(subset: Iterable[int], n: int) -> QVector:
    """Indicator vector e_S = sum of e_i over i in S."""
    s = set(subset)
    for i in s:
        if not 1 <= i <= n:
            raise IndexError(f"index {i} out of range for dimension {n}")
    return tuple(Fraction(1 if k in s else 0) for k in range(1, n + 1))


def ones(n: int) -> QVector:
    return (Fraction(1),) * n


def zeros(n: int) -> QVector:
    return (Fraction(0),) * n


def add(x: Sequence, y: Sequence) -> QVector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence, y: Sequence) -> QVector:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Sequence) -> QVector:
    return tuple(c * a for a in x)


def neg(x: Sequence) -> QVector:
    return tuple(-a for a in x)


def dot(x: Sequence, y: Sequence):
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def matvec(rows: Sequence[Sequence], x: Sequence) -> QVector:
    return tuple(dot(r, x) for r in rows)


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b) if a and b else 0


def lcm_list(values: Iterable[int]) -> int:
    return reduce(lcm, values, 1)


def gcd_list(values: Sequence[int]) -> int:
    if len(values) == 0:
        raise ValueError("gcd of an empty list is undefined")
    return reduce(math.gcd, values)


def binomial(a: int, b: int) -> int:
    if not 0 <= b <= a:
        raise ValueError(f"binomial({a}, {b}) needs 0 <= b <= a")
    return math.comb(a, b)


def common_denominator(values: Iterable) -> int:
    return lcm_list(Fraction(v).denominator for v in values)


def primitive_integer(x: Sequence) -> IntVector:
    """Positive multiple of ``x`` with coprime integer entries (zero stays zero)."""
    d = common_denominator(x)
    ints = [int(Fraction(v) * d) for v in x]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def rational_sqrt(q) -> Fraction:
    """Exact square root of a non-negative rational; raises if irrational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError(f"negative argument {q}")
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        raise ValueError(f"{q} is not the square of a rational")
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# Gaussian elimination over Q


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    if all(isinstance(v, int) for r in rows for v in r):
        return int_rank(rows)
    return len(rref(rows)[1])


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [pv * a - f * b for a, b in zip(m[i], m[r])]
                g = reduce(math.gcd, m[i], 0)
                if g > 1:
                    m[i] = [a // g for a in m[i]]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[QVector]:
    """Basis of the right kernel {x : rows . x = 0} over Q."""
    if not rows:
        return [e_vector(i, ncols) for i in range(1, ncols + 1)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -red[r][f]
        basis.append(tuple(x))
    return basis


def det(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(v) for v in r] for r in rows]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        pv = m[c][c]
        result *= pv
        for i in range(c + 1, n):
            f = m[i][c] / pv
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> QVector | None:
    """Some rational solution of rows . x = rhs, or None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return tuple(x)


class GramVolume(NamedTuple):
    """Squared Euclidean volume of a parallelepiped; ``degenerate`` marks dependent input."""

    squared: Fraction
    degenerate: bool


def gram_volume(vectors: Sequence[Sequence]) -> GramVolume:
    """det(V V^T) for the vectors as rows of V: the squared k-volume they span."""
    if len(vectors) == 0:
        return GramVolume(Fraction(1), False)
    gram = [[dot(u, v) for v in vectors] for u in vectors]
    g = det(gram)
    return GramVolume(g, g == 0)


# ---------------------------------------------------------------------------
# Integer lattices


def column_hnf(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite normal form.

    Returns ``(h, u)`` with ``a @ u == h``, ``u`` unimodular and ``h`` in lower
    column echelon form: pivots positive, entries left of a pivot reduced into
    ``[0, pivot)``, zero columns last.
    """
    h = [list(map(int, r)) for r in a]
    nrows = len(h)
    ncols = len(h[0]) if nrows else 0
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(dst, src, f):
        # column dst -= f * column src
        for row in h:
            row[dst] -= f * row[src]
        for row in u:
            row[dst] -= f * row[src]

    def swap(i, j):
        for row in h:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def negate(j):
        for row in h:
            row[j] = -row[j]
        for row in u:
            row[j] = -row[j]

    pivot_rows = []
    c = 0
    for r in range(nrows):
        if c >= ncols:
            break
        while True:
            nz = [j for j in range(c, ncols) if h[r][j] != 0]
            if not nz:
                break
            j = min(nz, key=lambda k: abs(h[r][k]))
            if j != c:
                swap(c, j)
            done = True
            for k in range(c + 1, ncols):
                if h[r][k] != 0:
                    col_op(k, c, h[r][k] // h[r][c])
                    if h[r][k] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            negate(c)
        pivot_rows.append((r, c))
        c += 1
    for r, c in pivot_rows:
        p = h[r][c]
        for k in range(c):
            f = h[r][k] // p
            if f:
                col_op(k, c, f)
    return h, u


def row_hnf(b: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix, zero rows dropped."""
    if not b:
        return []
    h, _ = column_hnf(transpose(b))
    rows = transpose(h)
    return [r for r in rows if any(r)]


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """Basis of {x in Z^ncols : a . x = 0}."""
    if not a:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    h, u = column_hnf(a)
    r = sum(1 for j in range(ncols) if any(row[j] for row in h))
    return [tuple(u[i][j] for i in range(ncols)) for j in range(r, ncols)]


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> IntVector | None:
    """Some x in Z^n with a . x = b, or None when no integer solution exists."""
    ncols = len(a[0])
    h, u = column_hnf(a)
    y = [0] * ncols
    c = 0
    for r, row in enumerate(h):
        residual = b[r] - sum(row[j] * y[j] for j in range(c))
        if c < ncols and row[c] != 0:
            if residual % row[c]:
                return None
            y[c] = residual // row[c]
            c += 1
        elif residual != 0:
            return None
    return tuple(sum(u[i][j] * y[j] for j in range(ncols)) for i in range(ncols))


def elementary_divisors(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of an integer matrix."""
    m = [list(map(int, r)) for r in a]
    divisors = []
    while m and m[0]:
        nz = [(abs(v), i, j) for i, r in enumerate(m) for j, v in enumerate(r) if v]
        if not nz:
            break
        _, pi, pj = min(nz)
        m[0], m[pi] = m[pi], m[0]
        for r in m:
            r[0], r[pj] = r[pj], r[0]
        while True:
            p = m[0][0]
            bad = False
            for i in range(1, len(m)):
                q = m[i][0] // p
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[0])]
                if m[i][0]:
                    bad = True
            for j in range(1, len(m[0])):
                q = m[0][j] // p
                if q:
                    for r in m:
                        r[j] -= q * r[0]
                if m[0][j]:
                    bad = True
            if not bad:
                rest = [m[i][j] for i in range(1, len(m)) for j in range(1, len(m[0]))]
                off = next((v for v in rest if v % p), None)
                if off is None:
                    break
                # fold a row carrying a non-multiple into the first row
                i = next(i for i in range(1, len(m)) if any(v % p for v in m[i][1:]))
                m[0] = [x + y for x, y in zip(m[0], m[i])]
                continue
            nz = [(abs(m[i][0]), i, 0) for i in range(len(m)) if m[i][0]]
            nz += [(abs(m[0][j]), 0, j) for j in range(len(m[0])) if m[0][j]]
            _, pi, pj = min(nz)
            m[0], m[pi] = m[pi], m[0]
            for r in m:
                r[0], r[pj] = r[pj], r[0]
        divisors.append(abs(m[0][0]))
        m = [r[1:] for r in m[1:]]
    return divisors


@dataclass(frozen=True)
class IntLatticeBasis:
    """Basis of the saturated lattice span(basis) ∩ Z^n, rows in Hermite form."""

    basis: tuple[IntVector, ...]
    ambient_dim: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_saturated(self) -> bool:
        if not self.basis:
            return True
        divs = elementary_divisors(self.basis)
        return len(divs) == self.rank and all(d == 1 for d in divs)

    def coordinates(self, x: Sequence) -> QVector | None:
        """Rational coordinates of ``x`` in this basis, or None if outside the span."""
        if not self.basis:
            return () if all(v == 0 for v in x) else None
        return solve(transpose(self.basis), x)

    def gram(self) -> Fraction:
        return gram_volume(self.basis).squared


def saturated_lattice_basis(vectors: Sequence[Sequence], ambient_dim: int | None = None) -> IntLatticeBasis:
    """Basis of span_R(vectors) ∩ Z^n.

    The orthogonal complement of the span is cut out by integer equations;
    the integer kernel of those equations is the saturated lattice, returned
    in row Hermite normal form so the basis is canonical.
    """
    if ambient_dim is None:
        if not vectors:
            raise ValueError("ambient dimension needed for an empty generator set")
        ambient_dim = len(vectors[0])
    n = ambient_dim
    vecs = [v for v in vectors if any(x != 0 for x in v)]
    if not vecs:
        return IntLatticeBasis((), n)
    complement = [primitive_integer(w) for w in nullspace(vecs, n)]
    kernel = integer_kernel(complement, n) if complement else [
        tuple(int(i == j) for j in range(n)) for i in range(n)
    ]
    basis = row_hnf(kernel)
    return IntLatticeBasis(tuple(tuple(r) for r in basis), n)


def affine_equations(points: Sequence[Sequence]) -> list[tuple[IntVector, Fraction]]:
    """Integer equations (normal, rhs) cutting out the affine hull of ``points``.

    Normals are the rows of the reduced row echelon form of the orthogonal
    complement, scaled to primitive integers.
    """
    n = len(points[0])
    base = points[0]
    diffs = [sub(p, base) for p in points[1:]]
    diffs = [d for d in diffs if any(diffs_i != 0 for diffs_i in d)]
    normals = nullspace(diffs, n) if diffs else [e_vector(i, n) for i in range(1, n + 1)]
    if not normals:
        return []
    red, _ = rref(normals)
    out = []
    for row in red:
        a = primitive_integer(row)
        out.append((a, dot(a, base)))
    return out
