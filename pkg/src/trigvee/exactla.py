"""Exact rational linear algebra and the wedge-square machinery on Lambda^2 V.

Vectors are tuples of ``fractions.Fraction``, matrices are tuples of row
tuples.  Everything here is pure and immutable, so values can be shared and
hashed freely.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rat = Fraction
Vec = tuple[Fraction, ...]
Mat = tuple[tuple[Fraction, ...], ...]


class SingularMatrixError(ZeroDivisionError):
    """Raised when a matrix that must be invertible is degenerate."""


def rat(x) -> Fraction:
    """Coerce ints, strings like '-3/7' and Fractions to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs: Iterable) -> Vec:
    return tuple(rat(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def zeros(n: int, m: int | None = None) -> Mat:
    m = n if m is None else m
    row = (Fraction(0),) * m
    return tuple(row for _ in range(n))


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch: %d vs %d" % (len(u), len(v)))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Fraction, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def is_zero_vec(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def mat_vec(m: Mat, v: Sequence[Fraction]) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_eq(a: Mat, b: Mat) -> bool:
    return a == b


def is_symmetric(m: Mat) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def outer(u: Vec, v: Vec) -> Mat:
    return tuple(tuple(a * b for b in v) for a in u)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: Fraction, m: Mat) -> Mat:
    return tuple(tuple(c * x for x in row) for row in m)


def _scaled_int_rows(m: Mat) -> tuple[list[list[int]], int]:
    """Clear denominators: return (L*m as int rows, L)."""
    scale = 1
    for row in m:
        for x in row:
            scale = lcm(scale, x.denominator)
    return [[int(x * scale) for x in row] for row in m], scale


def invert(m: Mat) -> Mat:
    """Exact inverse of a square rational matrix.

    Fraction-free (Bareiss) forward elimination on the integer matrix
    obtained by clearing denominators, followed by rational back
    substitution on the triangular system.  Intermediate entries stay
    integral with bounded growth.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return ()
    a, scale = _scaled_int_rows(m)
    aug = [list(row) + [scale if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        for i in range(k + 1, n):
            aik = aug[i][k]
            rowi, rowk = aug[i], aug[k]
            for j in range(k, 2 * n):
                rowi[j] = (pk * rowi[j] - aik * rowk[j]) // prev
        prev = pk
    if aug[n - 1][n - 1] == 0:
        raise SingularMatrixError("matrix is singular")
    # back substitution, one column of the inverse at a time
    cols = []
    for c in range(n, 2 * n):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            s = Fraction(aug[i][c])
            for j in range(i + 1, n):
                s -= aug[i][j] * x[j]
            x[i] = s / aug[i][i]
        cols.append(x)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def rref(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (reduced rows, pivot columns)."""
    a = [list(map(rat, r)) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Iterable[Sequence], ncols: int) -> list[Vec]:
    """Standard basis of the right nullspace from the RREF (deterministic)."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def in_row_span(red: list[list[Fraction]], pivots: list[int], v: Sequence[Fraction]) -> bool:
    """Membership of v in the row space described by an RREF."""
    w = list(map(rat, v))
    for i, p in enumerate(pivots):
        if w[p] != 0:
            f = w[p]
            w = [x - f * y for x, y in zip(w, red[i])]
    return all(x == 0 for x in w)


def primitive(v: Sequence[Fraction]) -> Vec:
    """Integer-primitive representative of the ray through v, positive leading entry."""
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    from math import gcd

    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    lead = next(x for x in ints if x != 0)
    sign = 1 if lead > 0 else -1
    return tuple(Fraction(sign * x, g) for x in ints)


# --- Lambda^2 V bookkeeping -------------------------------------------------
#
# Basis bivectors are e_i ^ e_j = e_i (x) e_j - e_j (x) e_i for i < j, ordered
# lexicographically; a wedge form is a symmetric rational matrix over that
# basis.


def wedge_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def wedge_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(wedge_pairs(n))}


def wedge_eval(alpha: Vec, beta: Vec, pair: tuple[int, int]) -> Fraction:
    """B_{alpha,beta} evaluated on the basis bivector e_i ^ e_j.

    Equals 2*(alpha_i beta_j - alpha_j beta_i); antisymmetric and bilinear
    in (alpha, beta).
    """
    if len(alpha) != len(beta):
        raise ValueError("dimension mismatch")
    i, j = pair
    return 2 * (alpha[i] * beta[j] - alpha[j] * beta[i])


def wedge_vector(alpha: Vec, beta: Vec, pairs: tuple[tuple[int, int], ...] | None = None) -> Vec:
    pairs = wedge_pairs(len(alpha)) if pairs is None else pairs
    return tuple(wedge_eval(alpha, beta, p) for p in pairs)


def wedge_square(alpha: Vec, beta: Vec) -> Mat:
    """(alpha ^ beta)^2 as a rank-<=1 form on Lambda^2 V."""
    w = wedge_vector(alpha, beta)
    return outer(w, w)


def zero_wedge_form(n: int) -> Mat:
    k = n * (n - 1) // 2
    return zeros(k, k)
