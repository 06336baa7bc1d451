"""Determinants of matrices with multivariate polynomial entries.

Two independent strategies are provided and cross-checked in the tests:

* ``bareiss``: fraction-free elimination in the polynomial ring, with exact
  divisions guaranteed by the Sylvester identity.
* ``interpolate``: evaluation at integer grid points with per-variable degree
  bounds read off the entries, followed by multivariate Newton interpolation.

The interpolation evaluator doubles as the workhorse for pulled-back
discriminants, where the caller supplies (probed) degree bounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import ResourceLimitError
from .linalg import det_int
from .poly import MultiPoly

ZERO = Fraction(0)
ONE = Fraction(1)


def det_poly_matrix(M: Sequence[Sequence[MultiPoly]], strategy: str = "bareiss") -> MultiPoly:
    """Exact determinant of a square MultiPoly matrix."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    ring = M[0][0].ring
    for row in M:
        if len(row) != n:
            raise ValueError("matrix is not square")
        for p in row:
            if p.ring != ring:
                raise ValueError("mixed rings in matrix")
    if strategy == "bareiss":
        return det_bareiss(M)
    if strategy == "interpolate":
        return det_interpolate(M)
    raise ValueError(f"unknown strategy {strategy!r}")


def det_bareiss(M: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    n = len(M)
    ring = M[0][0].ring
    m = [[p for p in row] for row in M]
    sign = 1
    prev = MultiPoly.constant(ring, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if piv is None:
                return MultiPoly.zero(ring)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = pkk * m[i][j] - mik * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = MultiPoly.zero(ring)
        prev = pkk
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def degree_bounds(M: Sequence[Sequence[MultiPoly]]) -> list[int]:
    """Safe per-variable degree bounds for det(M): min of row and column sums."""
    n = len(M)
    ring = M[0][0].ring
    bounds = []
    for v in ring:
        row_sum = sum(max(M[i][j].degree_in(v) for j in range(n)) for i in range(n))
        col_sum = sum(max(M[i][j].degree_in(v) for i in range(n)) for j in range(n))
        bounds.append(min(row_sum, col_sum))
    return bounds


def det_interpolate(
    M: Sequence[Sequence[MultiPoly]],
    bounds: Sequence[int] | None = None,
    max_points: int = 2_000_000,
) -> MultiPoly:
    """Determinant by grid evaluation and Newton interpolation.

    ``bounds`` overrides the safe per-variable degree bounds; the grid has
    prod(bounds[i]+1) points, evaluated by partial substitution so shared
    prefixes are not recomputed.
    """
    ring = M[0][0].ring
    if bounds is None:
        bounds = degree_bounds(M)
    npts = 1
    for b in bounds:
        npts *= b + 1
    if npts > max_points:
        raise ResourceLimitError(
            f"interpolation grid of {npts} points exceeds cap {max_points}",
            kind="interpolation-grid",
            limit=max_points,
        )
    values = _det_on_grid(M, ring, bounds)
    poly = _newton_interpolate(ring, bounds, values)
    return poly


def _det_on_grid(M, ring, bounds) -> dict[tuple[int, ...], Fraction]:
    """Evaluate det(M) at every integer grid point 0..bounds[i]."""
    values: dict[tuple[int, ...], Fraction] = {}

    def rec(mat, var_index, prefix):
        if var_index == len(ring):
            values[prefix] = _det_rational([[p.constant_value() for p in row] for row in mat])
            return
        v = ring[var_index]
        for a in range(bounds[var_index] + 1):
            sub = [[p.substitute_partial({v: Fraction(a)}) for p in row] for row in mat]
            rec(sub, var_index + 1, prefix + (a,))

    rec(M, 0, ())
    return values


def _det_rational(entries: list[list[Fraction]]) -> Fraction:
    scale = ONE
    m: list[list[int]] = []
    for row in entries:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        scale /= den
        m.append([int(x * den) for x in row])
    return scale * det_int(m)


def _newton_interpolate(ring, bounds, values) -> MultiPoly:
    """Recursive multivariate Newton interpolation on the 0..b integer grid."""

    def interp(prefix, var_index) -> MultiPoly:
        if var_index == len(ring):
            return MultiPoly.constant(ring, values[prefix])
        b = bounds[var_index]
        polys = [interp(prefix + (a,), var_index + 1) for a in range(b + 1)]
        # divided differences in the variable ring[var_index], nodes 0..b
        dd = list(polys)
        for level in range(1, b + 1):
            for i in range(b, level - 1, -1):
                dd[i] = (dd[i] - dd[i - 1]).scale(Fraction(1, level))
        x = MultiPoly.variable(ring, ring[var_index])
        acc = dd[b]
        for i in range(b - 1, -1, -1):
            node = MultiPoly.constant(ring, i)
            acc = acc * (x - node) + dd[i]
        return acc

    return interp((), 0)


def det_univariate(M: Sequence[Sequence[list[int]]]) -> list[int]:
    """Bareiss determinant for matrices of dense integer univariate polys.

    Entries are coefficient lists (ascending).  Used for degree probing.
    """
    n = len(M)
    m = [[list(p) for p in row] for row in M]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if _uz(m[k][k]):
            piv = next((i for i in range(k + 1, n) if not _uz(m[i][k])), None)
            if piv is None:
                return [0]
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = _usub(_umul(pkk, m[i][j]), _umul(mik, m[k][j]))
                m[i][j] = _udiv(num, prev)
            m[i][k] = [0]
        prev = pkk
    d = m[n - 1][n - 1]
    return d if sign == 1 else [-c for c in d]


def _uz(p: list[int]) -> bool:
    return all(c == 0 for c in p)


def _utrim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _umul(a: list[int], b: list[int]) -> list[int]:
    if _uz(a) or _uz(b):
        return [0]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _utrim(out)


def _usub(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _utrim(out)


def _udiv(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer univariate polys."""
    a = _utrim(list(a))
    b = _utrim(list(b))
    if _uz(a):
        return [0]
    if b == [1]:
        return a
    out = [0] * (len(a) - len(b) + 1)
    r = list(a)
    while not _uz(r) and len(r) >= len(b):
        q, rem = divmod(r[-1], b[-1])
        if rem != 0:
            raise ValueError("inexact division in univariate Bareiss")
        k = len(r) - len(b)
        out[k] = q
        for i, y in enumerate(b):
            r[k + i] -= q * y
        _utrim(r)
    if not _uz(r):
        raise ValueError("inexact division in univariate Bareiss")
    return _utrim(out)
