"""Exact linear algebra over Q for Gaussian rationals viewed as vectors in Q^2."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence

from .exponents import GaussQ


def columns(values: Sequence[GaussQ]) -> List[List[Fraction]]:
    """2 x k matrix whose columns are (re, im) of the values."""
    return [[v.re for v in values], [v.im for v in values]]


def rref(rows: List[List[Fraction]]):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(values: Sequence[GaussQ]) -> int:
    if not values:
        return 0
    return len(rref(columns(values))[1])


def solve(values: Sequence[GaussQ], target: GaussQ) -> Optional[List[Fraction]]:
    """The rational a with sum a_i values_i = target, assuming independence; None if none."""
    k = len(values)
    if k == 0:
        return [] if target.is_zero() else None
    aug = [row + [t] for row, t in zip(columns(values), (target.re, target.im))]
    m, pivots = rref(aug)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("values are linearly dependent")
    sol = [Fraction(0)] * k
    for row, c in zip(m, pivots):
        sol[c] = row[k]
    return sol


def primitive_integer(vec: Sequence[Fraction]) -> List[int]:
    """Scale a rational vector to coprime integers with first nonzero entry positive."""
    den = 1
    for x in vec:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return ints


def integer_kernel_trivial(values: Sequence[GaussQ]) -> bool:
    """True iff no nonzero integer vector n has sum n_i values_i = 0."""
    return rank(values) == len(values)
