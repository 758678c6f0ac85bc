"""Majorant machinery: the constant sigma, the majorant coefficients, domination,
radius and sector bounds, and plain numeric evaluation.

Irrational quantities are replaced by directed rational bounds so that every
inequality stays conservative.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .diffpoly import DiffPolynomial
from .errors import DominationFailure, EulerRootOnLattice, OutsideSector
from .exponents import GaussQ, abs_lower, abs_upper, sq_modulus, sqrt_lower
from .gps import GeneralizedSeries
from .lattice_recursion import LatticeSeries
from .reduction import EulerPolynomial
from .semigroup import LatticePoint, SemigroupBasis, decompose, lattice_points

SQRT_BITS = 64
DEFAULT_GRID_CAP = 40


# -- sigma ---------------------------------------------------------------

@dataclass(frozen=True)
class SigmaResult:
    sigma: Fraction
    bound: Fraction            # |xi| >= bound is handled by the tail estimate
    far_floor: Fraction        # lower bound of |L(xi)|/|xi|^n for |xi| >= bound
    inner_min_sq: Optional[Fraction]
    checked_points: int


def sigma_report(L: EulerPolynomial, basis: SemigroupBasis, spread: int = 8) -> SigmaResult:
    ell = L.coefficients()
    n = L.degree
    lead = abs_lower(ell[n], SQRT_BITS)
    rest = sum((abs_upper(c, SQRT_BITS) for c in ell[:n]), Fraction(0))
    bound = max(Fraction(1), spread * rest / lead)
    # for |xi| >= bound >= 1:  |L(xi)|/|xi|^n >= |l_n| - sum_{j<n} |l_j| / |xi|
    far = lead - rest / bound
    inner_min = None
    checked = 0
    if basis.tau:
        min_re = basis.min_re()
        bound_sq = bound * bound
        d = 1
        while d * min_re < bound:
            for alpha in lattice_points(basis.tau, d):
                xi = basis.point(alpha)
                xs = sq_modulus(xi)
                if xs >= bound_sq:
                    continue
                value = L(xi)
                if value.is_zero():
                    raise EulerRootOnLattice(alpha, f"L({xi}) = 0 on the lattice")
                ratio = value.sq_modulus() / xs ** n
                checked += 1
                if inner_min is None or ratio < inner_min:
                    inner_min = ratio
            d += 1
    floor_sq = far * far
    if inner_min is not None:
        floor_sq = min(floor_sq, inner_min)
    return SigmaResult(sqrt_lower(floor_sq, SQRT_BITS), bound, far, inner_min, checked)


def sigma(L: EulerPolynomial, basis: SemigroupBasis) -> Fraction:
    """Positive rational sigma with |L(xi)| >= sigma |xi|^n on every lattice point xi."""
    return sigma_report(L, basis).sigma


# -- majorant coefficients -----------------------------------------------------

@dataclass(frozen=True)
class AbsMonomial:
    bound: Fraction            # upper bound of |alpha_{p,Q}|
    p: LatticePoint
    degree: int                # total power |Q| of W


def abs_monomials(N: DiffPolynomial, basis: SemigroupBasis) -> List[AbsMonomial]:
    """Upper bounds for |alpha|, merged when (p, |Q|) coincide (triangle inequality)."""
    acc: Dict[Tuple[LatticePoint, int], Fraction] = {}
    for m in N.monomials:
        key = (decompose(m.xexp, basis), m.degree)
        acc[key] = acc.get(key, Fraction(0)) + abs_upper(m.coef, SQRT_BITS)
    return [AbsMonomial(b, p, k) for (p, k), b in sorted(acc.items())]


@dataclass
class MajorantSeries:
    A: Dict[LatticePoint, Fraction]        # coefficients of W, A = C |xi|^n
    C: Dict[LatticePoint, Fraction]        # rational upper bounds of A / |xi|^n
    sigma: Fraction
    alpha_bounds: List[AbsMonomial]
    basis: SemigroupBasis
    order: int
    max_degree: int

    def degree_sums(self) -> List[Fraction]:
        sums = [Fraction(0)] * (self.max_degree + 1)
        for a, c in self.C.items():
            sums[sum(a)] += c
        return sums


def _real_mul(a, b, cap):
    out: Dict[LatticePoint, Fraction] = {}
    for ka, va in a.items():
        da = sum(ka)
        for kb, vb in b.items():
            if da + sum(kb) > cap:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return out


def majorant_rhs(monos: Sequence[AbsMonomial], W: Dict[LatticePoint, Fraction], tau: int,
                 cap: int) -> Dict[LatticePoint, Fraction]:
    """Phi = sum |alpha| z^p W^{|Q|}, truncated at total degree cap."""
    powers: Dict[Tuple[int, int], Dict] = {}

    def pw(k, c):
        if k == 0:
            return {(0,) * tau: Fraction(1)}
        if (k, c) not in powers:
            Wc = {a: v for a, v in W.items() if sum(a) <= c}
            powers[(k, c)] = Wc if k == 1 else _real_mul(pw(k - 1, c), Wc, c)
        return powers[(k, c)]

    out: Dict[LatticePoint, Fraction] = {}
    for m in monos:
        dp = sum(m.p)
        if dp > cap:
            continue
        for a, v in pw(m.degree, cap - dp).items():
            key = tuple(x + y for x, y in zip(a, m.p))
            out[key] = out.get(key, 0) + m.bound * v
    return out


def lower_abs_power(xi: GaussQ, n: int) -> Fraction:
    """Directed lower bound of |xi|^n (canonical, used by the verifier too)."""
    return sqrt_lower(sq_modulus(xi) ** n, SQRT_BITS)


def majorant_coefficients(monos: Sequence[AbsMonomial], sigma_value: Fraction,
                          basis: SemigroupBasis, max_degree: int, order: int) -> MajorantSeries:
    if not sigma_value > 0:
        raise ValueError("sigma must be positive")
    A: Dict[LatticePoint, Fraction] = {}
    C: Dict[LatticePoint, Fraction] = {}
    tau = basis.tau
    if tau:
        for d in range(1, max_degree + 1):
            phi = majorant_rhs(monos, A, tau, d)
            for alpha in lattice_points(tau, d):
                value = phi.get(alpha, 0)
                if value:
                    A[alpha] = Fraction(value) / sigma_value
                    C[alpha] = A[alpha] / lower_abs_power(basis.point(alpha), order)
    return MajorantSeries(A, C, sigma_value, list(monos), basis, order, max_degree)


def check_domination(c: LatticeSeries, m: MajorantSeries, degree: int) -> int:
    """|c_alpha| <= A_alpha / |xi|^n <= C_alpha for all alpha up to ``degree``, exactly."""
    n = m.order
    basis = c.basis
    for d in range(1, degree + 1):
        for alpha in lattice_points(basis.tau, d):
            cs = sq_modulus(c.coefficient(alpha))
            if not cs:
                continue
            A = m.A.get(alpha, Fraction(0))
            C = m.C.get(alpha, Fraction(0))
            xs = sq_modulus(basis.point(alpha))
            if cs * xs ** n > A * A or cs > C * C:
                raise DominationFailure(alpha)
    return degree


# -- radius -----------------------------------------------------------

@dataclass(frozen=True)
class RadiusResult:
    heuristic: float
    certified: Optional[Fraction]
    W_star: Optional[Fraction]


def trap_holds(monos: Sequence[AbsMonomial], sigma_value: Fraction, t: Fraction,
               W: Fraction) -> bool:
    """sigma W >= sum |alpha| t^{|p|} W^{|Q|}, exactly."""
    rhs = Fraction(0)
    for m in monos:
        rhs += m.bound * t ** sum(m.p) * W ** m.degree
    return sigma_value * W >= rhs


def _log(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def _heuristic(m: MajorantSeries) -> float:
    """Cauchy-Hadamard on the diagonal, extrapolated: exp(-slope) of a least-squares
    line through log(sum_{|alpha|=d} C_alpha) over the upper half of the degrees."""
    pts = [(d, _log(s)) for d, s in enumerate(m.degree_sums()) if d and s > 0]
    if not pts:
        return math.inf
    upper = [p for p in pts if p[0] >= m.max_degree // 2]
    if len(upper) < 2:
        d, v = pts[-1]
        return math.exp(-v / d)
    k = len(upper)
    md = sum(d for d, _ in upper) / k
    mv = sum(v for _, v in upper) / k
    slope = (sum((d - md) * (v - mv) for d, v in upper)
             / sum((d - md) ** 2 for d, _ in upper))
    return math.exp(-slope)


def _candidate_W(monos, sigma_value, t, cap):
    lin = sum((mm.bound * t ** sum(mm.p) for mm in monos if mm.degree == 1), Fraction(0))
    const = sum((mm.bound * t ** sum(mm.p) for mm in monos if mm.degree == 0), Fraction(0))
    if sigma_value > lin and const > 0:
        yield 2 * const / (sigma_value - lin)
        yield const / (sigma_value - lin)
    for i in range(-cap, cap + 1):
        yield Fraction(2) ** i


def radius(m: MajorantSeries, grid_cap: int = DEFAULT_GRID_CAP) -> RadiusResult:
    heuristic = _heuristic(m)
    if not m.alpha_bounds or m.basis.tau == 0:
        return RadiusResult(math.inf, None, None)
    for j in range(grid_cap + 1):
        t = Fraction(1, 2 ** j)
        for W in _candidate_W(m.alpha_bounds, m.sigma, t, grid_cap):
            if W > 0 and trap_holds(m.alpha_bounds, m.sigma, t, W):
                return RadiusResult(heuristic, t, W)
    return RadiusResult(heuristic, None, None)


def truncated_sum(m: MajorantSeries, t: Fraction) -> Fraction:
    return sum((a * t ** sum(alpha) for alpha, a in m.A.items()), Fraction(0))


# -- sector and evaluation ---------------------------------------------------

def sector_bound(R, basis: SemigroupBasis, opening: float) -> float:
    """Largest |x| with |x^rho_i| <= R/2 for all |arg x| <= opening/2 and all rho_i."""
    if not 0 < opening < 2 * math.pi:
        raise ValueError("opening must lie in (0, 2 pi)")
    R = float(R)
    if not R > 0:
        raise ValueError("R must be positive")
    if basis.tau == 0:
        return math.inf
    R1 = R / 2
    half = opening / 2
    best = math.inf
    for rho in basis.rhos:
        a, b = float(rho.re), float(rho.im)
        # |x|^a e^{-b arg x} is largest at arg x = -sign(b) * half
        best = min(best, math.exp((math.log(R1) - abs(b) * half) / a))
    return math.nextafter(best, 0.0)


def principal_power(x: complex, s) -> complex:
    s = complex(s)
    return cmath.exp(s * complex(math.log(abs(x)), cmath.phase(x)))


def evaluate_series(series: GeneralizedSeries, x: complex, opening: float = None) -> complex:
    x = complex(x)
    if x == 0:
        raise OutsideSector("x = 0 is the sector vertex")
    if opening is not None and abs(cmath.phase(x)) > opening / 2:
        raise OutsideSector(f"arg x = {cmath.phase(x)} lies outside |arg x| <= {opening / 2}")
    return sum((complex(c) * principal_power(x, e) for e, c in series.terms), 0j)


def evaluate(prefix: GeneralizedSeries, tail: GeneralizedSeries, s_mu, x: complex,
             opening: float = None) -> complex:
    """prefix(x) + x^{s_mu} tail(x) with principal-branch powers; no certification."""
    head = evaluate_series(prefix, x, opening)
    if not len(tail):
        return head
    return head + principal_power(complex(x), s_mu) * evaluate_series(tail, x, opening)
