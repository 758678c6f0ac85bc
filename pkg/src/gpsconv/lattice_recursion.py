"""Coefficients of the tail as a multivariate series psi(z_1, ..., z_tau), z_i <-> x^{rho_i}.

Degree by degree,  L(<alpha, rho>) c_alpha = [z^alpha] phi  where
phi = sum_m a_m z^{p_m} prod_j psi_j^{q_j}  and  psi_j = sum <alpha,rho>^j c_alpha z^alpha.
The degree-d part of phi only involves coefficients of degree < d.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

from . import gps
from .diffpoly import DiffMonomial, DiffPolynomial
from .errors import EulerRootOnLattice, ResidualNonzero
from .exponents import GaussQ, ZERO, sq_modulus
from .gps import GeneralizedSeries
from .reduction import ReducedEquation, compose, shifted_slot_images
from .semigroup import LatticePoint, SemigroupBasis, decompose, lattice_points

Poly = Dict[LatticePoint, GaussQ]


def poly_mul(a: Poly, b: Poly, max_degree: int) -> Poly:
    out: Poly = {}
    for ka, va in a.items():
        da = sum(ka)
        for kb, vb in b.items():
            if da + sum(kb) > max_degree:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, ZERO) + va * vb
    return {k: v for k, v in out.items() if v}


def poly_add_into(acc: Poly, a: Poly, scale=None):
    for k, v in a.items():
        acc[k] = acc.get(k, ZERO) + (v if scale is None else v * scale)


@dataclass
class LatticeSeries:
    coeffs: Dict[LatticePoint, GaussQ]
    basis: SemigroupBasis
    max_degree: int

    def coefficient(self, alpha) -> GaussQ:
        return self.coeffs.get(tuple(alpha), ZERO)

    def points(self, degree: Optional[int] = None):
        """All lattice points up to ``degree`` in graded order."""
        top = self.max_degree if degree is None else degree
        for d in range(1, top + 1):
            yield from lattice_points(self.basis.tau, d)

    def to_json(self) -> dict:
        return {
            "basis": self.basis.to_json(),
            "max_degree": self.max_degree,
            "coeffs": [{"alpha": list(a), "coef": c.to_json()}
                       for a, c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), [-x for x in t[0]]))],
        }

    @classmethod
    def from_json(cls, data) -> "LatticeSeries":
        basis = SemigroupBasis.from_json(data["basis"])
        coeffs = {tuple(e["alpha"]): GaussQ.from_json(e["coef"]) for e in data["coeffs"]}
        return cls(coeffs, basis, int(data["max_degree"]))


@dataclass(frozen=True)
class _LatticeMonomial:
    coef: GaussQ
    p: LatticePoint
    powers: Tuple[int, ...]


def lattice_monomials(N: DiffPolynomial, basis: SemigroupBasis) -> List[_LatticeMonomial]:
    return [_LatticeMonomial(m.coef, decompose(m.xexp, basis), m.powers) for m in N.monomials]


def _psi(coeffs: Poly, basis: SemigroupBasis, j: int, cache) -> Poly:
    out = {}
    for a, c in coeffs.items():
        xi = cache.get(a)
        if xi is None:
            xi = cache[a] = basis.point(a)
        out[a] = c * xi ** j
    return out


def rhs(monos: Sequence[_LatticeMonomial], coeffs: Poly, basis: SemigroupBasis, n: int,
        max_degree: int, point_cache=None) -> Poly:
    """phi truncated at total degree ``max_degree``."""
    point_cache = {} if point_cache is None else point_cache
    psis = [_psi(coeffs, basis, j, point_cache) for j in range(n + 1)]
    powers: Dict[Tuple[int, int, int], Poly] = {}

    def pw(j, q, cap):
        if q == 1:
            return {k: v for k, v in psis[j].items() if sum(k) <= cap}
        key = (j, q, cap)
        if key not in powers:
            powers[key] = poly_mul(pw(j, q - 1, cap), psis[j], cap)
        return powers[key]

    out: Poly = {}
    unit = (0,) * basis.tau
    for m in monos:
        deg_p = sum(m.p)
        if deg_p > max_degree:
            continue
        cap = max_degree - deg_p
        term: Poly = {unit: m.coef}
        for j, q in enumerate(m.powers):
            if q:
                term = poly_mul(term, pw(j, q, cap), cap)
                if not term:
                    break
        for k, v in term.items():
            key = tuple(a + b for a, b in zip(k, m.p))
            out[key] = out.get(key, ZERO) + v
    return {k: v for k, v in out.items() if v}


def expand(reduced: ReducedEquation, basis: SemigroupBasis, max_degree: int) -> LatticeSeries:
    monos = lattice_monomials(reduced.N, basis) if basis.tau else []
    n = reduced.order
    coeffs: Poly = {}
    cache: Dict[LatticePoint, GaussQ] = {}
    if basis.tau == 0:
        return LatticeSeries({}, basis, max_degree)
    for d in range(1, max_degree + 1):
        phi = rhs(monos, coeffs, basis, n, d, cache)
        new = {}
        for alpha in lattice_points(basis.tau, d):
            xi = cache.setdefault(alpha, basis.point(alpha))
            Lxi = reduced.L(xi)
            value = phi.get(alpha, ZERO)
            if not value:
                continue            # at a root of L this picks the free coefficient 0
            if Lxi.is_zero():
                raise EulerRootOnLattice(alpha, f"L({xi}) = 0 at lattice point {alpha}; "
                                         "increase mu")
            new[alpha] = value / Lxi
        coeffs.update(new)
    return LatticeSeries(coeffs, basis, max_degree)


def multivariate_substitution_check(reduced: ReducedEquation, series: LatticeSeries) -> int:
    """Both sides of  sum L(xi_alpha) c_alpha z^alpha = phi  agree up to max_degree.

    Returns the number of compared lattice points.
    """
    basis = series.basis
    if basis.tau == 0:
        if series.coeffs:
            raise ResidualNonzero(next(iter(series.coeffs)))
        return 0
    monos = lattice_monomials(reduced.N, basis)
    phi = rhs(monos, series.coeffs, basis, reduced.order, series.max_degree)
    count = 0
    for alpha in series.points():
        lhs = reduced.L(basis.point(alpha)) * series.coefficient(alpha)
        if lhs != phi.get(alpha, ZERO):
            raise ResidualNonzero(alpha, f"residual {lhs - phi.get(alpha, ZERO)} at {alpha}")
        count += 1
    return count


def small_points(basis: SemigroupBasis) -> List[LatticePoint]:
    """Lattice points with |<alpha, rho>| < 1 (finite: |xi| >= deg * min Re rho)."""
    if basis.tau == 0:
        return []
    min_re = basis.min_re()
    out = []
    d = 1
    while d * min_re < 1:
        for alpha in lattice_points(basis.tau, d):
            if sq_modulus(basis.point(alpha)) < 1:
                out.append(alpha)
        d += 1
    return out


def normalize_tail(reduced: ReducedEquation, basis: SemigroupBasis):
    """Absorb tail terms at |s_k - s_mu| < 1 via u = P + w.  Returns (equation in w, count)."""
    small = small_points(basis)
    if not small:
        return reduced, 0
    top = max(sum(a) for a in small)
    series = expand(reduced, basis, top)
    P = GeneralizedSeries([(basis.point(a), series.coefficient(a)) for a in small])
    if not len(P):
        return reduced, 0
    n = reduced.order
    base = [P]
    for _ in range(n):
        base.append(gps.delta(base[-1]))
    images = shifted_slot_images(n, ZERO, base=base)
    new_N = compose(reduced.N, images, n)
    correction = DiffPolynomial(n, [DiffMonomial(-reduced.L(e) * c, e, (0,) * (n + 1))
                                    for e, c in P.terms])
    new_N = new_N + correction
    absorbed = gps.add(reduced.absorbed, P)
    return replace(reduced, N=new_N, absorbed=absorbed), len(P)


def lattice_frontier(basis: SemigroupBasis, max_degree: int) -> Optional[GaussQ]:
    """Least <alpha, rho> over uncomputed degrees; all of them are >= this one."""
    if basis.tau == 0:
        return None
    return min(basis.point(a) for a in lattice_points(basis.tau, max_degree + 1))


def project_to_x(series: LatticeSeries, s_mu) -> GeneralizedSeries:
    s_mu = GaussQ.coerce(s_mu)
    frontier = lattice_frontier(series.basis, series.max_degree)
    if frontier is not None:
        frontier = frontier + s_mu
    return GeneralizedSeries([(s_mu + series.basis.point(a), c) for a, c in series.coeffs.items()],
                             frontier)


def tail_series(reduced: ReducedEquation, series: LatticeSeries) -> GeneralizedSeries:
    """u = absorbed + w as a generalized series in x (no x^{s_mu} factor)."""
    w = project_to_x(series, 0)
    return gps.add(w, reduced.absorbed)


def solution_series(reduced: ReducedEquation, series: LatticeSeries) -> GeneralizedSeries:
    """y = head + x^{s_mu} u, truncated at the lattice frontier."""
    return gps.add(reduced.head, gps.shift(tail_series(reduced, series), reduced.s_mu))
