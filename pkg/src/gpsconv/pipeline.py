"""check -> normalize -> reduce -> rationalize -> expand -> majorant -> certificate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from . import gps, lattice_recursion, majorant, reduction, semigroup
from .diffpoly import ConditionReport, check_hypotheses
from .errors import (CertificateError, EulerRootOnLattice, GPSError, InconsistentPrefix,
                     PrefixTooShort)
from .exponents import GaussQ
from .gps import GeneralizedSeries
from .lattice_recursion import LatticeSeries
from .majorant import MajorantSeries, RadiusResult, SigmaResult
from .problem import FORMAT, Problem
from .reduction import ReducedEquation
from .semigroup import SemigroupBasis

DEVIATIONS = [
    "Euler-polynomial nonvanishing is certified on the lattice points <alpha, rho> only, "
    "not for every xi > 0.",
    "sigma is an infimum over all nonzero lattice points, not only over the support of the tail.",
    "|alpha| values, |xi|^n and sigma are replaced by directed rational bounds.",
    "Order inequalities are checked on the supplied truncation, below the reported frontier.",
]

CONSTANT_NOTE = ("With t = radius_certified and W* = W_star, sigma W* >= Phi(t, W*) traps the "
                 "majorant on the closed polydisk |z_i| <= t, so |c_alpha| <= W* / t^|alpha| on "
                 "the support (|xi| >= 1); terms converge uniformly once |x^rho_i| <= t/2.")


class HypothesisFailed(GPSError):
    stage = "check"

    def __init__(self, report: ConditionReport):
        self.report = report
        if report.indeterminate:
            self.kind = "undecidable"
        super().__init__("; ".join(report.diagnostics) or "order inequalities fail")


@dataclass
class PipelineResult:
    problem: Problem
    report: ConditionReport
    reduced: ReducedEquation          # equation for w after tail normalization
    absorbed_count: int
    basis: SemigroupBasis
    series: LatticeSeries
    sigma: SigmaResult
    majorant: MajorantSeries
    radius: RadiusResult
    x_radius: float
    domination_verified_to: int
    opening: float

    def solution(self) -> GeneralizedSeries:
        return lattice_recursion.solution_series(self.reduced, self.series)


def run_check(problem: Problem) -> ConditionReport:
    return check_hypotheses(problem.equation, problem.prefix)


def build_reduction(problem: Problem, mu: Optional[int] = None, start: int = 0):
    """Reduction to L(delta) u = N plus the semigroup basis and tail normalization."""
    prefix = problem.prefix
    s0 = prefix.ord()
    H = reduction.normalize(problem.equation, s0)
    prefix_v = gps.shift(prefix, -s0)
    theta, b = reduction.compute_theta(H, prefix_v)
    if mu is None:
        mu = reduction.choose_mu(problem.exponents, theta, problem.frontier, problem.exact, start)
    if mu >= len(prefix_v):
        raise PrefixTooShort(f"mu = {mu} needs {mu + 1} certified prefix terms")
    red = reduction.reduce(H, prefix_v, mu, theta, b, s0)
    gens = semigroup.extract_generators(red.N)
    basis = semigroup.rationalize(gens) if len(gens) else SemigroupBasis(())
    red, absorbed = lattice_recursion.normalize_tail(red, basis)
    return red, basis, absorbed


def _consistency(problem: Problem, red: ReducedEquation, basis: SemigroupBasis,
                 solution: GeneralizedSeries):
    later = [e for e in problem.exponents if red.s_mu < e]
    if basis.tau:
        semigroup.verify_membership(later, red.s_mu, basis)
    elif later and not problem.exact and any(e < problem.frontier for e in later):
        raise InconsistentPrefix("the reduced equation has no tail but the prefix continues")
    known = problem.prefix
    for e, c in known.terms:
        if solution.frontier is not None and not e < solution.frontier:
            continue
        if solution.coefficient(e) != c:
            raise InconsistentPrefix(
                f"prefix coefficient {c} at x^{e} differs from the recursion value "
                f"{solution.coefficient(e)}")
    for e, c in solution.terms:
        below = problem.exact or (problem.frontier is not None and e < problem.frontier)
        if below and known.coefficient(e) != c:
            raise InconsistentPrefix(f"the recursion yields a term {c} x^{e} missing from the prefix")


@dataclass
class Expansion:
    report: ConditionReport
    reduced: ReducedEquation
    basis: SemigroupBasis
    absorbed_count: int
    sigma: SigmaResult
    series: LatticeSeries
    solution: GeneralizedSeries


def expand_problem(problem: Problem, max_degree: int) -> Expansion:
    """Everything up to the checked, consistent lattice series."""
    report = run_check(problem)
    if not report.satisfied:
        raise HypothesisFailed(report)
    red, basis, absorbed = build_reduction(problem)
    while True:
        try:
            sig = majorant.sigma_report(red.L, basis)
            series = lattice_recursion.expand(red, basis, max_degree)
            break
        except EulerRootOnLattice as exc:
            # a later mu shifts the Euler polynomial off the lattice
            try:
                red, basis, absorbed = build_reduction(problem, start=red.mu + 1)
            except PrefixTooShort:
                raise exc
    lattice_recursion.multivariate_substitution_check(red, series)
    solution = lattice_recursion.solution_series(red, series)
    _consistency(problem, red, basis, solution)
    return Expansion(report, red, basis, absorbed, sig, series, solution)


def run(problem: Problem, max_degree: Optional[int] = None, grid_cap: Optional[int] = None,
        opening: Optional[float] = None) -> PipelineResult:
    opts = problem.options
    max_degree = opts.max_degree if max_degree is None else max_degree
    grid_cap = opts.radius_grid_cap if grid_cap is None else grid_cap
    opening = opts.sector_opening if opening is None else opening
    ex = expand_problem(problem, max_degree)
    report, red, basis, absorbed, sig, series = (ex.report, ex.reduced, ex.basis,
                                                 ex.absorbed_count, ex.sigma, ex.series)
    monos = majorant.abs_monomials(red.N, basis) if basis.tau else []
    maj = majorant.majorant_coefficients(monos, sig.sigma, basis, max_degree, red.order)
    verified = majorant.check_domination(series, maj, max_degree)
    rad = majorant.radius(maj, grid_cap)
    if rad.certified is not None:
        x_radius = majorant.sector_bound(rad.certified, basis, opening)
    else:
        x_radius = math.inf if not monos else 0.0
    return PipelineResult(problem, report, red, absorbed, basis, series, sig, maj, rad,
                          x_radius, verified, opening)


# -- certificate ------------------------------------------------------------

def _q(x: Fraction) -> str:
    return str(Fraction(x))


def _float(x: float):
    if math.isinf(x):
        return "Infinity"
    return float(f"{x:.17g}")


def certificate(result: PipelineResult) -> dict:
    red, basis, maj, rad = result.reduced, result.basis, result.majorant, result.radius
    points = []
    for alpha in result.series.points():
        points.append({
            "alpha": list(alpha),
            "c": result.series.coefficient(alpha).to_json(),
            "A": _q(maj.A.get(alpha, 0)),
            "C": _q(maj.C.get(alpha, 0)),
        })
    opening = result.opening
    return {
        "format": FORMAT,
        "mu": red.mu,
        "theta": red.theta.to_json(),
        "basis": basis.to_json(),
        "sigma": _q(result.sigma.sigma),
        "max_degree": result.series.max_degree,
        "domination_verified_to": result.domination_verified_to,
        "radius_heuristic": _float(rad.heuristic),
        "radius_certified": None if rad.certified is None else _q(rad.certified),
        "W_star": None if rad.W_star is None else _q(rad.W_star),
        "sector": {"opening": _float(opening), "x_radius": _float(result.x_radius)},
        "series_constant": {"C": None if rad.W_star is None else _q(rad.W_star),
                            "R": None if rad.certified is None else _q(rad.certified),
                            "derivation": CONSTANT_NOTE},
        "deviations": list(DEVIATIONS),
        "sigma_data": {"bound": _q(result.sigma.bound), "far_floor": _q(result.sigma.far_floor),
                       "checked_points": result.sigma.checked_points},
        "absorbed_terms": result.absorbed_count,
        "reduced": red.to_json(),
        "points": points,
    }


def verify_certificate(cert: dict, problem: Problem) -> List[str]:
    """Re-run the cheap checks on a certificate; returns the failed inequalities."""
    failures: List[str] = []
    try:
        if cert.get("format") != FORMAT:
            raise CertificateError(f"unsupported certificate format {cert.get('format')!r}")
        D = int(cert["max_degree"])
        verified = int(cert["domination_verified_to"])
        if verified > D:
            raise CertificateError(f"domination_verified_to {verified} exceeds max_degree {D}")
        basis = SemigroupBasis.from_json(cert["basis"])
        red = ReducedEquation.from_json(cert["reduced"])
        sigma = Fraction(cert["sigma"])
        expected_points = [list(a) for d in range(1, D + 1)
                           for a in semigroup.lattice_points(basis.tau, d)]
        listed = [p["alpha"] for p in cert["points"]]
        if listed != expected_points:
            raise CertificateError(
                f"certificate lists {len(listed)} lattice points, degree {D} needs "
                f"{len(expected_points)}")
    except GPSError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc

    # reduction reproduces from the problem at the stated mu
    try:
        fresh, fresh_basis, _ = build_reduction(problem, mu=int(cert["mu"]))
        if fresh.to_json() != red.to_json():
            failures.append("reduced equation does not match the problem at the stated mu")
        if fresh_basis.rhos != basis.rhos:
            failures.append("semigroup basis does not match the reduced equation")
    except GPSError as exc:
        failures.append(f"reduction failed: {exc}")
    for m in red.N.monomials:
        try:
            semigroup.decompose(m.xexp, basis)
        except GPSError:
            failures.append(f"N exponent {m.xexp} is not in the basis semigroup")

    # sigma: the tail floor, then every lattice point inside the bound
    n = red.order
    ell = red.L.coefficients()
    if not sigma > 0:
        failures.append("sigma > 0")
    lead = majorant.abs_lower(ell[n], majorant.SQRT_BITS)
    rest = sum((majorant.abs_upper(c, majorant.SQRT_BITS) for c in ell[:n]), Fraction(0))
    bound = Fraction(cert["sigma_data"]["bound"])
    if bound < 1 or lead - rest / bound < sigma:
        failures.append("sigma <= |l_n| - sum_{j<n} |l_j| / bound")
    if basis.tau:
        d = 1
        while d * basis.min_re() < bound:
            for alpha in semigroup.lattice_points(basis.tau, d):
                xi = basis.point(alpha)
                xs = xi.sq_modulus()
                if xs < bound * bound and red.L(xi).sq_modulus() < sigma * sigma * xs ** n:
                    failures.append(f"|L(xi)|^2 >= sigma^2 |xi|^(2n) at {alpha}")
            d += 1

    coeffs = {tuple(p["alpha"]): GaussQ.from_json(p["c"]) for p in cert["points"]}
    coeffs = {a: c for a, c in coeffs.items() if c}
    A = {tuple(p["alpha"]): Fraction(p["A"]) for p in cert["points"]}
    C = {tuple(p["alpha"]): Fraction(p["C"]) for p in cert["points"]}
    series = LatticeSeries(coeffs, basis, D)
    try:
        lattice_recursion.multivariate_substitution_check(red, series)
    except GPSError as exc:
        failures.append(f"coefficient recursion: {exc}")

    monos = majorant.abs_monomials(red.N, basis) if basis.tau else []
    if basis.tau:
        W = {a: v for a, v in A.items() if v}
        phi = majorant.majorant_rhs(monos, W, basis.tau, D)
        for alpha in A:
            if sigma * A[alpha] != phi.get(alpha, 0):
                failures.append(f"sigma A = Phi at {list(alpha)}")
            canonical = (A[alpha] / majorant.lower_abs_power(basis.point(alpha), n)
                         if A[alpha] else Fraction(0))
            if C[alpha] != canonical:
                failures.append(f"C = A / |xi|^n (directed) at {list(alpha)}")
    for alpha, c in coeffs.items():
        if sum(alpha) > verified:
            continue
        cs = c.sq_modulus()
        xs = basis.point(alpha).sq_modulus()
        if cs * xs ** n > A.get(alpha, 0) ** 2 or cs > C.get(alpha, 0) ** 2:
            failures.append(f"|c| <= C at {list(alpha)}")

    t, Ws = cert.get("radius_certified"), cert.get("W_star")
    if t is not None:
        t, Ws = Fraction(t), Fraction(Ws)
        if not majorant.trap_holds(monos, sigma, t, Ws):
            failures.append("sigma W* >= Phi(t, W*)")
        partial = sum((a * t ** sum(alpha) for alpha, a in A.items()), Fraction(0))
        if partial > Ws:
            failures.append("truncated majorant sum at t <= W*")
        opening = cert["sector"]["opening"]
        x_radius = majorant.sector_bound(t, basis, opening)
        if _float(x_radius) != cert["sector"]["x_radius"]:
            failures.append("sector x_radius matches the closed form")
    return failures
