import cmath
import math
from fractions import Fraction as Fr

import pytest

from gpsconv import pipeline
from gpsconv.diffpoly import DiffPolynomial as D
from gpsconv.errors import DominationFailure, EulerRootOnLattice, OutsideSector
from gpsconv.exponents import GaussQ as G
from gpsconv.gps import GeneralizedSeries as S
from gpsconv.lattice_recursion import LatticeSeries
from gpsconv.majorant import (AbsMonomial, abs_monomials, check_domination, evaluate_series,
                              majorant_coefficients, radius, sector_bound, sigma, sigma_report,
                              trap_holds)
from gpsconv.reduction import EulerPolynomial
from gpsconv.semigroup import SemigroupBasis

from conftest import problem

B1 = SemigroupBasis((G(1),))


def L(*b):
    return EulerPolynomial(tuple(G.coerce(x) for x in b), G(0))


def test_sigma_identity_ratio():
    assert sigma(L(0, 1), B1) == 1


def test_sigma_shifted_is_a_lower_bound():
    # (xi + 1)/xi decreases towards 1; the triangle-inequality tail bound gives 7/8
    s = sigma(L(1, 1), B1)
    assert s == Fr(7, 8)
    assert all((k + 1) / k >= s for k in range(1, 500))


def test_sigma_root_on_lattice():
    with pytest.raises(EulerRootOnLattice):
        sigma(L(-3, 1), B1)


def test_sigma_report_fields():
    rep = sigma_report(L(-Fr(5, 2), 1), B1)
    assert rep.checked_points > 0 and rep.inner_min_sq is not None
    # the minimum sits at xi = 2 or 3: |xi - 5/2| / xi = 1/4 at 2
    assert rep.sigma <= Fr(1, 6) and rep.sigma > 0


def test_abs_monomials_merge_by_triangle_inequality():
    N = D(1, [(1, 1, (1, 0)), (G(0, 1), 1, (0, 1)), (G(3, 4), 2, (0, 0))])
    monos = abs_monomials(N, B1)
    assert AbsMonomial(Fr(2), (1,), 1) in monos
    assert AbsMonomial(Fr(5), (2,), 0) in monos


def test_majorant_single_forcing_term():
    monos = abs_monomials(D(1, [(1, 1, (0, 0))]), B1)
    m = majorant_coefficients(monos, Fr(1, 2), B1, 5, 1)
    assert m.A == {(1,): Fr(2)} and m.C == {(1,): Fr(2)}


def test_majorant_empty():
    m = majorant_coefficients([], Fr(1), B1, 5, 1)
    assert m.A == {} and m.C == {}


def test_majorant_scalar_fixed_point():
    # sigma W = z + 5 z W  =>  A_k = 5^(k-1) / sigma^k
    P = problem("euler_integer")
    r = pipeline.run(P, max_degree=8)
    s = r.sigma.sigma
    assert r.majorant.A == {(k,): Fr(5) ** (k - 1) / s ** k for k in range(1, 9)}
    assert all(v >= 0 for v in r.majorant.C.values())


def test_domination_verified(convergent):
    name, P = convergent
    r = pipeline.run(P, max_degree=8)
    assert r.domination_verified_to == 8
    assert check_domination(r.series, r.majorant, 0) == 0


def test_domination_failure_on_enlarged_coefficient():
    r = pipeline.run(problem("riccati"), max_degree=6)
    coeffs = dict(r.series.coeffs)
    coeffs[(3,)] = G(r.majorant.C[(3,)] * 2)
    with pytest.raises(DominationFailure) as info:
        check_domination(LatticeSeries(coeffs, r.basis, 6), r.majorant, 6)
    assert info.value.alpha == (3,)


def test_radius_quadratic_scalar():
    # sigma W = t + W^2 has a solution iff sigma^2 >= 4 t; sigma = 1 gives t = 1/4
    monos = [AbsMonomial(Fr(1), (1,), 0), AbsMonomial(Fr(1), (0,), 2)]
    m = majorant_coefficients(monos, Fr(1), B1, 10, 1)
    rad = radius(m)
    assert rad.certified == Fr(1, 4)
    assert trap_holds(monos, Fr(1), rad.certified, rad.W_star)
    assert not any(trap_holds(monos, Fr(1), Fr(1, 2), Fr(k, 64)) for k in range(1, 256))


def test_radius_empty():
    rad = radius(majorant_coefficients([], Fr(1), B1, 4, 1))
    assert rad.certified is None and rad.heuristic == math.inf


def test_certified_below_heuristic(convergent):
    name, P = convergent
    r = pipeline.run(P)
    assert r.radius.certified is not None
    assert float(r.radius.certified) <= r.radius.heuristic


def test_sector_bound_real_exponent():
    for opening in (0.5, math.pi, 6.0):
        assert sector_bound(Fr(1, 2), B1, opening) == pytest.approx(0.25, abs=1e-15)
        assert sector_bound(Fr(1, 2), B1, opening) < 0.25


def _grid_max(rho, r, opening, count=10_000):
    best = 0.0
    for k in range(count + 1):
        arg = -opening / 2 + opening * k / count
        x = cmath.rect(r, arg)
        best = max(best, abs(cmath.exp(complex(rho) * cmath.log(x))))
    return best


def test_sector_bound_gaussian_closed_form_and_grid():
    rho = G(1, 1)
    basis = SemigroupBasis((rho,))
    R1 = 0.5
    r = sector_bound(1, basis, math.pi / 2)
    assert r == pytest.approx(R1 * math.exp(-math.pi / 4), rel=1e-14)
    assert _grid_max(rho, r, math.pi / 2) == pytest.approx(R1, abs=1e-9)


def test_sector_bound_guards():
    with pytest.raises(ValueError):
        sector_bound(1, B1, 0)
    with pytest.raises(ValueError):
        SemigroupBasis((G(0, 1),))


def test_evaluate():
    assert evaluate_series(S.monomial(1), 0.5) == pytest.approx(0.5)
    v = evaluate_series(S.monomial(G(1, 1)), 0.1)
    expected = 0.1 * cmath.exp(1j * math.log(0.1))
    assert abs(v - expected) < 1e-12 and abs(abs(v) - 0.1) < 1e-12
    with pytest.raises(OutsideSector):
        evaluate_series(S.monomial(1), -1.0, opening=math.pi)
