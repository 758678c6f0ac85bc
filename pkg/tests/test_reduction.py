from fractions import Fraction as Fr

import pytest

from gpsconv.diffpoly import DiffPolynomial as D, constant, slot, substitute
from gpsconv.errors import (HypothesisViolation, InconsistentPrefix, PrefixTooShort,
                            ThetaUndecidable)
from gpsconv.exponents import GaussQ as G
from gpsconv.gps import GeneralizedSeries as S
from gpsconv.reduction import (EulerPolynomial, ReducedEquation, choose_mu, compute_theta,
                               normalize, reduce, reduce_problem)

from conftest import problem


def test_normalize_eigen_case():
    s = G(Fr(1, 2), 3)
    assert normalize(slot(1, 1) - slot(0, 1, s), s) == slot(1, 1)


def test_normalize_moves_least_exponent_to_zero():
    assert normalize(slot(0, 1), 1) == slot(0, 1)
    F = slot(1, 1) - slot(0, 1, 2) - constant(1, 1, 1)
    assert normalize(F, 1) == slot(1, 1) - slot(0, 1) - constant(1)


def test_normalize_complex_exponents():
    F = slot(0, 1, 1, G(1, -1)) + constant(1, 1, 2)
    H = normalize(F, G(0, 1))
    assert H.xexponents() == [G(0), G(1)]


def test_theta_constant_derivatives():
    H = slot(1, 1) - slot(0, 1) - constant(1)
    theta, b = compute_theta(H, S.monomial(0, 5, G(3)))
    assert theta == 0 and b == (G(-1), G(1))


def test_theta_reads_b_at_theta():
    H = slot(1, 1, 1, 1) - slot(0, 1)
    theta, b = compute_theta(H, S.monomial(0, 1, G(3)))
    assert theta == 1 and b == (G(0), G(1))


def test_theta_undecidable():
    with pytest.raises(ThetaUndecidable):
        compute_theta(slot(0, 1), S.monomial(0, 1, G(2)))


def test_choose_mu():
    assert choose_mu([G(k) for k in range(4)], G(0), G(4)) == 1
    exps = [G(0), G(Fr(1, 2)), G(Fr(1, 2), 1), G(Fr(3, 2))]
    assert choose_mu(exps, G(0), G(2)) == 2
    with pytest.raises(PrefixTooShort):
        choose_mu([G(0)], G(5), G(1))


def test_choose_mu_frontier_decides_last_term():
    exps = [G(0), G(1)]
    assert choose_mu(exps, G(0), G(2)) == 1
    with pytest.raises(PrefixTooShort):
        choose_mu(exps, G(0), G(1, 3))   # next exponent could share Re = 1
    assert choose_mu(exps, G(0), exact=True) == 1


def test_reduce_bad_prefix():
    H = slot(1, 1) - slot(0, 1) - constant(1)
    with pytest.raises(InconsistentPrefix):
        reduce(H, S([(0, 1), (1, 1)], G(2)), 1)


def test_reduce_single_exact_term_is_too_short():
    F = slot(1, 1) - slot(0, 1, 2) - constant(1, 1, 1)
    with pytest.raises(PrefixTooShort):
        reduce_problem(F, S.monomial(1, -1))


def test_reduce_integer_fixture_hand_values():
    # (1 - x)(delta y + 2 y) - x with y = x/3 + x^2/4 + x^2 u:
    # delta u + 4 u = x + x delta u + 4 x u
    P = problem("euler_integer")
    red = reduce_problem(P.equation, P.prefix).reduced
    assert red.mu == 1 and red.theta == 0 and red.s_mu == 2
    assert red.L.coefficients() == (G(4), G(1))
    assert red.N == D(1, [(1, 1, (0, 0)), (1, 1, (0, 1)), (4, 1, (1, 0))])
    assert red.head == S([(1, Fr(1, 3)), (2, Fr(1, 4))])


def test_reduce_quadratic_second_order_terms():
    # delta y = x + y^2, y = x v: H = delta v + v - 1 - x v^2 and v = Phi + x^d u;
    # x v^2 contributes x^{1 + 2d} u^2, divided by x^{d + theta}
    P = problem("riccati")
    red = reduce_problem(P.equation, P.prefix).reduced
    d = red.s_mu - red.s0
    quad = [m for m in red.N.monomials if m.powers == (2, 0)]
    assert len(quad) == 1 and quad[0].xexp == 1 + 2 * d - (d + red.theta)
    assert all(m.xexp.re > 0 for m in red.N.monomials)


def test_reduced_equation_solves_tail(convergent):
    # H(Phi_mu + x^d u) / x^{d + theta} = L(delta) u - N(u) at the true tail u
    name, P = convergent
    R = reduce_problem(P.equation, P.prefix)
    red = R.reduced
    tail = S([(e - red.s_mu, c) for e, c in P.prefix.terms if red.s_mu < e], P.frontier - red.s_mu)
    L = D(red.order, [(c, 0, tuple(int(i == j) for i in range(red.order + 1)))
                      for j, c in enumerate(red.L.coefficients())])
    residual = substitute(L - red.N, tail)
    assert len(residual) == 0


def test_leading_coefficient_is_b_n(convergent):
    name, P = convergent
    R = reduce_problem(P.equation, P.prefix)
    assert R.reduced.L.coefficients()[-1] == R.b[-1]
    assert R.reduced.L.degree == P.equation.order


def test_hypothesis_violation_when_linear_part_disagrees():
    # x y_1 - y_0 at y = 1 + x^2: order inequality fails, b_0 = 0 but dH/dv_0 = -1 at x^0
    H = slot(1, 1, 1, 1) - slot(0, 1)
    with pytest.raises((HypothesisViolation, InconsistentPrefix)):
        reduce(H, S([(0, 1), (2, 1)], G(3)), 1)


def test_reduced_json_round_trip():
    P = problem("euler_gaussian")
    red = reduce_problem(P.equation, P.prefix).reduced
    assert ReducedEquation.from_json(red.to_json()).to_json() == red.to_json()
    assert EulerPolynomial.from_json(red.L.to_json()) == red.L
