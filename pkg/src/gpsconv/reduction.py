"""Reduce F(x, y, ..., delta^n y) = 0 to  L(delta) u = N(x, u, ..., delta^n u).

The change of unknown is  y = sum_{k<=mu} c_k x^{s_k} + x^{s_mu} u;
every monomial of N carries x^beta with Re beta > 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import diffpoly, gps
from .diffpoly import DiffMonomial, DiffPolynomial
from .errors import HypothesisViolation, InconsistentPrefix, PrefixTooShort, ThetaUndecidable
from .exponents import GaussQ, ZERO
from .gps import GeneralizedSeries


@dataclass(frozen=True)
class EulerPolynomial:
    """L(xi) = b_0 + b_1 (xi + shift) + ... + b_n (xi + shift)^n."""

    b: Tuple[GaussQ, ...]
    shift: GaussQ

    def __post_init__(self):
        if not self.b or not self.b[-1]:
            raise ValueError("leading coefficient b_n must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.b) - 1

    def coefficients(self) -> Tuple[GaussQ, ...]:
        """Coefficients l_j of L(xi) = sum l_j xi^j."""
        n = self.degree
        out = [ZERO] * (n + 1)
        for i, bi in enumerate(self.b):
            for j in range(i + 1):
                out[j] = out[j] + bi * comb(i, j) * self.shift ** (i - j)
        return tuple(out)

    def __call__(self, xi) -> GaussQ:
        xi = GaussQ.coerce(xi)
        t = xi + self.shift
        acc = ZERO
        for bi in reversed(self.b):
            acc = acc * t + bi
        return acc

    def to_json(self) -> dict:
        return {"b": [c.to_json() for c in self.b], "shift": self.shift.to_json()}

    @classmethod
    def from_json(cls, data) -> "EulerPolynomial":
        return cls(tuple(GaussQ.from_json(c) for c in data["b"]), GaussQ.from_json(data["shift"]))


@dataclass
class ReducedEquation:
    L: EulerPolynomial
    N: DiffPolynomial
    mu: int
    theta: GaussQ
    s0: GaussQ
    s_mu: GaussQ
    head: GeneralizedSeries                  # sum_{k<=mu} c_k x^{s_k}, exact
    absorbed: GeneralizedSeries = field(default_factory=GeneralizedSeries.zero)
    # u = absorbed + w, with this equation written for w

    @property
    def order(self) -> int:
        return self.L.degree

    def to_json(self) -> dict:
        return {
            "L": self.L.to_json(),
            "N": self.N.to_json(),
            "mu": self.mu,
            "theta": self.theta.to_json(),
            "s0": self.s0.to_json(),
            "s_mu": self.s_mu.to_json(),
            "head": self.head.to_json(),
            "absorbed": self.absorbed.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "ReducedEquation":
        return cls(EulerPolynomial.from_json(data["L"]), DiffPolynomial.from_json(data["N"]),
                   int(data["mu"]), GaussQ.from_json(data["theta"]),
                   GaussQ.from_json(data["s0"]), GaussQ.from_json(data["s_mu"]),
                   GeneralizedSeries.from_json(data["head"]),
                   GeneralizedSeries.from_json(data.get("absorbed", {"terms": []})))


def compose(F: DiffPolynomial, images: Sequence[DiffPolynomial], order: int) -> DiffPolynomial:
    """Replace each slot y_i of F by the polynomial images[i] (in slots of ``order``)."""
    cache: Dict[Tuple[int, int], DiffPolynomial] = {}

    def pw(i, q):
        if q == 0:
            return diffpoly.constant(order)
        if (i, q) not in cache:
            cache[(i, q)] = images[i] if q == 1 else pw(i, q - 1) * images[i]
        return cache[(i, q)]

    out: List[DiffMonomial] = []
    for m in F.monomials:
        term = diffpoly.constant(order, m.coef, m.xexp)
        for i, q in enumerate(m.powers):
            if q:
                term = term * pw(i, q)
        out.extend(term.monomials)
    return DiffPolynomial(order, out)


def shifted_slot_images(n: int, shift: GaussQ, factor_exp=ZERO, base=None):
    """Images of y_i = base_i + x^factor_exp (delta + shift)^i w  in the w-slots."""
    images = []
    for i in range(n + 1):
        mons = []
        for j in range(i + 1):
            c = comb(i, j) * shift ** (i - j)
            if c:
                powers = [0] * (n + 1)
                powers[j] = 1
                mons.append((c, factor_exp, powers))
        if base is not None:
            for e, c in base[i].terms:
                mons.append((c, e, [0] * (n + 1)))
        images.append(DiffPolynomial(n, mons))
    return images


def normalize(F: DiffPolynomial, s0) -> DiffPolynomial:
    """H(x, v) = x^{-m} F(x, x^s0 v, x^s0 (delta+s0) v, ...) with m the least
    x-exponent, so the exponents of H are >= 0 and the least one is 0."""
    s0 = GaussQ.coerce(s0)
    n = F.order
    images = shifted_slot_images(n, s0, factor_exp=s0)
    H = compose(F, images, n)
    if H.is_zero():
        return H
    return H.shift_x(-H.xexponents()[0])


def compute_theta(H: DiffPolynomial, prefix_v: GeneralizedSeries):
    """theta = ord dH/dv_n(prefix) and b_i = [x^theta] dH/dv_i(prefix)."""
    n = H.order
    values = [diffpoly.substitute(diffpoly.partial(H, i), prefix_v) for i in range(n + 1)]
    if not len(values[n]):
        raise ThetaUndecidable(
            f"dH/dv_n vanishes below frontier {values[n].frontier}")
    theta = values[n].ord()
    b = []
    for i, v in enumerate(values):
        if v.frontier is not None and not theta < v.frontier:
            raise ThetaUndecidable(
                f"dH/dv_{i} is only known below {v.frontier}, not past theta = {theta}")
        b.append(v.coefficient(theta))
    return theta, tuple(b)


def choose_mu(exponents: Sequence[GaussQ], theta: GaussQ, frontier=None,
              exact: bool = False, start: int = 0) -> int:
    """Least mu >= start with Re(s_mu - s_0) > Re theta and Re(s_{mu+1} - s_mu) > 0.

    Past the last listed exponent the next one is unknown; it is bounded by
    the frontier (terms are complete below it) or absent when ``exact``.
    """
    exps = [GaussQ.coerce(e) for e in exponents]
    if not exps:
        raise PrefixTooShort("empty prefix")
    s0 = exps[0]
    for mu in range(start, len(exps)):
        if not (exps[mu] - s0).re > theta.re:
            continue
        if mu + 1 < len(exps):
            if (exps[mu + 1] - exps[mu]).re > 0:
                return mu
        elif exact or (frontier is not None and frontier.re > exps[mu].re):
            return mu
    raise PrefixTooShort(
        f"no mu >= {start} in a prefix of {len(exps)} terms satisfies the reduction conditions "
        f"(theta = {theta})")


def reduce(H: DiffPolynomial, prefix_v: GeneralizedSeries, mu: int,
           theta=None, b=None, s0=ZERO) -> ReducedEquation:
    """Taylor-expand H around the head Phi_mu and divide by x^{s_mu - s0 + theta}."""
    n = H.order
    if theta is None or b is None:
        theta, b = compute_theta(H, prefix_v)
    terms = prefix_v.terms
    if mu >= len(terms):
        raise PrefixTooShort(f"mu = {mu} but prefix has {len(terms)} terms")
    d = terms[mu][0]
    if not d.re > theta.re:
        raise HypothesisViolation(f"Re(s_mu - s_0) = {d.re} must exceed Re theta = {theta.re}")
    head_v = GeneralizedSeries(terms[:mu + 1])
    base = [head_v]
    for _ in range(n):
        base.append(gps.delta(base[-1]))
    images = shifted_slot_images(n, d, factor_exp=d, base=base)
    R = compose(H, images, n).shift_x(-(d + theta))

    L = EulerPolynomial(tuple(b), d)
    ell = L.coefficients()
    linear_x0 = [ZERO] * (n + 1)
    rest: List[DiffMonomial] = []
    for m in R.monomials:
        deg = m.degree
        if deg == 1 and m.xexp == 0:
            linear_x0[m.powers.index(1)] = m.coef
            continue
        if not m.xexp.re > 0:
            if deg == 0:
                raise InconsistentPrefix(
                    f"H(x, Phi_mu) has a term of order {m.xexp + d + theta}, not above "
                    f"s_mu - s_0 + theta = {d + theta} in real part")
            raise HypothesisViolation(
                f"monomial {m} of the expanded equation has Re(x-exponent) <= 0")
        rest.append(DiffMonomial(-m.coef, m.xexp, m.powers))
    if tuple(linear_x0) != ell:
        raise HypothesisViolation(
            "leading part of dH/dv_i(Phi_mu) disagrees with the Euler polynomial read from "
            "the prefix; the order inequalities fail")
    head_y = gps.shift(head_v, s0)
    return ReducedEquation(L, DiffPolynomial(n, rest), mu, theta, GaussQ.coerce(s0),
                           d + s0, head_y)


@dataclass
class Reduction:
    """Everything the pipeline needs from the reduction stage."""
    H: DiffPolynomial
    prefix_v: GeneralizedSeries
    theta: GaussQ
    b: Tuple[GaussQ, ...]
    reduced: ReducedEquation


def reduce_problem(F: DiffPolynomial, prefix: GeneralizedSeries, mu: Optional[int] = None,
                   start: int = 0) -> Reduction:
    s0 = prefix.ord()
    H = normalize(F, s0)
    prefix_v = gps.shift(prefix, -s0)
    theta, b = compute_theta(H, prefix_v)
    if mu is None:
        mu = choose_mu(prefix.exponents(), theta, prefix.frontier, prefix.is_exact(), start)
    return Reduction(H, prefix_v, theta, b, reduce(H, prefix_v, mu, theta, b, s0))
