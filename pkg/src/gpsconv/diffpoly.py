"""Polynomials  sum c x^beta y_0^{q_0} ... y_n^{q_n}  in the slots y_j = delta^j y."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import gps
from .errors import NonVanishingUndecidable, ProblemFormatError
from .exponents import GaussQ, ZERO, min_exp
from .gps import GeneralizedSeries


@dataclass(frozen=True)
class DiffMonomial:
    coef: GaussQ
    xexp: GaussQ
    powers: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.powers)

    def to_json(self) -> dict:
        return {"coef": self.coef.to_json(), "xexp": self.xexp.to_json(),
                "powers": list(self.powers)}

    def __str__(self):
        slots = "".join(f"*y{j}^{q}" if q > 1 else f"*y{j}"
                        for j, q in enumerate(self.powers) if q)
        x = "" if self.xexp == 0 else f"*x^{self.xexp}"
        return f"{self.coef}{x}{slots}"


class DiffPolynomial:
    """Immutable; monomials with equal (xexp, powers) are merged on construction."""

    __slots__ = ("order", "monomials")

    def __init__(self, order: int, monomials: Sequence = ()):
        if order < 0:
            raise ValueError("order must be nonnegative")
        acc: Dict[Tuple[GaussQ, Tuple[int, ...]], GaussQ] = {}
        for m in monomials:
            if not isinstance(m, DiffMonomial):
                coef, xexp, powers = m
                m = DiffMonomial(GaussQ.coerce(coef), GaussQ.coerce(xexp), tuple(powers))
            if len(m.powers) != order + 1:
                raise ValueError(f"monomial {m} needs {order + 1} slot powers")
            if any(q < 0 for q in m.powers):
                raise ValueError("slot powers must be nonnegative")
            key = (m.xexp, m.powers)
            acc[key] = acc.get(key, ZERO) + m.coef
        mons = [DiffMonomial(c, e, p) for (e, p), c in acc.items() if c]
        mons.sort(key=lambda m: (m.powers, m.xexp._key()))
        self.order = order
        self.monomials: Tuple[DiffMonomial, ...] = tuple(mons)

    def __iter__(self):
        return iter(self.monomials)

    def __len__(self):
        return len(self.monomials)

    def __eq__(self, other):
        if not isinstance(other, DiffPolynomial):
            return NotImplemented
        return self.order == other.order and self.monomials == other.monomials

    def __hash__(self):
        return hash((self.order, self.monomials))

    def __repr__(self):
        return "DiffPolynomial(" + " + ".join(map(str, self.monomials)) + ")" if self.monomials \
            else f"DiffPolynomial(0, order={self.order})"

    def is_zero(self) -> bool:
        return not self.monomials

    def __add__(self, other: "DiffPolynomial") -> "DiffPolynomial":
        n = max(self.order, other.order)
        return DiffPolynomial(n, [_pad(m, n) for m in self.monomials + other.monomials])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "DiffPolynomial":
        factor = GaussQ.coerce(factor)
        return DiffPolynomial(self.order, [DiffMonomial(m.coef * factor, m.xexp, m.powers)
                                           for m in self.monomials])

    def __mul__(self, other: "DiffPolynomial") -> "DiffPolynomial":
        n = max(self.order, other.order)
        out = []
        for a in self.monomials:
            a = _pad(a, n)
            for b in other.monomials:
                b = _pad(b, n)
                out.append(DiffMonomial(a.coef * b.coef, a.xexp + b.xexp,
                                        tuple(p + q for p, q in zip(a.powers, b.powers))))
        return DiffPolynomial(n, out)

    def shift_x(self, beta) -> "DiffPolynomial":
        beta = GaussQ.coerce(beta)
        return DiffPolynomial(self.order, [DiffMonomial(m.coef, m.xexp + beta, m.powers)
                                           for m in self.monomials])

    def xexponents(self) -> List[GaussQ]:
        return sorted({m.xexp for m in self.monomials}, key=lambda e: e._key())

    def to_json(self) -> dict:
        return {"order": self.order, "monomials": [m.to_json() for m in self.monomials]}

    @classmethod
    def from_json(cls, data) -> "DiffPolynomial":
        try:
            order = data["order"]
            if not isinstance(order, int) or order < 0:
                raise ProblemFormatError("'order' must be a nonnegative integer")
            mons = []
            for k, m in enumerate(data.get("monomials", [])):
                powers = m["powers"]
                if len(powers) != order + 1 or not all(isinstance(q, int) and q >= 0 for q in powers):
                    raise ProblemFormatError(
                        f"monomial #{k}: 'powers' must hold {order + 1} nonnegative integers")
                mons.append(DiffMonomial(GaussQ.from_json(m["coef"]),
                                         GaussQ.from_json(m.get("xexp", {"re": "0", "im": "0"})),
                                         tuple(powers)))
            return cls(order, mons)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ProblemFormatError):
                raise
            raise ProblemFormatError(f"bad differential polynomial: {exc}") from exc


def _pad(m: DiffMonomial, n: int) -> DiffMonomial:
    if len(m.powers) == n + 1:
        return m
    return DiffMonomial(m.coef, m.xexp, m.powers + (0,) * (n + 1 - len(m.powers)))


def slot(j: int, order: int, coef=1, xexp=0) -> DiffPolynomial:
    """The polynomial coef * x^xexp * y_j."""
    powers = [0] * (order + 1)
    powers[j] = 1
    return DiffPolynomial(order, [(coef, xexp, powers)])


def constant(order: int, coef=1, xexp=0) -> DiffPolynomial:
    return DiffPolynomial(order, [(coef, xexp, [0] * (order + 1))])


class _PowerCache:
    def __init__(self, slots: Sequence[GeneralizedSeries]):
        self.slots = slots
        self.cache: Dict[Tuple[int, int], GeneralizedSeries] = {}

    def get(self, j: int, q: int) -> GeneralizedSeries:
        if q == 0:
            return GeneralizedSeries.one()
        if q == 1:
            return self.slots[j]
        key = (j, q)
        if key not in self.cache:
            self.cache[key] = gps.mul(self.get(j, q - 1), self.slots[j])
        return self.cache[key]


def evaluate_slots(F: DiffPolynomial, slots: Sequence[GeneralizedSeries]) -> GeneralizedSeries:
    """F(x, slots[0], ..., slots[n]) for arbitrary slot series."""
    cache = _PowerCache(slots)
    total = GeneralizedSeries.zero()
    for m in F.monomials:
        term = GeneralizedSeries.monomial(m.xexp, m.coef)
        for j, q in enumerate(m.powers):
            if q:
                term = gps.mul(term, cache.get(j, q))
        total = gps.add(total, term)
    return total


def substitute(F: DiffPolynomial, phi: GeneralizedSeries) -> GeneralizedSeries:
    """F(x, phi, delta phi, ..., delta^n phi) with propagated frontier."""
    slots = [phi]
    for _ in range(F.order):
        slots.append(gps.delta(slots[-1]))
    return evaluate_slots(F, slots)


def partial(F: DiffPolynomial, j: int) -> DiffPolynomial:
    if not 0 <= j <= F.order:
        raise ValueError(f"slot {j} out of range 0..{F.order}")
    out = []
    for m in F.monomials:
        q = m.powers[j]
        if q:
            powers = list(m.powers)
            powers[j] = q - 1
            out.append(DiffMonomial(m.coef * q, m.xexp, tuple(powers)))
    return DiffPolynomial(F.order, out)


@dataclass
class ConditionReport:
    dFn_order: Optional[GaussQ]
    per_j_orders: List[Optional[GaussQ]]      # None: zero up to its frontier
    satisfied: bool
    witness_frontier: Optional[GaussQ]
    indeterminate: bool = False
    diagnostics: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "dFn_order": None if self.dFn_order is None else self.dFn_order.to_json(),
            "per_j_orders": [o.to_json() if o is not None else "ZeroUpToFrontier"
                             for o in self.per_j_orders],
            "satisfied": self.satisfied,
            "indeterminate": self.indeterminate,
            "witness_frontier": None if self.witness_frontier is None
            else self.witness_frontier.to_json(),
            "diagnostics": list(self.diagnostics),
        }


def check_hypotheses(F: DiffPolynomial, prefix: GeneralizedSeries) -> ConditionReport:
    """Check nonvanishing of dF/dy_n and the order inequalities on a truncation.

    Orders are read off below each evaluated frontier; a derivative that is
    zero below its frontier only passes when that frontier already lies at or
    above the order of dF/dy_n.
    """
    if not len(prefix):
        raise ValueError("prefix must hold at least one term")
    n = F.order
    values = [substitute(partial(F, j), prefix) for j in range(n + 1)]
    last = values[n]
    if not len(last):
        if partial(F, n).is_zero():
            raise NonVanishingUndecidable("dF/dy_n vanishes identically")
        raise NonVanishingUndecidable(
            f"dF/dy_n is zero below frontier {last.frontier}; supply a longer prefix")
    theta = last.ord()
    witness = None
    for v in values:
        witness = min_exp(witness, v.frontier)
    orders: List[Optional[GaussQ]] = []
    satisfied, indeterminate = True, False
    diagnostics = []
    for j, v in enumerate(values):
        if len(v):
            o = v.ord()
            orders.append(o)
            if o < theta:
                satisfied = False
                diagnostics.append(f"ord dF/dy_{j} = {o} precedes ord dF/dy_n = {theta}")
        else:
            orders.append(None)
            if v.frontier is not None and v.frontier < theta:
                satisfied = False
                indeterminate = True
                diagnostics.append(
                    f"dF/dy_{j} is zero below {v.frontier}, which precedes {theta}; "
                    "order inequality undecided")
    return ConditionReport(theta, orders, satisfied, witness, indeterminate, diagnostics)
