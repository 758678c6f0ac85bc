"""Truncated generalized power series  sum c_k x^{s_k}  with Gaussian-rational data.

A series is a certified truncation: every term with exponent below
``frontier`` is exact, nothing is claimed at or beyond it.  ``frontier=None``
means the series is known exactly (a finite sum).
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Optional, Tuple

from .exponents import GaussQ, ZERO, add_exp, min_exp
from .errors import ZeroUpToFrontier


class GeneralizedSeries:
    __slots__ = ("_terms", "frontier")

    def __init__(self, terms=(), frontier: Optional[GaussQ] = None):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        acc: Dict[GaussQ, GaussQ] = {}
        for e, c in items:
            e, c = GaussQ.coerce(e), GaussQ.coerce(c)
            acc[e] = acc.get(e, ZERO) + c
        if frontier is not None:
            frontier = GaussQ.coerce(frontier)
        self._terms: Tuple[Tuple[GaussQ, GaussQ], ...] = tuple(
            sorted(((e, c) for e, c in acc.items()
                    if c and (frontier is None or e < frontier)),
                   key=lambda t: t[0]._key()))
        self.frontier = frontier

    # -- constructors ---------------------------------------------------
    @classmethod
    def monomial(cls, exp, coef=1, frontier=None) -> "GeneralizedSeries":
        return cls([(exp, coef)], frontier)

    @classmethod
    def zero(cls, frontier=None) -> "GeneralizedSeries":
        return cls((), frontier)

    @classmethod
    def one(cls) -> "GeneralizedSeries":
        return cls([(ZERO, 1)])

    # -- basic protocol -------------------------------------------------
    @property
    def terms(self) -> Tuple[Tuple[GaussQ, GaussQ], ...]:
        return self._terms

    def __iter__(self) -> Iterator[Tuple[GaussQ, GaussQ]]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def exponents(self):
        return [e for e, _ in self._terms]

    def coefficient(self, exp) -> GaussQ:
        exp = GaussQ.coerce(exp)
        for e, c in self._terms:
            if e == exp:
                return c
        return ZERO

    def as_dict(self) -> Dict[GaussQ, GaussQ]:
        return dict(self._terms)

    def __eq__(self, other):
        if not isinstance(other, GeneralizedSeries):
            return NotImplemented
        return self._terms == other._terms and self.frontier == other.frontier

    def __hash__(self):
        return hash((self._terms, self.frontier))

    def __repr__(self):
        body = " + ".join(f"{c}*x^{e}" for e, c in self._terms) or "0"
        tail = "" if self.frontier is None else f" + O(x^{self.frontier})"
        return f"<{body}{tail}>"

    def is_exact(self) -> bool:
        return self.frontier is None

    def lower_order(self):
        """A lower bound for the order: ord if known, else the frontier."""
        if self._terms:
            return self._terms[0][0]
        return self.frontier

    def ord(self) -> GaussQ:
        if not self._terms:
            raise ZeroUpToFrontier(self.frontier)
        return self._terms[0][0]

    def truncate(self, frontier) -> "GeneralizedSeries":
        return GeneralizedSeries(self._terms, min_exp(self.frontier, frontier))

    def map_coefficients(self, fn) -> "GeneralizedSeries":
        return GeneralizedSeries([(e, fn(e, c)) for e, c in self._terms], self.frontier)

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, other.scale(-1))

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, GeneralizedSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, factor) -> "GeneralizedSeries":
        factor = GaussQ.coerce(factor)
        return GeneralizedSeries([(e, c * factor) for e, c in self._terms], self.frontier)

    def to_json(self) -> dict:
        return {
            "terms": [{"exp": e.to_json(), "coef": c.to_json()} for e, c in self._terms],
            "frontier": None if self.frontier is None else self.frontier.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "GeneralizedSeries":
        terms = [(GaussQ.from_json(t["exp"]), GaussQ.from_json(t["coef"]))
                 for t in data.get("terms", [])]
        fr = data.get("frontier")
        return cls(terms, None if fr is None else GaussQ.from_json(fr))


def add(f: GeneralizedSeries, g: GeneralizedSeries) -> GeneralizedSeries:
    acc = dict(f.terms)
    for e, c in g.terms:
        acc[e] = acc.get(e, ZERO) + c
    return GeneralizedSeries(acc, min_exp(f.frontier, g.frontier))


def mul(f: GeneralizedSeries, g: GeneralizedSeries) -> GeneralizedSeries:
    # unknown terms of g sit at or above g.frontier, so they only reach
    # exponents >= lower_order(f) + g.frontier (and symmetrically)
    frontier = min_exp(add_exp(f.lower_order(), g.frontier),
                       add_exp(g.lower_order(), f.frontier))
    acc: Dict[GaussQ, GaussQ] = {}
    for e1, c1 in f.terms:
        for e2, c2 in g.terms:
            e = e1 + e2
            if frontier is not None and not e < frontier:
                continue
            acc[e] = acc.get(e, ZERO) + c1 * c2
    return GeneralizedSeries(acc, frontier)


def power(f: GeneralizedSeries, k: int) -> GeneralizedSeries:
    result = GeneralizedSeries.one()
    for _ in range(k):
        result = mul(result, f)
    return result


def delta(f: GeneralizedSeries) -> GeneralizedSeries:
    return GeneralizedSeries([(e, c * e) for e, c in f.terms], f.frontier)


def delta_shifted(f: GeneralizedSeries, shift: GaussQ, times: int = 1) -> GeneralizedSeries:
    """(delta + shift)^times applied to f."""
    return GeneralizedSeries([(e, c * (e + shift) ** times) for e, c in f.terms], f.frontier)


def shift(f: GeneralizedSeries, beta) -> GeneralizedSeries:
    beta = GaussQ.coerce(beta)
    return GeneralizedSeries([(e + beta, c) for e, c in f.terms], add_exp(f.frontier, beta))


def ord(f: GeneralizedSeries) -> GaussQ:
    return f.ord()


def from_terms(pairs: Iterable, frontier=None) -> GeneralizedSeries:
    return GeneralizedSeries(list(pairs), frontier)
