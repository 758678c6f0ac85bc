"""The additive semigroup generated by the x-exponents of N, and its regeneration
by Z-independent generators with positive real parts.

For Gaussian rationals Z-independence coincides with Q-independence of the
(re, im) vectors, so at most two generators survive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .diffpoly import DiffPolynomial
from .errors import MembershipViolation, NotInSemigroup
from .exponents import GaussQ

LatticePoint = Tuple[int, ...]


def _check_positive(values, what):
    for v in values:
        if not v.re > 0:
            raise ValueError(f"{what} {v} must have positive real part")


@dataclass(frozen=True)
class GeneratorSet:
    gens: Tuple[GaussQ, ...]

    def __post_init__(self):
        _check_positive(self.gens, "generator")

    def __len__(self):
        return len(self.gens)


@dataclass(frozen=True)
class SemigroupBasis:
    rhos: Tuple[GaussQ, ...]
    expansions: Dict[GaussQ, LatticePoint] = field(default_factory=dict, compare=False)
    depths: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        _check_positive(self.rhos, "basis element")
        if not linalg.integer_kernel_trivial(self.rhos):
            raise ValueError(f"basis {self.rhos} is not Z-independent")

    @property
    def tau(self) -> int:
        return len(self.rhos)

    def point(self, alpha: Sequence[int]) -> GaussQ:
        """<alpha, rho>."""
        acc = GaussQ(0)
        for a, r in zip(alpha, self.rhos):
            if a:
                acc = acc + r * a
        return acc

    def min_re(self) -> Fraction:
        return min(r.re for r in self.rhos)

    def to_json(self) -> dict:
        return {
            "rhos": [r.to_json() for r in self.rhos],
            "expansions": [{"gen": g.to_json(), "vector": list(v)}
                           for g, v in self.expansions.items()],
        }

    @classmethod
    def from_json(cls, data) -> "SemigroupBasis":
        rhos = tuple(GaussQ.from_json(r) for r in data["rhos"])
        exps = {GaussQ.from_json(e["gen"]): tuple(e["vector"]) for e in data.get("expansions", [])}
        return cls(rhos, exps)


@dataclass(frozen=True)
class Dependency:
    independent: bool
    relation: Optional[Tuple[int, ...]]       # sum relation_i * gens_i = 0
    independent_subset: Tuple[int, ...]       # indices of a maximal independent subset


def extract_generators(N: DiffPolynomial) -> GeneratorSet:
    return GeneratorSet(tuple(N.xexponents()))


def dependency(gens: GeneratorSet) -> Dependency:
    chosen: List[int] = []
    relation = None
    for i, g in enumerate(gens.gens):
        current = [gens.gens[k] for k in chosen]
        if linalg.rank(current + [g]) > len(current):
            chosen.append(i)
        elif relation is None:
            a = linalg.solve(current, g)
            vec = [Fraction(0)] * len(gens.gens)
            for k, ak in zip(chosen, a):
                vec[k] = ak
            vec[i] = Fraction(-1)
            relation = tuple(linalg.primitive_integer(vec))
    return Dependency(relation is None, relation, tuple(chosen))


# -- the j-induction ------------------------------------------------------

Matrix = List[List[int]]


def _identity(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def rational_point(weights: Sequence[Fraction]) -> List[Fraction]:
    """Positive rationals x with sum x = 1 and x_i < weights_i; needs sum(weights) > 1."""
    total = sum(weights)
    if not total > 1 or any(w <= 0 for w in weights):
        raise ValueError("box does not meet the hyperplane")
    x = [w / total for w in weights]
    assert sum(x) == 1 and all(0 < xi < w for xi, w in zip(x, weights))
    return x


def _single_minus_step(basis: List[GaussQ], coeffs: List[int], t: int, m_t: int):
    """b = sum_{k != t} coeffs_k basis_k - m_t basis_t  with coeffs >= 0."""
    pos = [k for k, c in enumerate(coeffs) if c > 0 and k != t]
    weights = [Fraction(coeffs[k]) * basis[k].re / (m_t * basis[t].re) for k in pos]
    x = rational_point(weights)
    Q = 1
    for k, xk in zip(pos, x):
        Q *= xk.denominator * coeffs[k]
    new = list(basis)
    T = _identity(len(basis))
    for k, xk in zip(pos, x):
        frac = xk / coeffs[k] * m_t
        new[k] = basis[k] - basis[t] * frac
        n_k = frac * Q
        assert n_k.denominator == 1
        T[k][t] = int(n_k)
    new[t] = basis[t] / Q
    T[t][t] = Q
    new_coeffs = [c if k in pos else 0 for k, c in enumerate(coeffs)]
    new_coeffs[t] = 0
    return new, T, new_coeffs


def eliminate(basis: Sequence[GaussQ], coeffs: Sequence[int]):
    """Regenerate ``basis`` so that b = sum coeffs_i basis_i has nonnegative coordinates.

    Returns (new_basis, T, new_coeffs, depth):  basis_i = sum_j T[i][j] new_basis_j,
    b = sum new_coeffs_j new_basis_j, depth = number of negative coefficients.
    """
    basis, coeffs = list(basis), list(coeffs)
    negatives = [k for k, c in enumerate(coeffs) if c < 0]
    if not negatives:
        return basis, _identity(len(basis)), coeffs, 0
    t = negatives[-1]
    m_t = -coeffs[t]
    reduced = list(coeffs)
    reduced[t] = 0
    b1, T1, c1, depth = eliminate(basis, reduced)
    assert b1[t] == basis[t]
    b2, T2, c2 = _single_minus_step(b1, c1, t, m_t)
    return b2, _matmul(T1, T2), c2, depth + 1


def rationalize(gens: GeneratorSet) -> SemigroupBasis:
    distinct: List[GaussQ] = []
    for g in gens.gens:
        if g not in distinct:
            distinct.append(g)
    dep = dependency(GeneratorSet(tuple(distinct)))
    chosen = list(dep.independent_subset)
    basis = [distinct[i] for i in chosen]
    expansions: Dict[GaussQ, List[int]] = {}
    for pos, i in enumerate(chosen):
        vec = [0] * len(basis)
        vec[pos] = 1
        expansions[distinct[i]] = vec
    depths = []
    for i, b in enumerate(distinct):
        if i in chosen:
            continue
        a = linalg.solve(basis, b)
        # clear denominators by refining the basis: basis_k = d_k * (basis_k / d_k)
        for k, ak in enumerate(a):
            d = ak.denominator
            if d > 1:
                basis[k] = basis[k] / d
                for vec in expansions.values():
                    vec[k] *= d
                a[k] = ak * d
        coeffs = [int(ak) for ak in a]
        new_basis, T, c, depth = eliminate(basis, coeffs)
        depths.append(depth)
        expansions = {g: _matmul([vec], T)[0] for g, vec in expansions.items()}
        expansions[b] = c
        basis = new_basis
    result = SemigroupBasis(tuple(basis), {g: tuple(v) for g, v in expansions.items()},
                            tuple(depths))
    for g, v in result.expansions.items():
        assert result.point(v) == g and all(x >= 0 for x in v)
    return result


def decompose(xi: GaussQ, basis: SemigroupBasis) -> LatticePoint:
    xi = GaussQ.coerce(xi)
    a = linalg.solve(list(basis.rhos), xi)
    if a is None:
        raise NotInSemigroup(f"{xi} is outside the rational span of the basis")
    if any(x.denominator != 1 or x < 0 for x in a) or all(x == 0 for x in a):
        raise NotInSemigroup(f"{xi} has coordinates {[str(x) for x in a]} over the basis")
    return tuple(int(x) for x in a)


def verify_membership(exponents: Sequence[GaussQ], s_mu: GaussQ,
                      basis: SemigroupBasis) -> List[LatticePoint]:
    out = []
    for k, s in enumerate(exponents):
        try:
            out.append(decompose(s - s_mu, basis))
        except NotInSemigroup as exc:
            raise MembershipViolation(k, f"s_{k} - s_mu = {s - s_mu}: {exc}") from exc
    return out


def lattice_points(tau: int, degree: int):
    """All alpha in Z_+^tau with |alpha| = degree, lexicographically descending."""
    if tau == 0:
        if degree == 0:
            yield ()
        return
    if tau == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in lattice_points(tau - 1, degree - first):
            yield (first,) + rest
