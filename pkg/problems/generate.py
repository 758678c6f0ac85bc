"""Regenerate the fixture problem files in this directory.

Prefix coefficients come from closed forms or direct scalar recursions,
independent of the package's reduction machinery.
"""

import json
from fractions import Fraction as Fr
from math import factorial
from pathlib import Path

from gpsconv.exponents import GaussQ as G
from gpsconv.gps import GeneralizedSeries, mul

HERE = Path(__file__).parent


def q(x):
    x = G.coerce(x)
    return {"re": str(x.re), "im": str(x.im)}


def mono(coef, xexp, powers):
    return {"coef": q(coef), "xexp": q(xexp), "powers": list(powers)}


def write(name, order, monomials, terms, frontier, **options):
    data = {
        "format": 1,
        "name": name,
        "equation": {"order": order, "monomials": monomials},
        "prefix": [{"exp": q(e), "coef": q(c)} for e, c in terms],
        "frontier": frontier if isinstance(frontier, str) else q(frontier),
        "options": {"max_degree": 10, "sector_opening": 3.141592653589793,
                    "radius_grid_cap": 40, **options},
    }
    (HERE / f"{name}.json").write_text(json.dumps(data, indent=2) + "\n")


def exp_series(exp, scale, count):
    """exp(scale * x^exp) truncated to its first count terms."""
    return GeneralizedSeries([(G.coerce(exp) * k, G.coerce(scale) ** k / factorial(k))
                              for k in range(count)])


def main():
    # (1 - x)(delta y + 2 y) - x = 0,  y = sum x^k / (k + 2)
    write("euler_integer", 1,
          [mono(1, 0, (0, 1)), mono(2, 0, (1, 0)), mono(-1, 1, (0, 1)),
           mono(-2, 1, (1, 0)), mono(-1, 1, (0, 0))],
          [(k, Fr(1, k + 2)) for k in range(1, 5)], G(5))

    # delta y - y/3 - x^(1/2) y = 0,  y = x^(1/3) exp(2 x^(1/2))
    write("euler_rational", 1,
          [mono(1, 0, (0, 1)), mono(Fr(-1, 3), 0, (1, 0)), mono(-1, Fr(1, 2), (1, 0))],
          [(Fr(1, 3) + Fr(k, 2), Fr(2 ** k, factorial(k))) for k in range(4)],
          G(Fr(1, 3) + 2))

    # delta y - x^(1+i) y = 0,  y = exp(x^(1+i) / (1+i))
    r = G(1, 1)
    write("euler_gaussian", 1,
          [mono(1, 0, (0, 1)), mono(-1, r, (1, 0))],
          exp_series(r, 1 / r, 4).terms, r * 4)

    # delta y - (x^(1/2) + x^(1+i)) y = 0,  y = exp(2 x^(1/2)) exp(x^(1+i) / (1+i))
    y = mul(exp_series(Fr(1, 2), 2, 8), exp_series(r, 1 / r, 4))
    frontier = G(2)
    write("two_generators", 1,
          [mono(1, 0, (0, 1)), mono(-1, Fr(1, 2), (1, 0)), mono(-1, r, (1, 0))],
          [(e, c) for e, c in y.terms if e < frontier], frontier)

    # delta y = x + y^2,  k c_k = [k = 1] + sum_{i+j=k} c_i c_j
    c = {1: Fr(1)}
    for k in range(2, 6):
        c[k] = sum(c[i] * c[k - i] for i in range(1, k)) / k
    write("riccati", 1,
          [mono(1, 0, (0, 1)), mono(-1, 1, (0, 0)), mono(-1, 0, (2, 0))],
          sorted(c.items()), G(6))

    # delta^2 y + y = x + x y^2,  (k^2 + 1) c_k = [k = 1] + sum_{i+j=k-1} c_i c_j
    c = {1: Fr(1, 2)}
    for k in range(2, 7):
        s = sum(c.get(i, 0) * c.get(k - 1 - i, 0) for i in range(1, k - 1))
        if s:
            c[k] = s / (k * k + 1)
    write("second_order", 2,
          [mono(1, 0, (0, 0, 1)), mono(1, 0, (1, 0, 0)), mono(-1, 1, (0, 0, 0)),
           mono(-1, 1, (2, 0, 0))],
          sorted(c.items()), G(7), max_degree=8)

    # (delta - 1)(delta - 3) y - x y = 0 has a resonance: L(1) = 0 on the lattice
    write("euler_root", 2,
          [mono(1, 0, (0, 0, 1)), mono(-4, 0, (0, 1, 0)), mono(3, 0, (1, 0, 0)),
           mono(-1, 1, (1, 0, 0))],
          [(1, 1), (2, -1)], G(3))

    # (delta - 1)(delta - 3) y = x (delta - 2) y: resonance at x^3 with free coefficient 1;
    # mu = 1 puts a root of L on the lattice, mu = 2 does not
    write("resonant_bump", 2,
          [mono(1, 0, (0, 0, 1)), mono(-4, 0, (0, 1, 0)), mono(3, 0, (1, 0, 0)),
           mono(-1, 1, (0, 1, 0)), mono(2, 1, (1, 0, 0))],
          [(1, 1), (2, 1), (3, 1)], G(4))

    # first fixture with a wrong second coefficient
    write("inconsistent_prefix", 1,
          [mono(1, 0, (0, 1)), mono(2, 0, (1, 0)), mono(-1, 1, (0, 1)),
           mono(-2, 1, (1, 0)), mono(-1, 1, (0, 0))],
          [(1, Fr(1, 3)), (2, Fr(1, 2)), (3, Fr(1, 5))], G(4))

    # y0^2 - x: no dependence on delta y
    write("no_top_slot", 1, [mono(1, 0, (2, 0)), mono(-1, 1, (0, 0))],
          [(Fr(1, 2), 1)], G(1))


if __name__ == "__main__":
    main()
