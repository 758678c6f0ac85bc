"""Problem files: equation, solution prefix and options, as JSON."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .diffpoly import DiffPolynomial
from .errors import ProblemFormatError
from .exponents import GaussQ
from .gps import GeneralizedSeries

FORMAT = 1


@dataclass
class Options:
    max_degree: int = 10
    sector_opening: float = math.pi
    radius_grid_cap: int = 40

    def to_json(self) -> dict:
        return {"max_degree": self.max_degree, "sector_opening": self.sector_opening,
                "radius_grid_cap": self.radius_grid_cap}


@dataclass
class Problem:
    equation: DiffPolynomial
    prefix_terms: List[Tuple[GaussQ, GaussQ]]
    frontier: Optional[GaussQ]           # None with exact=True: the prefix is the whole solution
    exact: bool = False
    options: Options = field(default_factory=Options)
    name: str = ""

    @property
    def prefix(self) -> GeneralizedSeries:
        """The certified part of the prefix (terms strictly below the frontier)."""
        return GeneralizedSeries(self.prefix_terms, None if self.exact else self.frontier)

    @property
    def exponents(self) -> List[GaussQ]:
        return [e for e, _ in self.prefix_terms]

    def to_json(self) -> dict:
        data = {
            "format": FORMAT,
            "name": self.name,
            "equation": self.equation.to_json(),
            "prefix": [{"exp": e.to_json(), "coef": c.to_json()} for e, c in self.prefix_terms],
            "frontier": None if self.exact or self.frontier is None else self.frontier.to_json(),
            "options": self.options.to_json(),
        }
        if self.exact:
            data["frontier"] = "exact"
        return data


def parse_problem(data) -> Problem:
    if not isinstance(data, dict):
        raise ProblemFormatError("problem file must hold a JSON object")
    if data.get("format", FORMAT) != FORMAT:
        raise ProblemFormatError(f"unsupported format {data.get('format')!r}")
    if "equation" not in data or "prefix" not in data:
        raise ProblemFormatError("problem needs 'equation' and 'prefix'")
    F = DiffPolynomial.from_json(data["equation"])
    if F.order < 1:
        raise ProblemFormatError("equation order must be at least 1")
    raw = data["prefix"]
    frontier_raw = data.get("frontier", "last")
    if isinstance(raw, dict):
        frontier_raw = raw.get("frontier", frontier_raw)
        raw = raw.get("terms", [])
    try:
        terms = [(GaussQ.from_json(t["exp"]), GaussQ.from_json(t["coef"])) for t in raw]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ProblemFormatError(f"bad prefix term: {exc}") from exc
    if not terms:
        raise ProblemFormatError("prefix must hold at least one term")
    for (a, _), (b, _) in zip(terms, terms[1:]):
        if not a < b:
            raise ProblemFormatError(f"prefix exponents must increase strictly: {a} then {b}")
    if any(c.is_zero() for _, c in terms):
        raise ProblemFormatError("prefix coefficients must be nonzero")
    exact = False
    if frontier_raw == "exact":
        exact, frontier = True, None
    elif frontier_raw == "last" or frontier_raw is None:
        # the last listed term only announces the next exponent
        frontier = terms[-1][0]
    else:
        try:
            frontier = GaussQ.from_json(frontier_raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ProblemFormatError(f"bad frontier: {exc}") from exc
        if not terms[-1][0] < frontier:
            raise ProblemFormatError("frontier must lie above every prefix exponent")
    opts = data.get("options", {}) or {}
    try:
        options = Options(int(opts.get("max_degree", 10)),
                          float(opts.get("sector_opening", math.pi)),
                          int(opts.get("radius_grid_cap", 40)))
    except (TypeError, ValueError) as exc:
        raise ProblemFormatError(f"bad options: {exc}") from exc
    return Problem(F, terms, frontier, exact, options, str(data.get("name", "")))


def load_problem(path) -> Problem:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_problem(data)
