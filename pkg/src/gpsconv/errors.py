"""Exception hierarchy.  Each error knows its pipeline stage and CLI exit class."""

from __future__ import annotations


class GPSError(Exception):
    stage = "pipeline"
    # "fail" -> hypothesis or consistency failure, "undecidable" -> need more data
    kind = "fail"

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "stage": self.stage, "message": str(self)}


class ZeroUpToFrontier(GPSError):
    stage = "gps"
    kind = "undecidable"

    def __init__(self, frontier=None):
        self.frontier = frontier
        super().__init__(f"series vanishes below frontier {frontier}")


class NonVanishingUndecidable(GPSError):
    stage = "check"
    kind = "undecidable"


class ThetaUndecidable(GPSError):
    stage = "reduction"
    kind = "undecidable"


class PrefixTooShort(GPSError):
    stage = "reduction"
    kind = "undecidable"


class InconsistentPrefix(GPSError):
    stage = "reduction"


class HypothesisViolation(GPSError):
    stage = "reduction"


class NotInSemigroup(GPSError):
    stage = "semigroup"


class MembershipViolation(GPSError):
    stage = "semigroup"

    def __init__(self, index, message=""):
        self.index = index
        super().__init__(message or f"exponent #{index} is not in the semigroup")


class EulerRootOnLattice(GPSError):
    stage = "lattice_recursion"

    def __init__(self, alpha, message=""):
        self.alpha = tuple(alpha)
        super().__init__(message or f"Euler polynomial vanishes at lattice point {self.alpha}")


class ResidualNonzero(GPSError):
    stage = "lattice_recursion"

    def __init__(self, alpha, message=""):
        self.alpha = tuple(alpha)
        super().__init__(message or f"nonzero residual at lattice point {self.alpha}")


class DominationFailure(GPSError):
    stage = "majorant"

    def __init__(self, alpha, message=""):
        self.alpha = tuple(alpha)
        super().__init__(message or f"|c| > C at lattice point {self.alpha}")


class OutsideSector(GPSError):
    stage = "eval"


class CertificateError(GPSError):
    stage = "verify"


class ProblemFormatError(GPSError):
    stage = "parse"
    kind = "usage"
