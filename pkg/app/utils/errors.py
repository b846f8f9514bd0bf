"""Exception types shared by all feature packages."""
from __future__ import annotations


class SkewShiftLabError(Exception):
    """Base class for errors raised by the library."""


class InputError(SkewShiftLabError, ValueError):
    """Malformed or out-of-range input."""


class InfeasibleSizeError(InputError):
    def __init__(self, what: str, estimate: float, limit: float) -> None:
        super().__init__(
            f"{what}: estimated size {estimate:.3g} exceeds the desk-scale limit {limit:.3g}"
        )
        self.what = what
        self.estimate = estimate
        self.limit = limit


class DepthError(InputError):
    """Continued-fraction data too shallow for the requested N."""


class EigensolverError(SkewShiftLabError):
    def __init__(self, message: str, residuals: list[float]) -> None:
        super().__init__(f"{message} (max residual {max(residuals, default=0.0):.3e})")
        self.residuals = residuals


def check_size(what: str, estimate: float, limit: float) -> None:
    if estimate > limit:
        raise InfeasibleSizeError(what, estimate, limit)


class HypothesisError(SkewShiftLabError):
    """An estimate's hypothesis fails for the supplied data (e.g. γ too large)."""
