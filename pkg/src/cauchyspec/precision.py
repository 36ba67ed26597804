"""Configurable-precision arithmetic context.

Matrix assembly for the Galerkin eigenvalue bounds cancels catastrophically
in machine precision once the polynomial degree passes ~25 (the Legendre
monomial coefficients grow like 4^n with alternating signs).  The extended
context therefore guarantees a requested number of significant digits for
the scalar operations involved; the assembly core itself exceeds any request
by working over exact integers and rounding once at the end.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import mpmath

__all__ = ["PrecisionContext", "default_digits"]

_ENV_VAR = "CAUCHYSPEC_DIGITS"


def default_digits() -> int:
    """Default significant digits; overridable via the CAUCHYSPEC_DIGITS
    environment variable."""
    raw = os.environ.get(_ENV_VAR, "")
    try:
        val = int(raw)
    except ValueError:
        return 50
    return max(val, 15)


@dataclass(frozen=True)
class PrecisionContext:
    """Arithmetic context: ``machine`` (float64) or ``extended`` software
    floating point with at least ``significant_digits`` digits."""

    significant_digits: int = 50
    mode: str = "extended"

    def __post_init__(self):
        if self.significant_digits < 15:
            raise ValueError("significant_digits must be >= 15")
        if self.mode not in ("machine", "extended"):
            raise ValueError(f"unknown precision mode {self.mode!r}")

    @classmethod
    def from_env(cls, mode: str = "extended") -> "PrecisionContext":
        return cls(default_digits(), mode)

    @property
    def extended(self) -> bool:
        return self.mode == "extended"

    def mpf(self, value):
        """Value as a software float carrying this context's digits."""
        with mpmath.workdps(self.significant_digits + 5):
            return mpmath.mpf(value)

    def gamma_ratio(self, a: float, b: float) -> float:
        """Gamma(a)/Gamma(b) at the context's precision, rounded to float."""
        if self.extended:
            with mpmath.workdps(self.significant_digits + 5):
                return float(mpmath.gamma(a) / mpmath.gamma(b))
        import math
        return math.exp(math.lgamma(a) - math.lgamma(b))

    def pi(self) -> float:
        if self.extended:
            with mpmath.workdps(self.significant_digits + 5):
                return float(mpmath.pi)
        import math
        return math.pi
