"""Typed errors shared across the toolkit."""

from __future__ import annotations


class PwlcyclesError(Exception):
    """Base class for all toolkit errors."""


class SingularDenominatorError(PwlcyclesError):
    """The cycle denominator 1 - a^(n-1)*d is zero within tolerance."""

    def __init__(self, a: float, d: float, n: int, denominator: float):
        self.a = a
        self.d = d
        self.n = n
        self.denominator = denominator
        super().__init__(
            f"singular denominator 1 - a^{n - 1}*d = {denominator!r} "
            f"for a={a!r}, d={d!r}, n={n}"
        )


class NotAdmissibleError(PwlcyclesError):
    """Computed cycle points violate the sign pattern of their sequence.

    Carries the raw values so callers can inspect the failed candidate.
    """

    def __init__(self, xs, letters, message: str = ""):
        self.xs = tuple(float(v) for v in xs)
        self.letters = str(letters)
        super().__init__(
            message
            or f"cycle candidate not admissible: xs={self.xs}, letters={self.letters!r}"
        )


class DegenerateOffsetError(PwlcyclesError):
    """mu_hat = 0: the origin is a fixed point and cycle formulas collapse."""


class EigenvalueOneError(PwlcyclesError):
    """A linear-part eigenvalue sits on 1, so the fixed-point solve is singular."""


class DivergenceError(PwlcyclesError):
    """An orbit coordinate exceeded the divergence threshold."""

    def __init__(self, step: int, state):
        self.step = int(step)
        self.state = state
        super().__init__(f"orbit diverged at step {step}")


class StructureViolationError(PwlcyclesError):
    """The boundary row of W has nonzero off-diagonal entries."""

    def __init__(self, s: int, entries):
        # entries: list of (row, col, value) with 1-based coordinates
        self.s = int(s)
        self.entries = list(entries)
        desc = ", ".join(f"W[{r},{c}]={v!r}" for r, c, v in self.entries)
        super().__init__(f"row {s} of W must be zero off-diagonal; found {desc}")


class NotAdjacentError(PwlcyclesError):
    """Region pair differs in more than one coordinate."""


class SameRegionError(PwlcyclesError):
    """Region pair is identical; no switching boundary between them."""


class ConfigError(PwlcyclesError):
    """System configuration document is malformed or inconsistent."""
