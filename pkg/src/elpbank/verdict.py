"""Verdict objects returned by the exact checkers, plus the package exceptions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .algebra import LaurentPoly


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exact identity check.

    ``clause`` names what failed, ``location`` pins it down (a matrix entry,
    a generator index) and ``residual`` is the nonzero difference polynomial.
    """

    holds: bool
    clause: str | None = None
    location: Any = None
    residual: LaurentPoly | None = None
    detail: str = ""

    def __bool__(self):
        return self.holds

    @classmethod
    def ok(cls) -> Verdict:
        return cls(True)

    def describe(self) -> str:
        if self.holds:
            return "holds"
        text = f"fails: {self.clause}"
        if self.location is not None:
            text += f" at {self.location}"
        if self.detail:
            text += f" ({self.detail})"
        if self.residual is not None:
            text += f"; residual {self.residual}"
        return text


class SchemeMismatch(ValueError):
    """Filters or generators live on different schemes or dimensions."""


class NotLowpass(ValueError):
    """A filter required to be canonical lowpass is not."""


class NonVanishingGenerator(ValueError):
    """A generator does not vanish at z = 1."""


class VerifyFailed(ValueError):
    """An SVP certificate was rejected; ``verdict`` carries the report."""

    def __init__(self, verdict: Verdict):
        super().__init__(verdict.describe())
        self.verdict = verdict


class MuepPreconditionFailed(ValueError):
    """An operation requiring the MUEP identity was given a pair violating it."""


class MuepPostconditionFailed(AssertionError):
    """Internal consistency failure after synthesis; indicates a bug."""


class SosIdentityFailed(ValueError):
    """The supplied sum-of-squares generators do not reproduce the residual."""
