"""One-level analysis and synthesis of finitely supported signals.

Analysis with filter ``f``:   c(m) = sum_k x(k) conj(f(k - lam m))
Synthesis:                    x(k) = sum_i sum_m f_i(k - lam m) c_i(m)

Analyzing with one bank of a MUEP pair and synthesizing with the other
reproduces the input exactly (no boundary handling is needed because
signals are finitely supported and zero-extended).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import RadicalRational
from .filters import Filter
from .svp import BankPair, FilterBank
from .verdict import MuepPreconditionFailed, SchemeMismatch

__all__ = ["Signal", "analyze", "synthesize_signal", "pr_check"]


@dataclass(frozen=True, eq=False)
class Signal:
    """Finitely supported signal on ``Z^dim``; exact or float valued."""

    dim: int
    samples: Mapping[tuple[int, ...], object]
    exact: bool = True

    def __post_init__(self):
        clean = {}
        for k, v in self.samples.items():
            k = tuple(int(t) for t in k)
            if len(k) != self.dim:
                raise ValueError(f"sample index {k} has the wrong dimension")
            v = RadicalRational(v) if self.exact else float(v)
            if v:
                clean[k] = v
        object.__setattr__(self, "samples", dict(sorted(clean.items())))

    @classmethod
    def zeros(cls, dim: int, exact: bool = True) -> Signal:
        return cls(dim, {}, exact)

    def __eq__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        return self.dim == other.dim and self.samples == other.samples

    def __add__(self, other: Signal) -> Signal:
        out = dict(self.samples)
        for k, v in other.samples.items():
            out[k] = out.get(k, 0) + v
        return Signal(self.dim, out, self.exact and other.exact)

    def scale(self, c) -> Signal:
        return Signal(self.dim, {k: v * c for k, v in self.samples.items()}, self.exact)

    def to_numeric(self) -> Signal:
        return Signal(self.dim, {k: float(v) for k, v in self.samples.items()}, exact=False)

    def max_abs_diff(self, other: Signal) -> float:
        keys = set(self.samples) | set(other.samples)
        zero = RadicalRational(0) if self.exact and other.exact else 0.0
        return max((abs(float(self.samples.get(k, zero) - other.samples.get(k, zero))) for k in keys), default=0.0)

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, RadicalRational):
                if v.is_rational():
                    q = v.rational_part()
                    return str(q)
                return v.to_json()
            return v

        return {"dim": self.dim, "samples": [{"k": list(k), "value": enc(v)} for k, v in self.samples.items()]}

    @classmethod
    def from_json(cls, data: dict) -> Signal:
        try:
            dim = int(data["dim"])
            items = data["samples"]
        except (KeyError, TypeError) as exc:
            raise ValueError("signal needs fields 'dim' and 'samples'") from exc
        exact = all(not isinstance(it.get("value"), float) for it in items)
        samples = {}
        for it in items:
            k = tuple(int(t) for t in it["k"])
            v = it["value"]
            if exact:
                v = RadicalRational.from_json(v) if isinstance(v, list) else RadicalRational(Fraction(v))
            if k in samples:
                raise ValueError(f"sample index {list(k)} listed twice")
            samples[k] = v
        return cls(dim, samples, exact)


def _taps(f: Filter, exact: bool):
    return f.taps if exact else {m: float(c) for m, c in f.taps.items()}


def _analyze_one(f: Filter, x: Signal) -> Signal:
    scheme = f.scheme
    taps = _taps(f, x.exact)
    out: dict = {}
    for k, xv in x.samples.items():
        for t, fv in taps.items():
            m = scheme.solve(tuple(a - b for a, b in zip(k, t)))
            if m is not None:
                # conj is the identity on real coefficients
                out[m] = out.get(m, 0) + xv * fv
    return Signal(x.dim, out, x.exact)


def analyze(bank: FilterBank, x: Signal) -> list[Signal]:
    """Coefficient signals, lowpass channel first."""
    if x.dim != bank.scheme.dim:
        raise SchemeMismatch(f"signal dimension {x.dim} does not match bank dimension {bank.scheme.dim}")
    return [_analyze_one(f, x) for f in bank.filters]


def synthesize_signal(bank: FilterBank, coeffs: Sequence[Signal]) -> Signal:
    if len(coeffs) != 1 + bank.s:
        raise ValueError(f"expected {1 + bank.s} coefficient signals, got {len(coeffs)}")
    dim = bank.scheme.dim
    exact = all(c.exact for c in coeffs)
    out: dict = {}
    for f, c in zip(bank.filters, coeffs):
        if c.dim != dim:
            raise SchemeMismatch("coefficient signal has the wrong dimension")
        taps = _taps(f, exact)
        for m, cv in c.samples.items():
            base = bank.scheme.apply(m)
            for t, fv in taps.items():
                k = tuple(a + b for a, b in zip(base, t))
                out[k] = out.get(k, 0) + fv * cv
    return Signal(dim, out, exact)


def pr_check(pair: BankPair, x: Signal) -> float:
    """Worst reconstruction error over both analysis/synthesis role orders.

    Exactly ``0.0`` in exact mode when MUEP holds.
    """
    from .muep import muep_verify_polyphase

    v = muep_verify_polyphase(pair)
    if not v:
        raise MuepPreconditionFailed(f"bank pair does not satisfy MUEP: {v.describe()}")
    err = 0.0
    for ana, syn in ((pair.dual, pair.primal), (pair.primal, pair.dual)):
        y = synthesize_signal(syn, analyze(ana, x))
        if x.exact:
            if y != x:
                err = max(err, y.max_abs_diff(x))
        else:
            err = max(err, y.max_abs_diff(x))
    return err
