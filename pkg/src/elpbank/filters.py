"""Finitely supported filters, z-transforms and polyphase decomposition.

Sign convention: the z-transform is ``F(z) = sum_m f(m) z^{-m}``, so a tap
at ``m`` is the monomial with exponent ``-m``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .algebra import LaurentPoly, RadicalRational
from .lattice import DilationScheme

__all__ = [
    "Filter",
    "FilterClass",
    "PolyphaseVector",
    "filter_to_z",
    "filter_from_z",
    "polyphase_decompose",
    "polyphase_reconstruct",
    "classify_filter",
]


class FilterClass(enum.Enum):
    CANONICAL_LOWPASS = "CanonicalLowpass"
    LOWPASS = "Lowpass"
    HIGHPASS = "Highpass"
    NEITHER = "Neither"

    @property
    def is_lowpass(self) -> bool:
        return self in (FilterClass.LOWPASS, FilterClass.CANONICAL_LOWPASS)


@dataclass(frozen=True, eq=False)
class Filter:
    """A finitely supported filter ``f: Z^n -> R`` on a dilation scheme."""

    scheme: DilationScheme
    taps: Mapping[tuple[int, ...], RadicalRational]

    def __post_init__(self):
        clean = {}
        for m, c in self.taps.items():
            m = tuple(int(v) for v in m)
            if len(m) != self.scheme.dim:
                raise ValueError(f"tap position {m} has the wrong dimension")
            c = RadicalRational(c)
            if c:
                clean[m] = c
        object.__setattr__(self, "taps", dict(sorted(clean.items())))

    @property
    def dim(self) -> int:
        return self.scheme.dim

    def __len__(self):
        return len(self.taps)

    def nnz(self) -> int:
        """Number of nonzero taps."""
        return len(self.taps)

    def __eq__(self, other):
        if not isinstance(other, Filter):
            return NotImplemented
        return self.scheme == other.scheme and self.taps == other.taps

    def __hash__(self):
        return hash((self.scheme, tuple(self.taps.items())))

    def __neg__(self):
        return Filter(self.scheme, {m: -c for m, c in self.taps.items()})

    def tap_sum(self) -> RadicalRational:
        return sum(self.taps.values(), RadicalRational(0))

    def mask(self, omegas) -> np.ndarray:
        """Numeric mask ``q^{-1/2} sum_m f(m) exp(-i omega . m)`` at each row of ``omegas``."""
        omegas = np.atleast_2d(np.asarray(omegas, dtype=float))
        if not self.taps:
            return np.zeros(omegas.shape[0], dtype=complex)
        pos = np.array(list(self.taps), dtype=float)
        coeffs = np.array([float(c) for c in self.taps.values()])
        return np.exp(-1j * omegas @ pos.T) @ coeffs / np.sqrt(self.scheme.q)

    def to_json(self) -> dict:
        return {"scheme": self.scheme.to_json(), "taps": taps_to_json(self.taps)}

    @classmethod
    def from_json(cls, data: dict, scheme: DilationScheme | None = None) -> Filter:
        if scheme is None:
            if "scheme" not in data:
                raise ValueError("filter is missing field 'scheme'")
            scheme = DilationScheme.from_json(data["scheme"])
        if "taps" not in data:
            raise ValueError("filter is missing field 'taps'")
        return cls(scheme, taps_from_json(data["taps"], scheme.dim))


def taps_to_json(taps: Mapping[tuple[int, ...], RadicalRational]) -> list[dict]:
    return [{"m": list(m), "coeff": c.to_json()} for m, c in taps.items()]


def taps_from_json(items: Sequence[dict], dim: int) -> dict:
    taps = {}
    for item in items:
        try:
            m = tuple(int(v) for v in item["m"])
            c = RadicalRational.from_json(item["coeff"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed tap {item!r}") from exc
        if len(m) != dim:
            raise ValueError(f"tap position {list(m)} has the wrong dimension")
        if not c:
            raise ValueError(f"zero tap listed at {list(m)}")
        if m in taps:
            raise ValueError(f"tap position {list(m)} listed twice")
        taps[m] = c
    return taps


@dataclass(frozen=True)
class PolyphaseVector:
    """Row vector ``[F_{nu_0}, ..., F_{nu_{q-1}}]`` in scheme order."""

    scheme: DilationScheme
    components: tuple[LaurentPoly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != self.scheme.q:
            raise ValueError(f"expected {self.scheme.q} polyphase components, got {len(comps)}")
        if any(c.dim != self.scheme.dim for c in comps):
            raise ValueError("polyphase component dimension does not match the scheme")
        object.__setattr__(self, "components", comps)

    def __getitem__(self, i) -> LaurentPoly:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def scaled(self, p: LaurentPoly) -> PolyphaseVector:
        return PolyphaseVector(self.scheme, tuple(p * c for c in self.components))

    def eval_one(self) -> list[RadicalRational]:
        return [c.eval_one() for c in self.components]


def filter_to_z(f: Filter) -> LaurentPoly:
    return LaurentPoly(f.dim, {tuple(-v for v in m): c for m, c in f.taps.items()})


def filter_from_z(scheme: DilationScheme, p: LaurentPoly) -> Filter:
    """Inverse of :func:`filter_to_z`."""
    if p.dim != scheme.dim:
        raise ValueError("polynomial dimension does not match the scheme")
    return Filter(scheme, {tuple(-v for v in e): c for e, c in p.items()})


def polyphase_decompose(f: Filter) -> PolyphaseVector:
    """Sub-filters ``f_nu(m) = f(lam m - nu)`` as z-transforms."""
    scheme = f.scheme
    parts: list[dict] = [{} for _ in range(scheme.q)]
    for k, c in f.taps.items():
        i, m = scheme.split(k)
        parts[i][tuple(-v for v in m)] = c
    return PolyphaseVector(scheme, tuple(LaurentPoly(scheme.dim, t) for t in parts))


def polyphase_reconstruct(pv: PolyphaseVector) -> Filter:
    """Reassemble ``F(z) = sum_nu z^nu F_nu(z^lam)`` and read off the taps."""
    scheme = pv.scheme
    taps = {}
    for nu, comp in zip(scheme.gamma, pv.components):
        for e, c in comp.items():
            # coefficient of z^e in F_nu is f_nu(-e) = f(-lam e - nu)
            k = tuple(-a - b for a, b in zip(scheme.apply(e), nu))
            assert k not in taps, f"polyphase components collide at {k}"
            taps[k] = c
    return Filter(scheme, taps)


def classify_filter(f: Filter) -> FilterClass:
    """Exact lowpass / highpass classification.

    Canonical lowpass means every polyphase component sums to ``1/sqrt(q)``,
    which is equivalent to the mask vanishing at every nonzero dual frequency.
    """
    q = f.scheme.q
    total = f.tap_sum()
    if not total:
        return FilterClass.HIGHPASS
    sqrt_q = RadicalRational.sqrt(q)
    if total != sqrt_q:
        return FilterClass.NEITHER
    target = sqrt_q / q
    if all(v == target for v in polyphase_decompose(f).eval_one()):
        return FilterClass.CANONICAL_LOWPASS
    return FilterClass.LOWPASS
