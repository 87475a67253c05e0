"""Sum-of-vanishing-products certificates and filter bank synthesis.

A pair of canonical lowpass filters ``h, g`` with polyphase rows ``H, G``
satisfies the SVP condition when

    1 - H(z) G(z)* = sum_j k_j(z) conj(l_j(z)),   k_j(1) = l_j(1) = 0.

Given such generators the primal bank gets highpass filters
``H(z) conj(l_j)(z^lam)`` and ``z^nu_m - H(z) conj(G_nu_m)(z^lam)``; the dual
bank swaps the roles of ``(h, L)`` and ``(g, K)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import LaurentPoly, RadicalRational
from .filters import (
    Filter,
    FilterClass,
    classify_filter,
    filter_from_z,
    filter_to_z,
    polyphase_decompose,
    taps_from_json,
    taps_to_json,
)
from .lattice import DilationScheme, torus_grid
from .verdict import (
    MuepPostconditionFailed,
    NotLowpass,
    SchemeMismatch,
    SosIdentityFailed,
    Verdict,
    VerifyFailed,
)

__all__ = [
    "SvpCertificate",
    "FilterBank",
    "BankPair",
    "SubQmfResult",
    "svp_residual",
    "svp_verify",
    "sub_qmf_check",
    "synthesize_bank",
    "sos_synthesize",
]


@dataclass(frozen=True)
class SvpCertificate:
    """Generator lists ``K`` (dual side) and ``L`` (primal side)."""

    K: tuple[LaurentPoly, ...]
    L: tuple[LaurentPoly, ...]
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "K", tuple(self.K))
        object.__setattr__(self, "L", tuple(self.L))
        if len(self.K) != len(self.L):
            raise ValueError(f"generator lists differ in length: {len(self.K)} vs {len(self.L)}")
        dims = {p.dim for p in self.K + self.L}
        if len(dims) > 1:
            raise SchemeMismatch("generators have mixed dimensions")

    @property
    def J(self) -> int:
        return len(self.K)

    @classmethod
    def tight(cls, P: Sequence[LaurentPoly], note: str = "") -> SvpCertificate:
        return cls(tuple(P), tuple(P), note)

    @classmethod
    def signed(cls, generators: Sequence[LaurentPoly], signs: Sequence[int], note: str = "") -> SvpCertificate:
        """Quasi-tight certificate ``K = [s_j k_j]``, ``L = [k_j]``."""
        if len(signs) != len(generators) or any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be +1/-1, one per generator")
        K = tuple(p if s == 1 else -p for p, s in zip(generators, signs))
        return cls(K, tuple(generators), note)

    def product_sum(self, dim: int) -> LaurentPoly:
        total = LaurentPoly.zero(dim)
        for k, l in zip(self.K, self.L):
            total = total + k * l.conjugate()
        return total

    def pruned(self) -> SvpCertificate:
        """Drop pairs whose product is identically zero."""
        keep = [(k, l) for k, l in zip(self.K, self.L) if k and l]
        return SvpCertificate(tuple(k for k, _ in keep), tuple(l for _, l in keep), self.note)

    def to_json(self) -> dict:
        out = {"K": [p.to_json() for p in self.K], "L": [p.to_json() for p in self.L]}
        if self.K:
            out["dim"] = self.K[0].dim
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data: dict, dim: int | None = None) -> SvpCertificate:
        dim = data.get("dim", dim)
        try:
            K = [LaurentPoly.from_json(p, dim) for p in data["K"]]
            L = [LaurentPoly.from_json(p, dim) for p in data["L"]]
        except KeyError as exc:
            raise ValueError(f"certificate is missing field {exc.args[0]!r}") from exc
        return cls(tuple(K), tuple(L), data.get("note", ""))


@dataclass(frozen=True)
class FilterBank:
    """A lowpass filter followed by an ordered list of highpass filters."""

    scheme: DilationScheme
    lowpass: Filter
    highpass: tuple[Filter, ...]

    def __post_init__(self):
        object.__setattr__(self, "highpass", tuple(self.highpass))
        if any(f.scheme != self.scheme for f in (self.lowpass,) + self.highpass):
            raise SchemeMismatch("bank filters live on different schemes")

    @property
    def s(self) -> int:
        return len(self.highpass)

    @property
    def filters(self) -> tuple[Filter, ...]:
        return (self.lowpass,) + self.highpass

    def tap_counts(self) -> list[int]:
        return [f.nnz() for f in self.highpass]

    def problems(self) -> list[str]:
        """Violations of the lowpass / highpass invariants (empty when valid)."""
        out = []
        if classify_filter(self.lowpass) is not FilterClass.CANONICAL_LOWPASS:
            out.append("lowpass filter is not canonical lowpass")
        for i, f in enumerate(self.highpass, 1):
            if classify_filter(f) is not FilterClass.HIGHPASS:
                out.append(f"highpass filter {i} does not sum to zero")
        return out

    def to_json(self) -> dict:
        return {"lowpass": taps_to_json(self.lowpass.taps), "highpass": [taps_to_json(f.taps) for f in self.highpass]}

    @classmethod
    def from_json(cls, data: dict, scheme: DilationScheme) -> FilterBank:
        try:
            low = Filter(scheme, taps_from_json(data["lowpass"], scheme.dim))
            high = tuple(Filter(scheme, taps_from_json(t, scheme.dim)) for t in data["highpass"])
        except KeyError as exc:
            raise ValueError(f"bank is missing field {exc.args[0]!r}") from exc
        return cls(scheme, low, high)


@dataclass(frozen=True)
class BankPair:
    """Primal and dual filter banks of equal size on one scheme."""

    primal: FilterBank
    dual: FilterBank

    def __post_init__(self):
        if self.primal.scheme != self.dual.scheme:
            raise SchemeMismatch("primal and dual banks live on different schemes")
        if self.primal.s != self.dual.s:
            raise ValueError(f"bank sizes differ: {self.primal.s} vs {self.dual.s}")

    @property
    def scheme(self) -> DilationScheme:
        return self.primal.scheme

    @property
    def s(self) -> int:
        return self.primal.s

    def swapped(self) -> BankPair:
        return BankPair(self.dual, self.primal)

    def is_tight(self) -> bool:
        return self.primal == self.dual

    def sign_pattern(self) -> list[int] | None:
        """Per-highpass ``+1/-1`` when the dual equals the primal up to signs."""
        if self.primal.lowpass != self.dual.lowpass:
            return None
        signs = []
        for a, b in zip(self.primal.highpass, self.dual.highpass):
            if a == b:
                signs.append(1)
            elif a == -b:
                signs.append(-1)
            else:
                return None
        return signs

    def to_json(self) -> dict:
        return {"scheme": self.scheme.to_json(), "primal": self.primal.to_json(), "dual": self.dual.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> BankPair:
        if "scheme" not in data:
            raise ValueError("bank pair is missing field 'scheme'")
        scheme = DilationScheme.from_json(data["scheme"])
        try:
            return cls(FilterBank.from_json(data["primal"], scheme), FilterBank.from_json(data["dual"], scheme))
        except KeyError as exc:
            raise ValueError(f"bank pair is missing field {exc.args[0]!r}") from exc


def _require_lowpass(f: Filter, name: str) -> None:
    cls = classify_filter(f)
    if cls is not FilterClass.CANONICAL_LOWPASS:
        raise NotLowpass(f"{name} is {cls.value}, expected CanonicalLowpass")


def _residual(h: Filter, g: Filter) -> LaurentPoly:
    hrow = polyphase_decompose(h).components
    grow = polyphase_decompose(g).components
    total = LaurentPoly.constant(h.dim, 1)
    for a, b in zip(hrow, grow):
        total = total - a * b.conjugate()
    return total


def svp_residual(h: Filter, g: Filter) -> LaurentPoly:
    """Exact ``1 - H(z) G(z)*``."""
    if h.scheme != g.scheme:
        raise SchemeMismatch("filters are defined on different dilation schemes")
    _require_lowpass(h, "h")
    _require_lowpass(g, "g")
    res = _residual(h, g)
    assert not res.eval_one(), "residual of canonical lowpass filters must vanish at z = 1"
    return res


def svp_verify(h: Filter, g: Filter, cert: SvpCertificate) -> Verdict:
    """Check the vanishing clause and the product identity exactly."""
    if h.scheme != g.scheme:
        return Verdict(False, "scheme", detail="h and g are on different schemes")
    for name, f in (("h", h), ("g", g)):
        cls = classify_filter(f)
        if cls is not FilterClass.CANONICAL_LOWPASS:
            return Verdict(False, "lowpass", name, detail=f"{name} is {cls.value}")
    dim = h.dim
    for side, gens in (("K", cert.K), ("L", cert.L)):
        for j, p in enumerate(gens, 1):
            if p.dim != dim:
                return Verdict(False, "dimension", f"{side}[{j}]")
            v = p.eval_one()
            if v:
                return Verdict(False, "generator does not vanish at z = 1", f"{side}[{j}]", detail=f"value {v}")
    diff = _residual(h, g) - cert.product_sum(dim)
    if diff:
        return Verdict(False, "residual differs from sum of generator products", residual=diff)
    return Verdict.ok()


@dataclass(frozen=True)
class SubQmfResult:
    passes: bool
    min_value: float
    argmin: tuple[float, ...] = field(default=())


def sub_qmf_check(h: Filter, grid: int = 64, tol: float = 1e-10) -> SubQmfResult:
    """Numeric minimum of ``1 - H H*`` over a uniform torus grid."""
    res = svp_residual(h, h)
    omegas = torus_grid(h.dim, grid)
    vals = res.eval_torus_grid(omegas).real
    i = int(np.argmin(vals))
    return SubQmfResult(bool(vals[i] >= -tol), float(vals[i]), tuple(float(v) for v in omegas[i]))


def _highpass_family(
    lowpass: Filter, gens: Sequence[LaurentPoly], other_row: Sequence[LaurentPoly]
) -> list[Filter]:
    scheme = lowpass.scheme
    lam = scheme.lam
    F = filter_to_z(lowpass)
    out = []
    for p in gens:
        out.append(filter_from_z(scheme, F * p.conjugate().substitute(lam)))
    for nu, comp in zip(scheme.gamma, other_row):
        poly = LaurentPoly.monomial(nu) - F * comp.conjugate().substitute(lam)
        out.append(filter_from_z(scheme, poly))
    return out


def synthesize_bank(h: Filter, g: Filter, cert: SvpCertificate, check: bool = True) -> BankPair:
    """Build the primal bank from ``(h, L)`` and the dual bank from ``(g, K)``.

    Each side gets ``J + q`` highpass filters.  With ``check`` on, every
    filter is classified and the exact MUEP identity is asserted before
    returning.
    """
    verdict = svp_verify(h, g, cert)
    if not verdict:
        raise VerifyFailed(verdict)
    hrow = polyphase_decompose(h).components
    grow = polyphase_decompose(g).components
    primal = FilterBank(h.scheme, h, tuple(_highpass_family(h, cert.L, grow)))
    dual = FilterBank(g.scheme, g, tuple(_highpass_family(g, cert.K, hrow)))
    pair = BankPair(primal, dual)
    if check:
        for side, bank in (("primal", primal), ("dual", dual)):
            bad = bank.problems()
            if bad:
                raise MuepPostconditionFailed(f"{side} bank: {bad[0]}")
        from .muep import muep_verify_polyphase

        v = muep_verify_polyphase(pair)
        if not v:
            raise MuepPostconditionFailed(f"synthesized pair violates MUEP: {v.describe()}")
    return pair


def sos_synthesize(h: Filter, P: Sequence[LaurentPoly], check: bool = True) -> BankPair:
    """Tight bank from sum-of-squares generators ``1 - H H* = sum |p_j|^2``."""
    res = svp_residual(h, h)
    cert = SvpCertificate.tight(P, note="sum of squares")
    if res != cert.product_sum(h.dim):
        raise SosIdentityFailed("1 - H H* is not the sum of |p_j|^2 for the given generators")
    # the identity at z = 1 forces sum p_j(1)^2 = 0, hence every p_j(1) = 0
    assert all(not p.eval_one() for p in P)
    return synthesize_bank(h, h, cert, check=check)
