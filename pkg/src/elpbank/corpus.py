"""Built-in filters and certificates: three worked designs plus the Haar baseline.

``example1``  2-D dyadic coset-sum filter with free rational parameter ``a``
``example2``  quincunx filter on [-2, 2] x [-1, 1], quasi-tight certificate
``example3``  1-D Deslauriers-Dubuc order 4, quasi-tight and sum-of-squares
``haar``      1-D orthogonal Haar filter, empty certificate
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import LaurentPoly, RadicalRational
from .filters import Filter, filter_from_z
from .lattice import DilationScheme, validate_dilation
from .svp import BankPair, SvpCertificate, sos_synthesize, synthesize_bank

__all__ = ["CorpusEntry", "builtin", "NAMES", "UnknownExample"]

NAMES = ("example1", "example2", "example3", "haar")

SQRT2 = RadicalRational.sqrt(2)


class UnknownExample(KeyError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    scheme: DilationScheme
    lowpass: Filter
    dual_lowpass: Filter
    certificate: SvpCertificate
    expected: dict
    sos: tuple[LaurentPoly, ...] | None = None
    notes: str = ""
    params: dict = field(default_factory=dict)

    def synthesize(self, check: bool = True) -> BankPair:
        return synthesize_bank(self.lowpass, self.dual_lowpass, self.certificate, check=check)

    def synthesize_tight(self, check: bool = True) -> BankPair:
        if self.sos is None:
            raise ValueError(f"{self.name} carries no sum-of-squares generators")
        return sos_synthesize(self.lowpass, self.sos, check=check)


def _vanishing_pair(m: Sequence[int]) -> LaurentPoly:
    """``(1 - z^m)(1 - z^-m)``."""
    mono = LaurentPoly.monomial(m)
    return (1 - mono) * (1 - mono.conjugate())


def haar() -> CorpusEntry:
    scheme = validate_dilation([[2]])
    c = SQRT2 / 2
    h = Filter(scheme, {(0,): c, (1,): c})
    return CorpusEntry(
        name="haar",
        scheme=scheme,
        lowpass=h,
        dual_lowpass=h,
        certificate=SvpCertificate((), (), note="orthogonal: empty certificate"),
        sos=(),
        expected={"J": 0, "s": 2, "s_tight": 2, "extracted_J": 1},
        notes="orthogonal Haar filter; the residual vanishes identically",
    )


def example3() -> CorpusEntry:
    scheme = validate_dilation([[2]], gamma=[[0], [1]], dual_reps=[[0], [1]])
    taps = {(-3,): -1, (-1,): 9, (0,): 16, (1,): 9, (3,): -1}
    h = Filter(scheme, {m: SQRT2 * v / 32 for m, v in taps.items()})
    (z,) = LaurentPoly.variables(1)
    k1 = (1 - z**2) * Fraction(3, 16)
    k2 = (1 - z) * (RadicalRational.sqrt(14, 3) / 32)
    k3 = (1 - z**3) * (SQRT2 / 32)
    sqrt6 = RadicalRational.sqrt(6)
    p = (
        LaurentPoly.constant(1, (-2 * SQRT2 + sqrt6) / 32)
        + z * ((6 * SQRT2 - sqrt6) / 32)
        + z**2 * ((-6 * SQRT2 - sqrt6) / 32)
        + z**3 * ((2 * SQRT2 + sqrt6) / 32)
    )
    residual = (
        _vanishing_pair((1,)) * Fraction(63, 512)
        - _vanishing_pair((2,)) * Fraction(9, 256)
        + _vanishing_pair((3,)) * Fraction(1, 512)
    )
    return CorpusEntry(
        name="example3",
        scheme=scheme,
        lowpass=h,
        dual_lowpass=h,
        certificate=SvpCertificate.signed([k1, k2, k3], [-1, 1, 1], note="quasi-tight, signs (-,+,+)"),
        sos=(p,),
        expected={
            "J": 3,
            "s": 5,
            "tap_counts": [8, 6, 8],
            "dual_signs": [-1, 1, 1, 1, 1],
            "s_tight": 3,
            "g1_taps": 11,
            "residual": residual,
            "extracted_subsets": 10,
        },
        notes="centered Deslauriers-Dubuc interpolatory filter of order 4",
    )


_EX2_TAPS = [
    [-1, 0, 2, 0, -1],
    [0, 8, 16, 8, 0],
    [-1, 0, 2, 0, -1],
]


def example2() -> CorpusEntry:
    scheme = validate_dilation([[1, 1], [1, -1]], gamma=[[0, 0], [1, 0]], dual_reps=[[0, 0], [1, 0]])
    taps = {}
    for row, m2 in zip(_EX2_TAPS, (-1, 0, 1)):
        for v, m1 in zip(row, range(-2, 3)):
            if v:
                taps[(m1, m2)] = SQRT2 * v / 32
    h = Filter(scheme, taps)

    def gen(coeff, m):
        return (1 - LaurentPoly.monomial(m)) * coeff

    s2 = SQRT2
    gens = [
        gen(s2 * 2 / 16, (2, 1)),
        gen(s2 * 2 / 16, (1, 2)),
        gen(s2 / 16, (2, 0)),
        gen(s2 / 16, (0, 2)),
        gen(s2 / 32, (3, 1)),
        gen(Fraction(2, 32), (2, 2)),
        gen(s2 / 32, (1, 3)),
        gen(RadicalRational.sqrt(7) / 8, (1, 1)),
        gen(s2 / 8, (1, 0)),
        gen(s2 / 8, (0, 1)),
        gen(RadicalRational.sqrt(3) / 16, (1, -1)),
    ]
    signs = [-1] * 4 + [1] * 7
    weighted = [
        (-32, (2, 1)), (-32, (1, 2)), (-8, (2, 0)), (-8, (0, 2)),
        (2, (3, 1)), (4, (2, 2)), (2, (1, 3)), (112, (1, 1)),
        (32, (1, 0)), (32, (0, 1)), (12, (1, -1)),
    ]
    residual = LaurentPoly.zero(2)
    for w, m in weighted:
        residual = residual + _vanishing_pair(m) * Fraction(w, 32**2)
    return CorpusEntry(
        name="example2",
        scheme=scheme,
        lowpass=h,
        dual_lowpass=h,
        certificate=SvpCertificate.signed(gens, signs, note="quasi-tight, signs (-,-,-,-,+,+,+,+,+,+,+)"),
        expected={"J": 11, "s": 13, "dual_signs": signs + [1, 1], "residual": residual},
        notes="quincunx filter, two-dimensional with |det| = 2",
    )


def example1(a) -> CorpusEntry:
    a = Fraction(a)
    scheme = validate_dilation(
        [[2, 0], [0, 2]],
        gamma=[[0, 0], [1, 0], [0, 1], [1, 1]],
        dual_reps=[[0, 0], [1, 0], [0, 1], [1, 1]],
    )
    nonzero = [(1, 0), (0, 1), (1, 1)]
    mono = LaurentPoly.monomial

    H = LaurentPoly.constant(2, Fraction(3, 2) * a - 1)
    for m in nonzero:
        m2 = tuple(2 * v for v in m)
        H = H + (mono(m2) + mono(m2).conjugate()) * ((1 - a) / 4)
        H = H + mono(m) * (1 + mono(m2).conjugate()) / 4
    h = filter_from_z(scheme, H)

    sym = LaurentPoly.zero(2)
    for m in nonzero:
        sym = sym + mono(m) + mono(m).conjugate()
    E = LaurentPoly.constant(2, Fraction(3, 2) * a - Fraction(1, 2)) + sym * ((1 - a) / 4)
    one_minus = [1 - mono(m) for m in nonzero]
    K = [p * E * (1 - a) for p in one_minus] + [p / 4 for p in one_minus]
    L = [p / 4 for p in one_minus] * 2
    return CorpusEntry(
        name="example1",
        scheme=scheme,
        lowpass=h,
        dual_lowpass=h,
        certificate=SvpCertificate(tuple(K), tuple(L), note=f"coset-sum certificate at a = {a}"),
        expected={"J": 6, "s": 10, "lp_rows": 11},
        notes="two-dimensional dyadic coset-sum filter",
        params={"a": a},
    )


def builtin(name: str, a=None) -> CorpusEntry:
    """Look up a built-in entry; ``example1`` needs the rational parameter ``a``."""
    if name == "example1":
        if a is None:
            raise ValueError("example1 requires the rational parameter a")
        return example1(a)
    if name not in NAMES:
        raise UnknownExample(f"unknown corpus entry {name!r}; choose from {', '.join(NAMES)}")
    return {"example2": example2, "example3": example3, "haar": haar}[name]()
