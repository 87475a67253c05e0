"""Exact coefficient ring and sparse multivariate Laurent polynomials.

The coefficient ring is the rational span of square roots of squarefree
integers: every value is ``sum(q_n * sqrt(n))``.  It is closed under
addition and multiplication and comfortably holds every constant that
shows up in the filter banks we build (sqrt(2)/32, sqrt(7)/8, ...).

Laurent polynomials are sparse maps from integer exponent vectors to ring
elements.  Both types are immutable; arithmetic always returns new objects.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "RadicalRational",
    "LaurentPoly",
    "squarefree_part",
    "rr_mul",
    "rr_to_float",
    "lp_mul",
    "lp_conjugate",
    "lp_substitute_dilation",
    "lp_eval_one",
    "lp_eval_unit_circle",
]


@lru_cache(maxsize=4096)
def squarefree_part(n: int) -> tuple[int, int]:
    """Split a positive integer as ``n = g**2 * s`` with ``s`` squarefree.

    Returns ``(g, s)``.  Trial division; the radicands we meet are tiny.
    """
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    g, s = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            g *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    s *= m
    return g, s


def is_squarefree(n: int) -> bool:
    return n > 0 and squarefree_part(n)[1] == n


@lru_cache(maxsize=4096)
def _radical_product(a: int, b: int) -> tuple[int, int]:
    # sqrt(a) * sqrt(b) = g * sqrt(s), a and b squarefree
    if a == 1:
        return 1, b
    if b == 1:
        return 1, a
    d = math.gcd(a, b)
    return d, (a // d) * (b // d)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _mul_terms(a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for ra, qa in a.items():
        for rb, qb in b.items():
            g, s = _radical_product(ra, rb)
            v = qa * qb
            if g != 1:
                v *= g
            out[s] = out.get(s, 0) + v
    return {k: v for k, v in out.items() if v}


class RadicalRational:
    """Exact real number ``sum(q_n * sqrt(n))`` over squarefree ``n``.

    The representation is canonical (square roots of distinct squarefree
    integers are linearly independent over the rationals), so equality and
    hashing are structural.

    >>> RadicalRational.sqrt(2) * RadicalRational.sqrt(6)
    RadicalRational('2*√3')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, value=0):
        if isinstance(value, RadicalRational):
            terms = value._terms
        elif isinstance(value, Mapping):
            terms = self._normalize(value)
        else:
            q = _as_fraction(value)
            terms = {1: q} if q else {}
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)

    @staticmethod
    def _normalize(raw: Mapping[int, object]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for n, q in raw.items():
            n = int(n)
            g, s = squarefree_part(n)
            v = _as_fraction(q) * g
            out[s] = out.get(s, 0) + v
        return {k: v for k, v in sorted(out.items()) if v}

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> RadicalRational:
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def sqrt(cls, n: int, coeff=1) -> RadicalRational:
        """``coeff * sqrt(n)`` for any non-negative integer ``n``."""
        if n == 0:
            return cls(0)
        return cls({n: coeff})

    def __setattr__(self, name, value):
        raise AttributeError("RadicalRational is immutable")

    def __reduce__(self):
        return (RadicalRational, (dict(self._terms),))

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 1 in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def normalize(self) -> RadicalRational:
        return RadicalRational(self._normalize(self._terms))

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return RadicalRational._raw({k: v for k, v in sorted(out.items()) if v})

    __radd__ = __add__

    def __neg__(self):
        return RadicalRational._raw({k: -v for k, v in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return RadicalRational._raw(dict(sorted(_mul_terms(self._terms, other._terms).items())))

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division only by nonzero rationals; the general field inverse is not needed
        if isinstance(other, RadicalRational):
            if not other.is_rational():
                raise TypeError("division by an irrational RadicalRational is not supported")
            other = other.rational_part()
        q = _as_fraction(other)
        if not q:
            raise ZeroDivisionError("division by zero")
        return RadicalRational._raw({k: v / q for k, v in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = RadicalRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(self.rational_part())
            else:
                h = hash(tuple(sorted(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        return rr_to_float(self)

    def __abs__(self):
        return -self if float(self) < 0 else self

    def __repr__(self):
        return f"RadicalRational({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for n, q in sorted(self._terms.items()):
            mag = abs(q)
            if n == 1:
                body = str(mag)
            elif mag == 1:
                body = f"√{n}"
            elif mag.denominator == 1:
                body = f"{mag.numerator}*√{n}"
            elif mag.numerator == 1:
                body = f"√{n}/{mag.denominator}"
            else:
                body = f"{mag.numerator}*√{n}/{mag.denominator}"
            parts.append(("-" if q < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    # serialization --------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [{"num": q.numerator, "den": q.denominator, "rad": n} for n, q in self.items()]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> RadicalRational:
        """Parse a list of ``{num, den, rad}`` triples.

        Radicands must already be squarefree and coefficients nonzero; a
        bare integer or ``"p/q"`` string is accepted as a rational.
        """
        if isinstance(data, (int, str)):
            return cls(_as_fraction(data))
        terms: dict[int, Fraction] = {}
        for item in data:
            try:
                num, den, rad = int(item["num"]), int(item.get("den", 1)), int(item.get("rad", 1))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"malformed radical-rational term {item!r}") from exc
            if den == 0:
                raise ValueError("zero denominator in radical-rational term")
            if not is_squarefree(rad):
                raise ValueError(f"radicand {rad} is not squarefree")
            if num == 0:
                raise ValueError("zero coefficient listed in radical-rational term")
            if rad in terms:
                raise ValueError(f"radicand {rad} listed twice")
            terms[rad] = Fraction(num, den)
        return cls._raw(dict(sorted(terms.items())))


def _coerce(x):
    if isinstance(x, RadicalRational):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return RadicalRational(x)
    return NotImplemented


def rr_mul(a: RadicalRational, b: RadicalRational) -> RadicalRational:
    return a * b


def rr_to_float(a: RadicalRational) -> float:
    return math.fsum(float(q) * math.sqrt(n) for n, q in a._terms.items())


ONE = RadicalRational(1)
ZERO = RadicalRational(0)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

Exponent = tuple[int, ...]


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    """Sparse ``dim``-variate Laurent polynomial with radical-rational coefficients.

    ``terms`` maps an exponent vector ``e`` to the coefficient of ``z**e``.
    Zero coefficients are never stored.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Sequence[int], object] | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        clean: dict[Exponent, RadicalRational] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != dim:
                raise ValueError(f"exponent {e} does not have length {dim}")
            c = RadicalRational(c)
            prev = clean.get(e)
            clean[e] = c if prev is None else prev + c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_terms", {e: c for e, c in sorted(clean.items()) if c})
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, dim: int, terms: dict[Exponent, RadicalRational]) -> LaurentPoly:
        obj = cls.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls, dim: int) -> LaurentPoly:
        return cls._raw(dim, {})

    @classmethod
    def constant(cls, dim: int, c=1) -> LaurentPoly:
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1) -> LaurentPoly:
        exponent = tuple(exponent)
        return cls(len(exponent), {exponent: c})

    @classmethod
    def variables(cls, dim: int) -> list[LaurentPoly]:
        """The coordinate monomials ``z_1, ..., z_dim``."""
        return [cls.monomial(tuple(int(i == j) for j in range(dim))) for i in range(dim)]

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    def __reduce__(self):
        return (LaurentPoly, (self.dim, dict(self._terms)))

    @property
    def terms(self) -> dict[Exponent, RadicalRational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.dim in self._terms)

    def coeff(self, exponent: Sequence[int]) -> RadicalRational:
        return self._terms.get(tuple(exponent), ZERO)

    # arithmetic ---------------------------------------------------------

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (RadicalRational, int, Fraction, Rational)):
            return LaurentPoly.constant(self.dim, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            prev = out.get(e)
            out[e] = c if prev is None else prev + c
        return LaurentPoly._raw(self.dim, {e: c for e, c in sorted(out.items()) if c})

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (RadicalRational, int, Fraction, Rational)):
            c = RadicalRational(other)
            if not c:
                return LaurentPoly.zero(self.dim)
            return LaurentPoly._raw(self.dim, {e: v * c for e, v in self._terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        # accumulate straight into rational coefficient maps to avoid
        # allocating intermediate RadicalRational objects
        acc: dict[Exponent, dict[int, Fraction]] = {}
        for e1, c1 in self._terms.items():
            t1 = c1._terms
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                slot = acc.get(e)
                if slot is None:
                    slot = acc[e] = {}
                for ra, qa in t1.items():
                    for rb, qb in c2._terms.items():
                        g, s = _radical_product(ra, rb)
                        v = qa * qb
                        if g != 1:
                            v *= g
                        slot[s] = slot.get(s, 0) + v
        out = {}
        for e in sorted(acc):
            t = {k: v for k, v in sorted(acc[e].items()) if v}
            if t:
                out[e] = RadicalRational._raw(t)
        return LaurentPoly._raw(self.dim, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return LaurentPoly._raw(self.dim, {e: c / other for e, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer exponent required")
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers only exist for monomials with unit coefficient")
            (e, c), = self._terms.items()
            if c != 1 and c != -1:
                raise ValueError("negative powers only exist for monomials with unit coefficient")
            return LaurentPoly._raw(self.dim, {tuple(k * v for v in e): c ** (-k)})
        out = LaurentPoly.constant(self.dim, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> LaurentPoly:
        """``p(z)* = p(1/z)`` on the torus, as all coefficients are real."""
        out = {tuple(-v for v in e): c for e, c in self._terms.items()}
        return LaurentPoly._raw(self.dim, dict(sorted(out.items())))

    def substitute(self, lam) -> LaurentPoly:
        """``p(z**lam)``: the monomial ``z**e`` becomes ``z**(lam @ e)``."""
        lam = np.asarray(lam, dtype=object)
        if lam.shape != (self.dim, self.dim):
            raise ValueError(f"dilation matrix shape {lam.shape} does not match dim {self.dim}")
        rows = [[int(v) for v in row] for row in lam]
        out = {}
        for e, c in self._terms.items():
            out[tuple(sum(r[j] * e[j] for j in range(self.dim)) for r in rows)] = c
        if len(out) != len(self._terms):
            raise ValueError("singular substitution collapsed distinct monomials")
        return LaurentPoly._raw(self.dim, dict(sorted(out.items())))

    def shift(self, exponent: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial ``z**exponent``."""
        exponent = tuple(exponent)
        return LaurentPoly._raw(self.dim, {_add_exp(e, exponent): c for e, c in self._terms.items()})

    def eval_one(self) -> RadicalRational:
        total: dict[int, Fraction] = {}
        for c in self._terms.values():
            for n, q in c._terms.items():
                total[n] = total.get(n, 0) + q
        return RadicalRational._raw({k: v for k, v in sorted(total.items()) if v})

    def eval_unit_circle(self, omega) -> complex:
        omega = np.asarray(omega, dtype=float).reshape(-1)
        if omega.shape[0] != self.dim:
            raise ValueError("frequency vector has the wrong length")
        return complex(sum(float(c) * cmath.exp(1j * float(np.dot(omega, e))) for e, c in self._terms.items()))

    def eval_torus_grid(self, omegas) -> np.ndarray:
        """Vectorized ``p(e^{i omega})`` for an ``(N, dim)`` array of frequencies."""
        omegas = np.atleast_2d(np.asarray(omegas, dtype=float))
        if not self._terms:
            return np.zeros(omegas.shape[0], dtype=complex)
        exps = np.array(list(self._terms), dtype=float)
        coeffs = np.array([float(c) for c in self._terms.values()])
        return np.exp(1j * omegas @ exps.T) @ coeffs

    def to_float_dict(self) -> dict[Exponent, float]:
        return {e: float(c) for e, c in self._terms.items()}

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (RadicalRational, int, Fraction)):
            return self._terms == LaurentPoly.constant(self.dim, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.dim, tuple(self._terms.items()))))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.dim}, {str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = ["z"] if self.dim == 1 else [f"z{i + 1}" for i in range(self.dim)]
        chunks = []
        for e, c in self._terms.items():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            coeff = str(c)
            if len(c._terms) > 1:
                coeff = f"({coeff})"
            if not mono:
                chunks.append(coeff)
            elif c == 1:
                chunks.append(mono)
            elif c == -1:
                chunks.append(f"-{mono}")
            else:
                chunks.append(f"{coeff}*{mono}")
        return " + ".join(chunks).replace("+ -", "- ")

    # serialization --------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "coeff": c.to_json()} for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], dim: int | None = None) -> LaurentPoly:
        terms: dict[Exponent, RadicalRational] = {}
        for item in data:
            try:
                e = tuple(int(v) for v in item["exp"])
                c = RadicalRational.from_json(item["coeff"])
            except (KeyError, TypeError) as exc:
                raise ValueError(f"malformed polynomial term {item!r}") from exc
            if dim is None:
                dim = len(e)
            if len(e) != dim:
                raise ValueError(f"exponent {list(e)} does not have length {dim}")
            if not c:
                raise ValueError(f"zero coefficient listed at exponent {list(e)}")
            if e in terms:
                raise ValueError(f"exponent {list(e)} listed twice")
            terms[e] = c
        if dim is None:
            raise ValueError("cannot infer the dimension of an empty polynomial")
        return cls._raw(dim, dict(sorted(terms.items())))


def lp_mul(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    if p.dim != r.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {r.dim}")
    return p * r


def lp_conjugate(p: LaurentPoly) -> LaurentPoly:
    return p.conjugate()


def lp_substitute_dilation(p: LaurentPoly, lam) -> LaurentPoly:
    return p.substitute(lam)


def lp_eval_one(p: LaurentPoly) -> RadicalRational:
    return p.eval_one()


def lp_eval_unit_circle(p: LaurentPoly, omega) -> complex:
    return p.eval_unit_circle(omega)
