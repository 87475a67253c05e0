"""Dilation matrices, coset representatives and the Fourier transform matrix."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "DilationScheme",
    "NotExpanding",
    "validate_dilation",
    "coset_reps",
    "dual_coset_reps",
    "fourier_matrix",
    "torus_grid",
]

Vector = tuple[int, ...]
EIG_TOL = 1e-9


class NotExpanding(ValueError):
    """The matrix is singular or has an eigenvalue of modulus at most one."""


def _as_int_matrix(lam) -> tuple[tuple[int, ...], ...]:
    arr = np.asarray(lam, dtype=object)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"dilation matrix must be square, got shape {arr.shape}")
    out = []
    for row in arr:
        r = []
        for v in row:
            if isinstance(v, float) and not v.is_integer():
                raise ValueError(f"dilation matrix entry {v} is not an integer")
            r.append(int(v))
        out.append(tuple(r))
    return tuple(out)


def _exact_inverse(m: Sequence[Sequence[int]]) -> tuple[Fraction, list[list[Fraction]]]:
    """Determinant and inverse by Gauss-Jordan over the rationals."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0), []
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det, [row[n:] for row in a]


def _matvec(m, v):
    return tuple(sum(mi * vi for mi, vi in zip(row, v)) for row in m)


def _transpose(m):
    return tuple(zip(*m))


def _check_expanding(lam) -> int:
    det, _ = _exact_inverse(lam)
    if det == 0:
        raise NotExpanding("dilation matrix is singular")
    eig = np.linalg.eigvals(np.array(lam, dtype=float))
    if np.min(np.abs(eig)) <= 1 + EIG_TOL:
        raise NotExpanding(f"eigenvalue moduli {np.round(np.abs(eig), 6).tolist()} are not all > 1")
    q = abs(int(det))
    if q < 2:
        raise NotExpanding("|det| must be at least 2")
    return q


def _fundamental_domain(lam) -> list[Vector]:
    """Integer points ``m`` with ``inv(lam) @ m`` in ``[0, 1)^n``, zero first."""
    n = len(lam)
    _, inv = _exact_inverse(lam)
    corners = [_matvec(lam, v) for v in itertools.product((0, 1), repeat=n)]
    lo = [min(c[i] for c in corners) for i in range(n)]
    hi = [max(c[i] for c in corners) for i in range(n)]
    found = []
    for m in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        x = _matvec(inv, m)
        if all(0 <= t < 1 for t in x):
            found.append(tuple(m))
    found.sort()
    zero = (0,) * n
    found.remove(zero)
    return [zero] + found


def coset_reps(lam) -> list[Vector]:
    """Coset representatives of ``Z^n / lam Z^n`` (lexicographic, zero first)."""
    lam = _as_int_matrix(lam)
    q = _check_expanding(lam)
    reps = _fundamental_domain(lam)
    assert len(reps) == q
    return reps


def dual_coset_reps(lam) -> list[Vector]:
    """Integer representatives ``d`` of ``Z^n / lam^T Z^n``.

    The corresponding frequencies are ``2*pi*inv(lam^T) @ d``.
    """
    lam = _as_int_matrix(lam)
    q = _check_expanding(lam)
    reps = _fundamental_domain(_transpose(lam))
    assert len(reps) == q
    return reps


@dataclass(frozen=True)
class DilationScheme:
    """A validated dilation matrix together with ordered coset sets.

    ``gamma[0]`` and ``dual_reps[0]`` are always the zero vector.  The order
    of ``gamma`` fixes the order of polyphase components everywhere else.
    """

    lam: tuple[tuple[int, ...], ...]
    q: int
    gamma: tuple[Vector, ...]
    dual_reps: tuple[Vector, ...]
    _inv: tuple = field(init=False, repr=False, compare=False)
    _inv_t: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _, inv = _exact_inverse(self.lam)
        _, inv_t = _exact_inverse(_transpose(self.lam))
        object.__setattr__(self, "_inv", tuple(tuple(r) for r in inv))
        object.__setattr__(self, "_inv_t", tuple(tuple(r) for r in inv_t))

    @property
    def dim(self) -> int:
        return len(self.lam)

    @property
    def lam_array(self) -> np.ndarray:
        return np.array(self.lam, dtype=np.int64)

    def apply(self, m: Sequence[int]) -> Vector:
        return _matvec(self.lam, m)

    def solve(self, v: Sequence[int]) -> Vector | None:
        """The integer ``m`` with ``lam @ m == v``, or ``None``."""
        x = _matvec(self._inv, v)
        if all(t.denominator == 1 for t in x):
            return tuple(int(t) for t in x)
        return None

    def split(self, k: Sequence[int]) -> tuple[int, Vector]:
        """Write ``k = lam @ m - gamma[i]``; returns ``(i, m)``."""
        for i, nu in enumerate(self.gamma):
            m = self.solve(tuple(a + b for a, b in zip(k, nu)))
            if m is not None:
                return i, m
        raise AssertionError(f"{k} lies in no coset; the scheme is inconsistent")

    def dual_frequencies(self) -> np.ndarray:
        """``(q, n)`` float array of the frequencies ``2*pi*inv(lam^T) @ d``."""
        inv_t = np.array([[float(v) for v in row] for row in self._inv_t])
        return 2 * np.pi * np.array(self.dual_reps, dtype=float) @ inv_t.T

    def orthogonality_error(self) -> float:
        """Max deviation of ``sum_k exp(i gamma_k . (nu - nu'))`` from ``q delta``."""
        g = self.dual_frequencies()
        nu = np.array(self.gamma, dtype=float)
        diff = nu[:, None, :] - nu[None, :, :]
        s = np.exp(1j * np.einsum("kd,abd->abk", g, diff)).sum(axis=-1)
        return float(np.max(np.abs(s - self.q * np.eye(self.q))))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "lambda": [list(r) for r in self.lam],
            "gamma": [list(v) for v in self.gamma],
            "dual_reps": [list(v) for v in self.dual_reps],
        }

    @classmethod
    def from_json(cls, data: dict) -> DilationScheme:
        try:
            lam = data["lambda"]
        except (KeyError, TypeError) as exc:
            raise ValueError("scheme is missing field 'lambda'") from exc
        scheme = validate_dilation(lam, gamma=data.get("gamma"), dual_reps=data.get("dual_reps"))
        if "dim" in data and int(data["dim"]) != scheme.dim:
            raise ValueError("scheme field 'dim' disagrees with 'lambda'")
        return scheme


def _check_reps(reps, q: int, inv, label: str) -> tuple[Vector, ...]:
    reps = tuple(tuple(int(v) for v in r) for r in reps)
    n = len(inv)
    if len(reps) != q:
        raise ValueError(f"{label} has {len(reps)} elements, expected {q}")
    if any(len(r) != n for r in reps):
        raise ValueError(f"{label} vectors must have length {n}")
    if reps[0] != (0,) * n:
        raise ValueError(f"{label} must start with the zero vector")
    for a, b in itertools.combinations(reps, 2):
        d = tuple(x - y for x, y in zip(a, b))
        if all(t.denominator == 1 for t in _matvec(inv, d)):
            raise ValueError(f"{label} elements {list(a)} and {list(b)} lie in the same coset")
    return reps


def validate_dilation(lam, gamma=None, dual_reps=None) -> DilationScheme:
    """Validate an expanding integer matrix and build its scheme.

    Explicit ``gamma`` / ``dual_reps`` orderings may be supplied; they are
    checked to be complete sets of distinct coset representatives starting
    with zero.  Otherwise the canonical (lexicographic) sets are used.
    """
    lam = _as_int_matrix(lam)
    q = _check_expanding(lam)
    _, inv = _exact_inverse(lam)
    _, inv_t = _exact_inverse(_transpose(lam))
    gamma = _fundamental_domain(lam) if gamma is None else gamma
    dual_reps = _fundamental_domain(_transpose(lam)) if dual_reps is None else dual_reps
    return DilationScheme(
        lam=lam,
        q=q,
        gamma=_check_reps(gamma, q, inv, "gamma"),
        dual_reps=_check_reps(dual_reps, q, inv_t, "dual_reps"),
    )


def fourier_matrix(scheme: DilationScheme, omega) -> np.ndarray:
    """``q^{-1/2} [exp(i (omega + gamma) . nu)]`` with rows ``nu``, columns ``gamma``."""
    omega = np.asarray(omega, dtype=float).reshape(-1)
    if omega.shape[0] != scheme.dim:
        raise ValueError("frequency vector has the wrong length")
    g = scheme.dual_frequencies() + omega
    nu = np.array(scheme.gamma, dtype=float)
    return np.exp(1j * nu @ g.T) / np.sqrt(scheme.q)


def torus_grid(dim: int, n: int) -> np.ndarray:
    """Uniform ``(n**dim, dim)`` grid of frequencies on ``[-pi, pi)^dim``."""
    axis = -np.pi + 2 * np.pi * np.arange(n) / n
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)
