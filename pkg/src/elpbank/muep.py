"""Mixed unitary extension principle: verification and SVP extraction.

The exact check works on stacked polyphase rows.  With primal rows
``P = [H; H_1; ...; H_s]`` and dual rows ``D = [G; H^d_1; ...; H^d_s]`` the
identity is ``D* P = I_q``.  The grid check evaluates the masks directly and
shares no code with the polyphase route.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebra import LaurentPoly
from .filters import polyphase_decompose
from .lattice import DilationScheme, torus_grid
from .pyramid import PolyMatrix, maximal_minors
from .svp import BankPair, FilterBank, SvpCertificate, svp_verify
from .verdict import MuepPostconditionFailed, MuepPreconditionFailed, Verdict

__all__ = [
    "StackedPolyphase",
    "stack_polyphase",
    "muep_verify_polyphase",
    "muep_verify_grid",
    "extract_svp",
]


@dataclass(frozen=True)
class StackedPolyphase:
    """Polyphase rows of a bank, lowpass first."""

    scheme: DilationScheme
    matrix: PolyMatrix

    @property
    def highpass(self) -> PolyMatrix:
        return self.matrix.rows(range(1, self.matrix.shape[0]))


def stack_polyphase(bank: FilterBank) -> StackedPolyphase:
    rows = [polyphase_decompose(f).components for f in bank.filters]
    return StackedPolyphase(bank.scheme, PolyMatrix(tuple(tuple(r) for r in rows), bank.scheme.dim))


def muep_verify_polyphase(pair: BankPair) -> Verdict:
    """Exact check of ``D* P = I`` and of its conjugate transpose ``P* D = I``."""
    P = stack_polyphase(pair.primal).matrix
    D = stack_polyphase(pair.dual).matrix
    v = (D.H @ P).compare_identity()
    if not v:
        return Verdict(False, "dual* primal != I", v.location, v.residual)
    v = (P.H @ D).compare_identity()
    if not v:
        return Verdict(False, "primal* dual != I", v.location, v.residual)
    return Verdict.ok()


def muep_verify_grid(pair: BankPair, grid: int = 64) -> float:
    """Max over a torus grid and all dual frequencies of the MUEP defect.

    Evaluates ``sum_i f_i(w) conj(f^d_i(w + gamma)) - delta(gamma)`` from the
    filter taps.
    """
    scheme = pair.scheme
    omegas = torus_grid(scheme.dim, grid)
    gammas = scheme.dual_frequencies()
    worst = 0.0
    base = [f.mask(omegas) for f in pair.primal.filters]
    for k, gam in enumerate(gammas):
        shifted = omegas + gam
        total = np.zeros(omegas.shape[0], dtype=complex)
        for fp, fd in zip(base, pair.dual.filters):
            total += fp * np.conj(fd.mask(shifted))
        target = 1.0 if k == 0 else 0.0
        worst = max(worst, float(np.max(np.abs(total - target))))
    return worst


def extract_svp(pair: BankPair, prune: bool = True, parallel: bool = False) -> SvpCertificate:
    """SVP generators from the ``q x q`` minors of the highpass polyphase stacks.

    ``k_sigma = det M[sigma]`` (primal) and ``l_sigma = det M^d[sigma]`` (dual)
    over all row subsets ``sigma`` of size ``q`` in lexicographic order; by
    Cauchy-Binet their products sum to ``det(M^d* M) = 1 - H G*``.  Pairs with
    a vanishing product are dropped when ``prune`` is set.
    """
    v = muep_verify_polyphase(pair)
    if not v:
        raise MuepPreconditionFailed(f"bank pair does not satisfy MUEP: {v.describe()}")
    M = stack_polyphase(pair.primal).highpass
    Md = stack_polyphase(pair.dual).highpass
    if pair.s < pair.scheme.q:
        minors_k, minors_l = {}, {}
    elif parallel:
        with ProcessPoolExecutor(max_workers=2) as ex:
            minors_k, minors_l = ex.map(maximal_minors, [M, Md])
    else:
        minors_k, minors_l = maximal_minors(M), maximal_minors(Md)
    subsets = sorted(minors_k)
    cert = SvpCertificate(
        tuple(minors_k[sigma] for sigma in subsets),
        tuple(minors_l[sigma] for sigma in subsets),
        note=f"Cauchy-Binet minors, {len(subsets)} subsets",
    )
    if prune:
        full = cert
        cert = cert.pruned()
        cert = SvpCertificate(cert.K, cert.L, note=f"{full.note}, {full.J - cert.J} zero pairs dropped")
    check = svp_verify(pair.primal.lowpass, pair.dual.lowpass, cert)
    if not check:
        raise MuepPostconditionFailed(f"extracted certificate rejected: {check.describe()}")
    return cert
