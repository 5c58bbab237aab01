"""Entanglement-of-formation bookkeeping for the B-C pair reduction.

Tracing the three-party state over A leaves B and C with the two-qubit
mixture (1-p)|theta><theta| + p|tau><tau| of the two Bell states.  Its
entanglement of formation follows from the concurrence construction:
C(rho) from the spin-flipped spectrum, then E_F = H((1+sqrt(1-C^2))/2).
The ledger also records the per-copy output value 1 - H(p), the locking
deficit H(1/2 + sqrt(p(1-p))) + H(p) - 1 that assistance from A would
have to fund, and the conserved one-party entropies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exactmath import shannon_h

__all__ = [
    "EofLedger",
    "rp_reduced_bc",
    "concurrence",
    "eof_from_concurrence",
    "ledger",
]

_PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(_PAULI_Y, _PAULI_Y)

_THETA = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / math.sqrt(2.0)
_TAU = np.array([1.0, 0.0, 0.0, -1.0], dtype=complex) / math.sqrt(2.0)


@dataclass(frozen=True)
class EofLedger:
    """Per-copy bookkeeping at mixing weight p."""

    p: float
    ef_in_per_copy: float
    ef_out_per_copy: float
    locking_deficit_per_copy: float
    s_a_per_copy: float
    s_b_per_copy: float

    def __post_init__(self) -> None:
        for name in ("ef_in_per_copy", "ef_out_per_copy", "s_a_per_copy",
                     "s_b_per_copy"):
            v = getattr(self, name)
            if not -1e-12 <= v <= 1.0 + 1e-12:
                raise ValueError(f"{name} out of [0, 1]: {v}")
        if not -1.0 - 1e-12 <= self.locking_deficit_per_copy <= 1.0 + 1e-12:
            raise ValueError(
                f"locking deficit out of [-1, 1]: {self.locking_deficit_per_copy}"
            )


def rp_reduced_bc(p: float) -> np.ndarray:
    """Two-qubit reduction on B-C: (1-p)|theta><theta| + p|tau><tau|.

    theta and tau are the (|00> +- |11>)/sqrt2 Bell pair, so the result
    is Bell-diagonal by construction.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of [0, 1]: {p}")
    return (1.0 - p) * np.outer(_THETA, _THETA.conj()) + p * np.outer(
        _TAU, _TAU.conj()
    )


def _check_density(rho: np.ndarray) -> np.ndarray:
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise ValueError("density matrix is not Hermitian to 1e-12")
    if abs(np.trace(rho).real - 1.0) > 1e-12:
        raise ValueError("density matrix trace is not 1 to 1e-12")
    eigs = np.linalg.eigvalsh(rho)
    if eigs.min() < -1e-10:
        raise ValueError(f"density matrix is not PSD (min eigenvalue {eigs.min():.3e})")
    return rho


def concurrence(rho: np.ndarray) -> float:
    """Two-qubit concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the decreasing square roots of the eigenvalues of
    rho (Y x Y) rho* (Y x Y).  That product is similar to the PSD matrix
    A A+ with A = sqrt(rho) (Y x Y) sqrt(rho)*, so the l_i are the
    singular values of A; taking them directly (instead of square roots
    of eigenvalues) keeps rank-deficient states at ~1e-15 accuracy,
    where the squared route loses half the digits to eigenvalue noise.
    Eigenvalues of rho below 1e-14 of the largest are treated as the
    exact zeros they represent.
    """
    rho = _check_density(np.asarray(rho, dtype=complex))
    w, v = np.linalg.eigh(rho)
    w = np.where(w < w.max() * 1e-14, 0.0, w)
    sqrt_rho = (v * np.sqrt(w)) @ v.conj().T
    a = sqrt_rho @ _YY @ sqrt_rho.conj()
    lam = np.linalg.svd(a, compute_uv=False)
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def eof_from_concurrence(c: float) -> float:
    """E_F in ebits from a concurrence value: H((1 + sqrt(1 - c^2)) / 2)."""
    if not -1e-12 <= c <= 1.0 + 1e-12:
        raise ValueError(f"concurrence out of [0, 1]: {c}")
    c = min(max(c, 0.0), 1.0)
    return shannon_h((1.0 + math.sqrt(1.0 - c * c)) / 2.0)


def ledger(p: float) -> EofLedger:
    """Per-copy E_F ledger at mixing weight p.

    ef_in goes through the full pipeline (reduction -> concurrence ->
    E_F) rather than the closed form H(1/2 + sqrt(p(1-p))); the test
    suite pins the two routes against each other.  The deficit is the
    closed-form combination H(1/2 + sqrt(p(1-p))) + H(p) - 1, i.e. how
    much E_F the hypothetical reversible protocol would need to create
    beyond what one bit of assistance per copy can account for.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of [0, 1]: {p}")
    ef_in = eof_from_concurrence(concurrence(rp_reduced_bc(p)))
    return EofLedger(
        p=p,
        ef_in_per_copy=ef_in,
        ef_out_per_copy=1.0 - shannon_h(p),
        locking_deficit_per_copy=(
            shannon_h(0.5 + math.sqrt(p * (1.0 - p))) + shannon_h(p) - 1.0
        ),
        s_a_per_copy=shannon_h(p),
        s_b_per_copy=1.0,
    )
