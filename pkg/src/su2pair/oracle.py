"""Brute-force numerical ground truth for 4x4 Hermitian problems.

Everything the closed forms claim is cross-checked against this module:
a dense Hermitian eigendecomposition, spectral matrix functions, the
Wootters concurrence evaluated from its definition, and the von Neumann
entropy of a qubit marginal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DensityMatrixError
from .pauli import pauli_word, require_hermitian

# Reconstruction / orthonormality bound for the eigendecomposition.
EIG_RTOL = 1e-11


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order with matching orthonormal eigenvectors.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``; reconstruction
    satisfies max|M - V diag(w) V^dag| <= EIG_RTOL * (1 + max|M|).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def projector(self, k: int) -> np.ndarray:
        v = self.eigenvectors[:, k]
        return np.outer(v, v.conj())


def eig_hermitian(m: np.ndarray) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Deterministic for a fixed input; validates Hermiticity first.
    """
    m = require_hermitian(m, "eig_hermitian input")
    w, v = np.linalg.eigh(m)
    order = np.arange(w.size - 1, -1, -1)
    w = np.ascontiguousarray(w[order])
    v = np.ascontiguousarray(v[:, order])
    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(w, v)


def mat_func(m: np.ndarray, func: str) -> np.ndarray:
    """Apply exp, sqrt, or x*log(x) on the spectrum of a Hermitian matrix.

    For ``sqrt`` and ``xlogx`` the spectrum must be nonnegative up to
    round-off: eigenvalues above -1e-12 * (1 + max|w|) are clamped to zero,
    anything lower is an error.  ``exp`` factors out the largest eigenvalue
    so intermediate terms cannot overflow.
    """
    dec = eig_hermitian(m)
    w = dec.eigenvalues.copy()
    if func == "exp":
        top = float(w[0])
        f = np.exp(w - top)
        out = (dec.eigenvectors * f) @ dec.eigenvectors.conj().T
        return out * np.exp(top)
    floor = -1e-12 * (1.0 + float(np.max(np.abs(w))))
    if func in ("sqrt", "xlogx"):
        if float(w[-1]) < floor:
            raise DensityMatrixError(
                f"matrix has negative eigenvalue {w[-1]:.3e} beyond round-off"
            )
        w = np.clip(w, 0.0, None)
        if func == "sqrt":
            f = np.sqrt(w)
        else:
            f = np.where(w > 0.0, w * np.log(np.where(w > 0.0, w, 1.0)), 0.0)
        return (dec.eigenvectors * f) @ dec.eigenvectors.conj().T
    raise ValueError(f"unknown matrix function {func!r}")


def _require_density(rho: np.ndarray, dim: int, tol: float = 1e-10) -> np.ndarray:
    rho = require_hermitian(rho, "density matrix")
    if rho.shape != (dim, dim):
        raise DensityMatrixError(f"expected a {dim}x{dim} density matrix")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > tol:
        raise DensityMatrixError(f"density matrix trace {tr} is not 1")
    w = np.linalg.eigvalsh(rho)
    if float(w[0]) < -tol:
        raise DensityMatrixError(
            f"density matrix has negative eigenvalue {w[0]:.3e}"
        )
    return rho


def spin_flip(rho: np.ndarray) -> np.ndarray:
    """The transformation (sy (x) sy) rho* (sy (x) sy)."""
    yy = pauli_word(2, 2)
    return yy @ np.asarray(rho, dtype=complex).conj() @ yy


def wootters_concurrence(rho: np.ndarray) -> float:
    """Two-qubit concurrence from its definition.

    The lambda_i are the square roots of the descending eigenvalues of
    rho * spin_flip(rho); they are computed through the equivalent Hermitian
    operator sqrt(rho) spin_flip(rho) sqrt(rho), with round-off negatives
    clamped to zero.  Returns max(l1 - l2 - l3 - l4, 0), clipped to [0, 1].
    """
    rho = _require_density(rho, 4)
    # Spectrum already validated against the density-matrix gate above;
    # clamp its round-off negatives here rather than re-gating in mat_func.
    dec = eig_hermitian(rho)
    root = np.sqrt(np.clip(dec.eigenvalues, 0.0, None))
    sq = (dec.eigenvectors * root) @ dec.eigenvectors.conj().T
    x = sq @ spin_flip(rho) @ sq
    lam = np.sqrt(np.clip(np.linalg.eigvalsh(x)[::-1], 0.0, None))
    return float(np.clip(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0))


def von_neumann_entropy(rho2: np.ndarray) -> float:
    """Base-2 von Neumann entropy of a single-qubit density matrix."""
    rho2 = _require_density(rho2, 2)
    w = np.clip(np.linalg.eigvalsh(rho2), 0.0, None)
    out = 0.0
    for p in w:
        if p > 0.0:
            out -= float(p * np.log2(p))
    return out
