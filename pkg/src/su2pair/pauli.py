"""Fixed-size complex matrix algebra: Pauli basis, tensor products, partial trace.

Everything in the package lives in 2x2 and 4x4 complex matrices together with
real 3-vectors and 3x3 real matrices; there is deliberately no general N-d
machinery here.
"""

from __future__ import annotations

import numpy as np

from .errors import NonHermitianError

# Hermiticity is checked as max|M - M^dag| <= HERMITIAN_RTOL * (1 + max|M|).
# Fixed, not configurable: every matrix handled here is analytically Hermitian.
HERMITIAN_RTOL = 1e-12

_SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
_SIGMA.setflags(write=False)

# 4x4 Pauli words sigma_i (x) sigma_j, indexed [i, j], i,j in 0..3.
_WORDS = np.array([[np.kron(_SIGMA[i], _SIGMA[j]) for j in range(4)] for i in range(4)])
_WORDS.setflags(write=False)


def pauli(i: int) -> np.ndarray:
    """Return sigma_i for i in 0..3, with sigma_0 the 2x2 identity.

    The returned array is read-only; copy before mutating.
    """
    if i not in (0, 1, 2, 3):
        raise IndexError(f"pauli index must be in 0..3, got {i}")
    return _SIGMA[i]


def pauli_word(i: int, j: int) -> np.ndarray:
    """Return sigma_i (x) sigma_j as a read-only 4x4 matrix."""
    if i not in (0, 1, 2, 3) or j not in (0, 1, 2, 3):
        raise IndexError(f"pauli word indices must be in 0..3, got ({i}, {j})")
    return _WORDS[i, j]


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product of two 2x2 matrices; satisfies the mixed-product rule."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    m = np.asarray(m)
    return hermiticity_defect(m) <= rtol * (1.0 + float(np.max(np.abs(m))))


def require_hermitian(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Validate Hermiticity and return the input as a complex array."""
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m.view(float))):
        raise NonHermitianError(f"{what} contains non-finite entries")
    defect = hermiticity_defect(m)
    bound = HERMITIAN_RTOL * (1.0 + float(np.max(np.abs(m))))
    if defect > bound:
        raise NonHermitianError(
            f"{what} is not Hermitian: defect {defect:.3e} exceeds {bound:.3e}"
        )
    return m


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Trace out one qubit of a 4x4 operator, keeping subsystem ``keep`` (1 or 2).

    Defined for any 4x4 input; preserves the total trace and maps
    kron(a, b) to a*Tr[b] (keep=1) or b*Tr[a] (keep=2).
    """
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("ikjk->ij", r)
    if keep == 2:
        return np.einsum("kikj->ij", r)
    raise ValueError(f"keep must be 1 or 2, got {keep}")


def max_abs(m: np.ndarray) -> float:
    """Max-norm of a matrix, used throughout for residual bounds."""
    return float(np.max(np.abs(np.asarray(m))))
