"""Dense complex linear algebra for small Hilbert spaces (d <= 16)."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

# Pauli matrices and the qubit identity, building blocks for every
# Hamiltonian in this package.
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

# Relative tolerance for accepting a matrix as Hermitian.  Inputs beyond it
# are rejected, not symmetrized, so upstream bugs fail loudly.
HERMITICITY_RTOL = 1e-12

# Density-operator eigenvalues are clamped to [LOG_EIG_FLOOR, 1] before a
# logarithm; weights below ENTROPY_WEIGHT_CUTOFF contribute nothing to
# entropy-like sums (the lambda * log(lambda) -> 0 convention).
LOG_EIG_FLOOR = 1e-300
ENTROPY_WEIGHT_CUTOFF = 1e-15


class EigenSystem(NamedTuple):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_complex_matrix(m) -> np.ndarray:
    """Validate and return a finite square complex matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def require_hermitian(m, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Validate Hermiticity: ||M - M^dag||_max <= rtol * ||M||_max."""
    a = as_complex_matrix(m)
    scale = np.max(np.abs(a))
    defect = np.max(np.abs(a - a.conj().T))
    if defect > rtol * max(scale, 1e-30):
        raise ValueError(
            f"matrix is not Hermitian: defect {defect:.3e} exceeds "
            f"{rtol:.1e} * scale {scale:.3e}"
        )
    return a


def hermitian_eig(m) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix (ascending eigenvalues)."""
    a = require_hermitian(m)
    vals, vecs = np.linalg.eigh(a)
    return EigenSystem(vals, vecs)


def matrix_function(m, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix: V diag(f(lambda)) V^dag.

    ``f`` must be defined (finite) on every eigenvalue; callers that need a
    logarithm of a rank-deficient density operator clamp the spectrum first.
    """
    vals, vecs = hermitian_eig(m)
    with np.errstate(all="ignore"):
        fvals = np.asarray(f(vals), dtype=complex)
    if fvals.shape != vals.shape or not np.all(np.isfinite(fvals)):
        raise ValueError("function is undefined on part of the spectrum")
    return (vecs * fvals) @ vecs.conj().T


def commutator(a, b) -> np.ndarray:
    """Commutator AB - BA."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two operators."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def partial_trace(m, dims: tuple[int, int], keep: str = "A") -> np.ndarray:
    """Trace out one factor of a bipartite operator.

    ``dims = (d_A, d_B)`` must satisfy d_A * d_B == dim(m); ``keep`` selects
    the surviving subsystem ("A" or "B").  The total trace is preserved.
    """
    a = as_complex_matrix(m)
    d_a, d_b = int(dims[0]), int(dims[1])
    if d_a < 1 or d_b < 1 or d_a * d_b != a.shape[0]:
        raise ValueError(f"dims {dims} inconsistent with matrix size {a.shape[0]}")
    blocks = a.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ijkj->ik", blocks)
    if keep == "B":
        return np.einsum("ijil->jl", blocks)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def spectral_norm(m) -> float:
    """Operator norm of a Hermitian matrix: max |eigenvalue|."""
    vals, _ = hermitian_eig(m)
    return float(np.max(np.abs(vals)))
