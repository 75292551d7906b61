"""Dense complex linear algebra: Hermiticity validation, the spectral oracle, null spaces.

The spectral oracle is the classical engine hiding behind the measurement
simulator and doubles as the independent verifier in tests. Everything here
is pure and returns read-only arrays, so results are safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceFailure, HermiticityViolation, NotSquareError

__all__ = [
    "DEFAULT_HERMITICITY_TOL",
    "DEFAULT_NULLSPACE_TOL",
    "SpectralDecomposition",
    "validate_hermitian",
    "spectral_oracle",
    "null_space",
    "random_hermitian",
]

DEFAULT_HERMITICITY_TOL = 1e-12
DEFAULT_NULLSPACE_TOL = 1e-9


def frozen(array: np.ndarray) -> np.ndarray:
    """Return `array` marked read-only (shared-ownership safety)."""
    array.setflags(write=False)
    return array


def as_square_matrix(m) -> np.ndarray:
    """Coerce to a finite, square, complex ndarray or raise."""
    mat = np.asarray(m, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise NotSquareError(f"expected a square matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return mat


def validate_hermitian(m, tol: float = DEFAULT_HERMITICITY_TOL) -> np.ndarray:
    """Check self-adjointness and return the symmetrized matrix (M + M†)/2.

    The deviation max|M - M†| is compared against ``tol`` times max|M|;
    exceeding it raises :class:`HermiticityViolation` carrying the measured
    deviation. Symmetrizing zeroes the imaginary parts of the diagonal
    exactly.
    """
    mat = as_square_matrix(m)
    deviation = float(np.abs(mat - mat.conj().T).max())
    scale = float(np.abs(mat).max())
    if deviation > tol * scale:
        raise HermiticityViolation(
            f"matrix deviates from Hermiticity by {deviation:.3e} "
            f"(allowed {tol:.1e} x max-norm {scale:.3e})",
            deviation=deviation,
        )
    return frozen((mat + mat.conj().T) / 2)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in ascending order paired with orthonormal eigenvector columns.

    Column ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def spectral_oracle(a) -> SpectralDecomposition:
    """Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Deterministic for bit-identical input. A solver breakdown is surfaced
    as :class:`ConvergenceFailure`, never ignored.
    """
    mat = validate_hermitian(a)
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc
    return SpectralDecomposition(frozen(eigenvalues), frozen(eigenvectors))


def null_space(m, tol: float = DEFAULT_NULLSPACE_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical kernel of a square matrix.

    Keeps right-singular vectors whose singular values are at most ``tol``
    times the largest one. An empty list is a valid result (no kernel at
    this tolerance).
    """
    mat = as_square_matrix(m)
    _, singulars, vh = np.linalg.svd(mat)
    cutoff = tol * singulars[0]
    return [frozen(vh[k].conj()) for k in range(len(singulars)) if singulars[k] <= cutoff]


def random_hermitian(dim: int, rng) -> np.ndarray:
    """Draw a dim x dim Hermitian matrix with Gaussian entries.

    ``rng`` may be a seed or a ``numpy.random.Generator``.
    """
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    gen = np.random.default_rng(rng)
    g = gen.normal(size=(dim, dim)) + 1j * gen.normal(size=(dim, dim))
    return frozen((g + g.conj().T) / 2)
