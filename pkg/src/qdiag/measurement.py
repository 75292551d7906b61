"""Projective measurement simulation: Born-rule sampling and state collapse.

An :class:`Observable` hides the spectral decomposition of the matrix it was
built from; callers learn about the spectrum only through the values that
measurements return. Each measurement consumes exactly one uniform variate,
drawn through the inverse CDF over branch probabilities in ascending
eigenvalue order, so runs are bit-reproducible for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionMismatch
from .linalg import frozen, spectral_oracle, validate_hermitian

__all__ = [
    "Observable",
    "MeasurementOutcome",
    "make_observable",
    "prepare_mixed_state",
    "measure",
    "outcome_probabilities",
    "sample_values",
    "validate_density_matrix",
]

# Eigenvalues closer than this relative gap belong to one degenerate branch.
BRANCH_MERGE_TOL = 1e-9
# Branches this unlikely are excluded from sampling outright.
MIN_BRANCH_PROBABILITY = 1e-15


def validate_density_matrix(rho) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return the symmetrized state."""
    mat = validate_hermitian(rho)
    trace = float(mat.trace().real)
    if abs(trace - 1) > 1e-12:
        raise ValueError(f"density matrix must have unit trace, got {trace!r}")
    smallest = float(np.linalg.eigvalsh(mat)[0])
    if smallest < -1e-10:
        raise ValueError(f"density matrix has negative eigenvalue {smallest:.3e}")
    return mat


def prepare_mixed_state(dim: int) -> np.ndarray:
    """The homogeneous mixture E/N, under which all outcomes are equiprobable."""
    if not isinstance(dim, (int, np.integer)) or dim < 1:
        raise ValueError(f"dimension must be a positive integer, got {dim}")
    return frozen(np.eye(dim, dtype=complex) / dim)


@dataclass(frozen=True)
class Observable:
    """Opaque handle for measuring a Hermitian matrix.

    The public surface exposes only the dimension and, optionally, additive
    Gaussian readout noise on returned values. Eigenvalues and eigenprojectors
    live in private fields consumed by :func:`measure` and
    :func:`outcome_probabilities`.
    """

    dim: int
    readout_sigma: float
    _branch_values: np.ndarray = field(repr=False)
    _projectors: np.ndarray = field(repr=False)  # (branches, N, N)

    @property
    def branch_count(self) -> int:
        return self._branch_values.shape[0]


@dataclass(frozen=True)
class MeasurementOutcome:
    """One measurement: the returned value, its branch id, and the collapsed state."""

    value: float
    branch_index: int
    post_state: np.ndarray


def make_observable(matrix, readout_sigma: float = 0.0) -> Observable:
    """Wrap a Hermitian matrix as a measurable observable.

    Construction performs the spectral decomposition internally. Eigenvalues
    within ``BRANCH_MERGE_TOL`` relative gap are merged into a single branch
    whose value is their mean and whose projector has the merged rank, so
    degenerate observables measure cleanly.
    """
    if readout_sigma < 0:
        raise ValueError(f"readout noise sigma must be non-negative, got {readout_sigma}")
    decomposition = spectral_oracle(matrix)
    w, v = decomposition.eigenvalues, decomposition.eigenvectors
    scale = max(1.0, float(np.abs(w).max()))
    splits = np.nonzero(np.diff(w) > BRANCH_MERGE_TOL * scale)[0] + 1
    values, projectors = [], []
    for group in np.split(np.arange(len(w)), splits):
        values.append(float(w[group[0]]) if len(group) == 1 else float(w[group].mean()))
        block = v[:, group]
        projector = block @ block.conj().T
        projectors.append((projector + projector.conj().T) / 2)
    return Observable(
        dim=len(w),
        readout_sigma=float(readout_sigma),
        _branch_values=frozen(np.array(values)),
        _projectors=frozen(np.stack(projectors)),
    )


def _check_dims(observable: Observable, rho: np.ndarray) -> np.ndarray:
    state = np.asarray(rho, dtype=complex)
    if state.shape != (observable.dim, observable.dim):
        raise DimensionMismatch(
            f"state shape {state.shape} does not match observable dimension {observable.dim}"
        )
    return state


def _branch_probabilities(observable: Observable, rho: np.ndarray) -> np.ndarray:
    # Born rule p_b = Tr[rho P_b]; tiny negative rounding is clipped.
    p = np.einsum("bij,ji->b", observable._projectors, rho).real
    return np.clip(p, 0.0, None)


def outcome_probabilities(observable: Observable, rho) -> list[tuple[float, float]]:
    """(value, probability) per branch, ascending in value, summing to one.

    Intended for tests and reports; the discovery path of the protocol never
    calls this.
    """
    state = _check_dims(observable, rho)
    p = _branch_probabilities(observable, state)
    return list(zip(observable._branch_values.tolist(), p.tolist()))


def _sampling_cdf(observable: Observable, rho: np.ndarray):
    p = _branch_probabilities(observable, rho)
    kept = np.nonzero(p >= MIN_BRANCH_PROBABILITY)[0]
    weights = p[kept]
    return p, kept, np.cumsum(weights / weights.sum())


def measure(observable: Observable, rho, rng: np.random.Generator) -> MeasurementOutcome:
    """Perform one projective measurement on ``rho``.

    Samples branch b with probability Tr[rho P_b] using a single uniform
    variate, and collapses the state to P_b rho P_b / p_b. Branches with
    probability below ``MIN_BRANCH_PROBABILITY`` can never be returned.
    When the observable carries readout noise, a Gaussian perturbation is
    added to the returned value only; the post-measurement state is exact.
    """
    state = _check_dims(observable, rho)
    p, kept, cdf = _sampling_cdf(observable, state)
    u = rng.random()
    branch = int(kept[min(np.searchsorted(cdf, u, side="right"), len(kept) - 1)])
    projector = observable._projectors[branch]
    post = projector @ state @ projector / p[branch]
    value = float(observable._branch_values[branch])
    if observable.readout_sigma > 0:
        value += observable.readout_sigma * rng.standard_normal()
    return MeasurementOutcome(value, branch, frozen((post + post.conj().T) / 2))


def sample_values(
    observable: Observable, rho, rng: np.random.Generator, count: int
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``count`` measurement values from identically prepared copies of ``rho``.

    Returns (values, branch indices). Statistically identical to ``count``
    independent :func:`measure` calls on fresh copies of the state, without
    building post-measurement states. For a noiseless observable the values
    are bitwise equal to sequential ``measure`` calls on the same stream;
    with readout noise the uniform block is drawn before the Gaussian block.
    """
    state = _check_dims(observable, rho)
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    _, kept, cdf = _sampling_cdf(observable, state)
    u = rng.random(count)
    branches = kept[np.minimum(np.searchsorted(cdf, u, side="right"), len(kept) - 1)]
    values = observable._branch_values[branches].copy()
    if observable.readout_sigma > 0:
        values += observable.readout_sigma * rng.standard_normal(count)
    return values, branches


def branch_post_state(observable: Observable, rho, branch_index: int) -> np.ndarray:
    """The collapsed state P_b rho P_b / p_b for a specific branch."""
    state = _check_dims(observable, rho)
    p = _branch_probabilities(observable, state)
    if p[branch_index] < MIN_BRANCH_PROBABILITY:
        raise ValueError(f"branch {branch_index} has vanishing probability")
    projector = observable._projectors[branch_index]
    post = projector @ state @ projector / p[branch_index]
    return frozen((post + post.conj().T) / 2)
