"""Orthonormal multipole operator bases on a spin Hilbert space.

The N^2 basis operators are built from symmetrized products of spin
components, rank by rank, then orthonormalized under the trace inner
product <X, Y> = (1/N) Tr[X† Y]. Any Hermitian N x N matrix decomposes
uniquely over this basis with real coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .exceptions import DimensionMismatch, HermiticityViolation, RankDeficientBasis
from .linalg import frozen, validate_hermitian
from .spin import SpinOperators, SpinSystem

__all__ = [
    "MultipoleBasis",
    "SpinObservable",
    "build_multipole_basis",
    "decompose",
    "reconstruct",
]

# Candidates whose residual after projection falls below this fraction of
# their own norm are linearly dependent on earlier basis elements.
INDEPENDENCE_CUTOFF = 1e-8

AXES = "xyz"


@dataclass(frozen=True)
class MultipoleBasis:
    """N^2 orthonormal Hermitian operators spanning all observables of a spin.

    ``operators[0]`` is the identity; ``labels[k]`` records the rank and the
    component multiset that generated operator k, e.g. ``("x", "y")`` for a
    symmetrized second-rank product.
    """

    system: SpinSystem
    operators: np.ndarray  # (N^2, N, N)
    labels: tuple[tuple[str, ...], ...]

    @property
    def dim(self) -> int:
        return self.system.dim

    @property
    def size(self) -> int:
        return self.operators.shape[0]

    def rank(self, index: int) -> int:
        return len(self.labels[index])


@dataclass(frozen=True)
class SpinObservable:
    """Real coefficient vector of a Hermitian matrix over a multipole basis."""

    system: SpinSystem
    coefficients: np.ndarray  # real, length N^2


def _trace_inner(x: np.ndarray, y: np.ndarray, n: int) -> float:
    # (1/N) Tr[x† y]; real for Hermitian operands, so the imaginary
    # rounding residue is dropped to keep Gram-Schmidt coefficients real.
    return float(np.einsum("ij,ij->", x.conj(), y).real) / n


def _symmetrized_product(components: np.ndarray, counts: tuple[int, int, int], cache: dict) -> np.ndarray:
    """Average of S_{j1}...S_{ja} over all orderings of the multiset `counts`.

    Uses the recursion sym(L) = (1/|L|) * sum_j count_j * S_j @ sym(L - j),
    memoized on the count triple, so the cost stays polynomial in the rank.
    """
    if counts in cache:
        return cache[counts]
    total = sum(counts)
    n = components.shape[1]
    acc = np.zeros((n, n), dtype=complex)
    for j in range(3):
        if counts[j]:
            sub = list(counts)
            sub[j] -= 1
            acc += counts[j] * (components[j] @ _symmetrized_product(components, tuple(sub), cache))
    result = acc / total
    cache[counts] = result
    return result


def build_multipole_basis(ops: SpinOperators) -> MultipoleBasis:
    """Construct the full multipole basis for the given spin operators.

    Rank 0 is the identity. For each rank a = 1..2s the candidates are the
    symmetrized products of a spin components, ordered lexicographically in
    their component multiset, orthonormalized by modified Gram-Schmidt
    against everything retained so far. Candidates that are numerically
    dependent (residual below ``INDEPENDENCE_CUTOFF`` of their norm) are
    discarded; each rank must yield exactly 2a+1 independent operators.

    Raises
    ------
    RankDeficientBasis
        If some rank closes with fewer than 2a+1 operators.
    """
    system = ops.system
    n = system.dim
    two_s = n - 1
    components = ops.stacked()
    cache: dict = {(0, 0, 0): np.eye(n, dtype=complex)}

    basis = [np.eye(n, dtype=complex)]
    labels: list[tuple[str, ...]] = [()]
    for rank in range(1, two_s + 1):
        retained = 0
        for multiset in combinations_with_replacement(range(3), rank):
            if retained == 2 * rank + 1:
                break
            counts = (multiset.count(0), multiset.count(1), multiset.count(2))
            candidate = _symmetrized_product(components, counts, cache)
            scale = np.sqrt(_trace_inner(candidate, candidate, n))
            residual = candidate
            for _ in range(2):  # second pass keeps the Gram identity at 1e-10 for high ranks
                residual = residual - sum(
                    _trace_inner(t, residual, n) * t for t in basis
                )
            norm = np.sqrt(_trace_inner(residual, residual, n))
            if norm < INDEPENDENCE_CUTOFF * scale:
                continue
            operator = residual / norm
            basis.append((operator + operator.conj().T) / 2)
            labels.append(tuple(AXES[j] for j in multiset))
            retained += 1
        if retained < 2 * rank + 1:
            raise RankDeficientBasis(
                f"rank {rank} yielded {retained} independent operators, expected {2 * rank + 1}"
            )
    return MultipoleBasis(system, frozen(np.stack(basis)), tuple(labels))


def decompose(matrix, basis: MultipoleBasis) -> SpinObservable:
    """Expand a Hermitian matrix over the basis: a_k = (1/N) Tr[A T_k].

    The coefficients of a Hermitian matrix are real; a significant imaginary
    residue means the input slipped past validation and is rejected.
    """
    mat = validate_hermitian(matrix)
    if mat.shape[0] != basis.dim:
        raise DimensionMismatch(
            f"matrix dimension {mat.shape[0]} does not match basis dimension {basis.dim}"
        )
    coefficients = np.einsum("kij,ji->k", basis.operators, mat) / basis.dim
    residue = float(np.abs(coefficients.imag).max())
    if residue > 1e-12 * max(1.0, float(np.abs(coefficients.real).max())):
        raise HermiticityViolation(
            f"decomposition produced imaginary residue {residue:.3e}", deviation=residue
        )
    return SpinObservable(basis.system, frozen(coefficients.real.copy()))


def reconstruct(observable: SpinObservable, basis: MultipoleBasis) -> np.ndarray:
    """Rebuild the matrix sum_k a_k T_k, symmetrized and validated Hermitian."""
    coefficients = np.asarray(observable.coefficients, dtype=float)
    if coefficients.shape != (basis.size,):
        raise DimensionMismatch(
            f"coefficient vector has length {coefficients.shape}, basis needs {basis.size}"
        )
    matrix = np.einsum("k,kij->ij", coefficients, basis.operators)
    return validate_hermitian(matrix, tol=1e-10)
