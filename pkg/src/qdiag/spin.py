"""Spin-s operator algebra and coherent spin states.

Basis convention: |s, m> ordered by descending magnetic quantum number,
m = s, s-1, ..., -s, so the first basis vector is the highest-weight state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .linalg import frozen

__all__ = ["SpinSystem", "SpinOperators", "spin_operators", "coherent_state"]


@dataclass(frozen=True)
class SpinSystem:
    """A single spin with quantum number s on a (2s+1)-dimensional Hilbert space."""

    s: float

    def __post_init__(self):
        two_s = round(2 * self.s)
        if two_s != 2 * self.s or two_s < 0:
            raise ValueError(f"spin must be a non-negative half-integer, got {self.s}")
        object.__setattr__(self, "s", two_s / 2)

    @property
    def dim(self) -> int:
        return round(2 * self.s) + 1

    @classmethod
    def from_dim(cls, dim: int) -> "SpinSystem":
        """Spin system whose Hilbert space has the given dimension, s = (dim-1)/2."""
        if not isinstance(dim, (int, np.integer)) or dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {dim}")
        return cls((dim - 1) / 2)


@dataclass(frozen=True)
class SpinOperators:
    """The spin component matrices (sx, sy, sz) in the descending-m basis."""

    system: SpinSystem
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    @property
    def dim(self) -> int:
        return self.system.dim

    def stacked(self) -> np.ndarray:
        """The three components as one (3, N, N) array."""
        return np.stack([self.sx, self.sy, self.sz])


def spin_operators(system: SpinSystem) -> SpinOperators:
    """Standard angular-momentum matrices for the given spin.

    sz is diagonal with entries s, s-1, ..., -s; the raising operator has
    matrix elements <m+1|S+|m> = sqrt(s(s+1) - m(m+1)), and
    sx = (S+ + S-)/2, sy = (S+ - S-)/(2i).
    """
    s, n = system.s, system.dim
    m = s - np.arange(n)
    sz = np.diag(m).astype(complex)
    raising = np.zeros((n, n), dtype=complex)
    raising[np.arange(n - 1), np.arange(1, n)] = np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1))
    sx = (raising + raising.conj().T) / 2
    sy = (raising - raising.conj().T) / 2j
    return SpinOperators(system, frozen(sx), frozen(sy), frozen(sz))


def coherent_state(system: SpinSystem, theta: float, phi: float) -> np.ndarray:
    """Coherent spin state pointing along (theta, phi).

    Rotates the highest-weight state |s, s> by exp(-i*phi*Sz) exp(-i*theta*Sy).
    Requires 0 <= theta <= pi; phi may be any finite angle. The result is a
    unit vector up to solver rounding (no renormalization is applied).
    """
    if not 0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    ops = spin_operators(system)
    state = expm(-1j * theta * ops.sy)[:, 0]
    m = system.s - np.arange(system.dim)
    state = np.exp(-1j * phi * m) * state
    return frozen(state)
