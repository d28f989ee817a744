"""Dense linear algebra on the two-qubit joint strategy space.

States are length-4 complex arrays and operators are 4x4 complex arrays,
both in the fixed basis order |00>, |01>, |10>, |11> (index ``2*i + j``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * math.pi

#: Imaginary residue above which an expectation value is rejected.
IMAG_TOL = 1e-10


class NonHermitianOperator(ValueError):
    """Raised when an expectation value carries a non-negligible imaginary part."""


def basis_index(i: int, j: int) -> int:
    return 2 * i + j


def basis_state(i: int, j: int) -> np.ndarray:
    psi = np.zeros(4, dtype=complex)
    psi[basis_index(i, j)] = 1.0
    return psi


def _permutation(mapping) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    for i in (0, 1):
        for j in (0, 1):
            k, l = mapping(i, j)
            m[basis_index(k, l), basis_index(i, j)] = 1.0
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def swap_op() -> np.ndarray:
    """S|ij> = |ji>."""
    return _permutation(lambda i, j: (j, i))


@lru_cache(maxsize=None)
def twist_op() -> np.ndarray:
    """T|ij> = |1-j, 1-i>."""
    return _permutation(lambda i, j: (1 - j, 1 - i))


@lru_cache(maxsize=None)
def conversion_ops() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(C_A, C_B, C)``: relabel Alice's, Bob's, or both players' strategies."""
    ca = _permutation(lambda i, j: (1 - i, j))
    cb = _permutation(lambda i, j: (i, 1 - j))
    c = _permutation(lambda i, j: (1 - i, 1 - j))
    return ca, cb, c


@dataclass(frozen=True)
class Correlation:
    """Correlation parameters (gamma1, gamma2), stored reduced modulo 2*pi."""

    gamma1: float = 0.0
    gamma2: float = 0.0

    def __post_init__(self):
        for name in ("gamma1", "gamma2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            value = math.fmod(value, TWO_PI)
            if value < 0.0:
                value += TWO_PI
            if value >= TWO_PI:
                value = 0.0
            object.__setattr__(self, name, value)

    def swapped(self) -> "Correlation":
        return Correlation(self.gamma2, self.gamma1)


def involution_exp(gamma: float, m: np.ndarray) -> np.ndarray:
    """exp(i*gamma*M/2) for an involution M (M @ M == I)."""
    return math.cos(gamma / 2) * np.eye(4) + 1j * math.sin(gamma / 2) * m


def correlation_unitary(c: Correlation) -> np.ndarray:
    """J(gamma) = exp(i gamma1 S/2) exp(i gamma2 T/2)."""
    return involution_exp(c.gamma1, swap_op()) @ involution_exp(c.gamma2, twist_op())


def normalize(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(psi)
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("state cannot be normalized")
    return psi / norm


def states_equal(psi, phi, tol: float = 1e-10) -> bool:
    """Equality of normalized states up to a global phase."""
    overlap = abs(np.vdot(psi, phi))
    return abs(overlap - 1.0) <= tol


def expectation(state, m) -> float:
    """<psi|M|psi> as a real number."""
    state = np.asarray(state, dtype=complex)
    value = np.vdot(state, np.asarray(m) @ state)
    if abs(value.imag) >= IMAG_TOL:
        raise NonHermitianOperator(f"imaginary residue {value.imag:.3e} in expectation value")
    return float(value.real)


def is_hermitian(m, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    return bool(np.allclose(m, m.conj().T, rtol=0.0, atol=tol))


def is_unitary(m, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    return bool(np.allclose(m.conj().T @ m, np.eye(m.shape[0]), rtol=0.0, atol=tol))
