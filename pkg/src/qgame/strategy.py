"""Single-qubit pure strategies."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .hilbert import TWO_PI

_ZERO_AMP = 1e-15


@dataclass(frozen=True)
class LocalStrategy:
    """A player's pure strategy cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.

    ``theta`` lies in [0, pi] and ``phi`` is reduced into [0, 2*pi).
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValueError("strategy angles must be finite")
        if theta < -1e-12 or theta > math.pi + 1e-12:
            raise ValueError(f"theta={theta} outside [0, pi]; use LocalStrategy.from_angles")
        theta = min(max(theta, 0.0), math.pi)
        if theta == 0.0 or theta == math.pi:
            phi = 0.0  # the phase is not observable at the poles
        phi = math.fmod(phi, TWO_PI)
        if phi < 0.0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_amplitudes(cls, c0: complex, c1: complex) -> "LocalStrategy":
        """Canonical angles for the ray through (c0, c1)."""
        r0, r1 = abs(c0), abs(c1)
        if r0 + r1 == 0.0:
            raise ValueError("zero vector is not a strategy")
        theta = 2.0 * math.atan2(r1, r0)
        if r0 <= _ZERO_AMP * (r0 + r1) or r1 <= _ZERO_AMP * (r0 + r1):
            return cls(theta, 0.0)
        return cls(theta, np.angle(c1) - np.angle(c0))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "LocalStrategy":
        """Accept arbitrary real angles and return the canonical representative."""
        return cls.from_amplitudes(math.cos(theta / 2), math.sin(theta / 2) * np.exp(1j * phi))

    @classmethod
    def pure(cls, i: int) -> "LocalStrategy":
        """The classical strategy |i>."""
        if i not in (0, 1):
            raise ValueError("pure strategy index must be 0 or 1")
        return cls(math.pi * i, 0.0)

    def amplitudes(self) -> np.ndarray:
        return np.array(
            [math.cos(self.theta / 2), math.sin(self.theta / 2) * np.exp(1j * self.phi)],
            dtype=complex,
        )

    def bar(self) -> "LocalStrategy":
        """Flip the basis labels 0 <-> 1, i.e. (theta, phi) -> (pi - theta, -phi)."""
        return LocalStrategy(math.pi - self.theta, -self.phi)

    def prob_one(self) -> float:
        """Probability of the classical strategy 1."""
        return math.sin(self.theta / 2) ** 2


def product_state(alpha: LocalStrategy, beta: LocalStrategy) -> np.ndarray:
    return np.kron(alpha.amplitudes(), beta.amplitudes())


class Edge(enum.IntEnum):
    """Semiclassical joint strategies |ij>; the value is the basis index 2*i + j."""

    E00 = 0
    E01 = 1
    E10 = 2
    E11 = 3

    @property
    def ij(self) -> tuple[int, int]:
        return divmod(int(self), 2)

    @property
    def ket(self) -> str:
        i, j = self.ij
        return f"|{i}{j}>"

    @property
    def bit(self) -> int:
        return 1 << int(self)

    def strategies(self) -> tuple[LocalStrategy, LocalStrategy]:
        i, j = self.ij
        return LocalStrategy.pure(i), LocalStrategy.pure(j)
