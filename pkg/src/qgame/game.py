"""Classical 2x2 games, their quantization, symmetries and duality maps."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .hilbert import Correlation, conversion_ops, swap_op, twist_op
from .strategy import LocalStrategy


class ParseError(ValueError):
    """Malformed game specification file."""


class Symmetry(str, enum.Enum):
    S = "S"
    T = "T"
    EXPLICIT = "explicit"


class SymmetryCheck(str, enum.Enum):
    S = "S"
    T = "T"
    BOTH = "Both"
    NEITHER = "Neither"


class Conversion(str, enum.Enum):
    ALICE = "Alice"
    BOB = "Bob"
    FULL = "Full"


def _as_matrix(values) -> np.ndarray:
    m = np.array(values, dtype=float).reshape(2, 2)
    if not np.all(np.isfinite(m)):
        raise ValueError("payoffs must be finite")
    m.setflags(write=False)
    return m


def s_partner(a: np.ndarray) -> np.ndarray:
    """Bob's matrix of the S-symmetric game built on ``a``: B_ij = A_ji."""
    return a.T.copy()


def t_partner(a: np.ndarray) -> np.ndarray:
    """Bob's matrix of the T-symmetric game built on ``a``: B_ij = A_{1-j,1-i}."""
    return a[::-1, ::-1].T.copy()


@dataclass(frozen=True, eq=False)
class ClassicalGame:
    """Payoff matrices ``a`` (Alice) and ``b`` (Bob) indexed ``[i, j]``."""

    a: np.ndarray
    b: np.ndarray
    symmetry: Symmetry

    def __post_init__(self):
        object.__setattr__(self, "a", _as_matrix(self.a))
        object.__setattr__(self, "b", _as_matrix(self.b))
        object.__setattr__(self, "symmetry", Symmetry(self.symmetry))
        if self.symmetry is Symmetry.S and not np.array_equal(self.b, s_partner(self.a)):
            raise ValueError("S-symmetric game requires B_ji = A_ij")
        if self.symmetry is Symmetry.T and not np.array_equal(self.b, t_partner(self.a)):
            raise ValueError("T-symmetric game requires B_{1-j,1-i} = A_ij")
        # cached: these sit on every hot path
        object.__setattr__(self, "_a_flat", tuple(float(x) for x in self.a.ravel()))
        object.__setattr__(
            self, "_scale", max(1.0, float(np.max(np.abs(self.a))), float(np.max(np.abs(self.b))))
        )
        object.__setattr__(self, "_invariants", _compute_invariants(self._a_flat))

    @classmethod
    def s_symmetric(cls, a) -> "ClassicalGame":
        a = _as_matrix(a)
        return cls(a, s_partner(a), Symmetry.S)

    @classmethod
    def t_symmetric(cls, a) -> "ClassicalGame":
        a = _as_matrix(a)
        return cls(a, t_partner(a), Symmetry.T)

    @classmethod
    def explicit(cls, a, b) -> "ClassicalGame":
        return cls(a, b, Symmetry.EXPLICIT)

    @property
    def a_flat(self) -> tuple[float, float, float, float]:
        """(A00, A01, A10, A11)."""
        return self._a_flat

    @property
    def scale(self) -> float:
        """max(1, max |A_ij|, max |B_ij|), the reference size for tolerances."""
        return self._scale

    def __eq__(self, other):
        if not isinstance(other, ClassicalGame):
            return NotImplemented
        return (
            self.symmetry == other.symmetry
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
        )

    def __hash__(self):
        return hash((self.symmetry, self.a.tobytes(), self.b.tobytes()))

    def __repr__(self):
        return f"ClassicalGame(a={self.a.tolist()}, b={self.b.tolist()}, symmetry={self.symmetry.value})"


@dataclass(frozen=True, eq=False)
class PayoffOperatorPair:
    op_a: np.ndarray
    op_b: np.ndarray

    def diagonals(self) -> tuple[np.ndarray, np.ndarray]:
        return np.real(np.diag(self.op_a)).copy(), np.real(np.diag(self.op_b)).copy()

    def __eq__(self, other):
        if not isinstance(other, PayoffOperatorPair):
            return NotImplemented
        return np.array_equal(self.op_a, other.op_a) and np.array_equal(self.op_b, other.op_b)


@dataclass(frozen=True)
class GameInvariants:
    trace: float
    tau: float
    sigma_plus: float
    sigma_minus: float

    @property
    def sigma_product(self) -> float:
        return self.sigma_plus * self.sigma_minus


def quantize(g: ClassicalGame) -> PayoffOperatorPair:
    """Diagonal payoff operators with <ij|A|ij> = A_ij."""
    return PayoffOperatorPair(
        np.diag(g.a.ravel().astype(complex)),
        np.diag(g.b.ravel().astype(complex)),
    )


def check_symmetry(p: PayoffOperatorPair, tol: float = 1e-12) -> SymmetryCheck:
    s, t = swap_op(), twist_op()
    is_s = np.allclose(p.op_b, s @ p.op_a @ s, rtol=0.0, atol=tol)
    is_t = np.allclose(p.op_b, t @ p.op_a @ t, rtol=0.0, atol=tol)
    if is_s and is_t:
        return SymmetryCheck.BOTH
    if is_s:
        return SymmetryCheck.S
    if is_t:
        return SymmetryCheck.T
    return SymmetryCheck.NEITHER


def conversion_operator(which: Conversion) -> np.ndarray:
    ca, cb, c = conversion_ops()
    return {Conversion.ALICE: ca, Conversion.BOB: cb, Conversion.FULL: c}[Conversion(which)]


def dualize(p: PayoffOperatorPair, which: Conversion) -> PayoffOperatorPair:
    """Conjugate both payoff operators by the chosen conversion operator."""
    c = conversion_operator(which)
    return PayoffOperatorPair(c @ p.op_a @ c, c @ p.op_b @ c)


def dualize_game(g: ClassicalGame, which: Conversion = Conversion.ALICE) -> ClassicalGame:
    """The dual classical game; single-player conversions exchange S and T symmetry."""
    which = Conversion(which)
    a, b = dualize(quantize(g), which).diagonals()
    if g.symmetry is Symmetry.EXPLICIT or which is Conversion.FULL:
        symmetry = g.symmetry
    else:
        symmetry = Symmetry.T if g.symmetry is Symmetry.S else Symmetry.S
    return ClassicalGame(a.reshape(2, 2), b.reshape(2, 2), symmetry)


def t_symmetrize(g: ClassicalGame) -> ClassicalGame:
    """Return a T-symmetric game equivalent to ``g`` (Alice's conversion for S games)."""
    if g.symmetry is Symmetry.T:
        return g
    if g.symmetry is Symmetry.S:
        return dualize_game(g, Conversion.ALICE)
    raise ValueError("explicit games have no T-symmetric dual")


def dual_strategy_map(alpha: LocalStrategy, c: Correlation) -> tuple[LocalStrategy, Correlation]:
    """Alice's strategy and the correlation after Alice's conversion C_A.

    C_A |alpha, beta; gamma> = |alpha', beta; gamma'> with gamma' = (gamma2, gamma1)
    and alpha' the relabelled state, i.e. (theta, phi) -> (pi - theta, -phi) up to phase.
    """
    return alpha.bar(), c.swapped()


def invariants(g: ClassicalGame) -> GameInvariants:
    return g._invariants


def _compute_invariants(a_flat) -> GameInvariants:
    a00, a01, a10, a11 = a_flat
    # paired sums keep Tr invariant and tau sign-flipped exactly under relabelling
    diag, anti = a00 + a11, a01 + a10
    return GameInvariants(
        trace=diag + anti,
        tau=diag - anti,
        sigma_plus=(a00 - a11) + (a01 - a10),
        sigma_minus=(a00 - a11) - (a01 - a10),
    )


# -- game specification files -------------------------------------------------


def _parse_values(key: str, text: str, lineno: int) -> list[float]:
    parts = text.split()
    if len(parts) != 4:
        raise ParseError(f"line {lineno}: {key} needs 4 values, got {len(parts)}")
    try:
        values = [float(x) for x in parts]
    except ValueError as exc:
        raise ParseError(f"line {lineno}: {exc}") from None
    if not all(math.isfinite(v) for v in values):
        raise ParseError(f"line {lineno}: payoffs must be finite")
    return values


def parse_game(text: str) -> ClassicalGame:
    """Parse the ``key = value`` game format (keys A, B, symmetry; '#' comments)."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key = value'")
        if key not in ("A", "B", "symmetry"):
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)

    for key in ("A", "symmetry"):
        if key not in entries:
            raise ParseError(f"missing key {key!r}")
    sym_text, sym_line = entries["symmetry"]
    symmetry = {"S": Symmetry.S, "T": Symmetry.T, "explicit": Symmetry.EXPLICIT}.get(sym_text)
    if symmetry is None:
        raise ParseError(f"line {sym_line}: symmetry must be S, T or explicit, got {sym_text!r}")

    a = np.array(_parse_values("A", *entries["A"]))
    if symmetry is Symmetry.EXPLICIT:
        if "B" not in entries:
            raise ParseError("missing key 'B' (required for explicit symmetry)")
        return ClassicalGame.explicit(a, np.array(_parse_values("B", *entries["B"])))
    if "B" in entries:
        raise ParseError(f"line {entries['B'][1]}: B is only allowed with symmetry = explicit")
    if symmetry is Symmetry.S:
        return ClassicalGame.s_symmetric(a)
    return ClassicalGame.t_symmetric(a)


def load_game(path) -> ClassicalGame:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc})") from None
    return parse_game(text)


def format_game(g: ClassicalGame) -> str:
    def row(m):
        return " ".join(repr(float(x)) for x in m.ravel())

    lines = [f"A = {row(g.a)}", f"symmetry = {g.symmetry.value}"]
    if g.symmetry is Symmetry.EXPLICIT:
        lines.append(f"B = {row(g.b)}")
    return "\n".join(lines) + "\n"
