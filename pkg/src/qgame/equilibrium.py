"""Quantum Nash equilibria of T-symmetric games.

Edge equilibria are read off from the signs of H+ and H-, the non-edge branch is
solved in closed form on the T-symmetric ansatz, and every candidate can be
checked against a brute-force best-response scan that works directly with the
correlated payoff operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .game import ClassicalGame, Symmetry, invariants
from .hilbert import Correlation, TWO_PI, states_equal, twist_op
from .payoff import correlated_operator, phase_coords
from .strategy import Edge, LocalStrategy, product_state

#: Relative width of the band around H = 0 inside which signs are not trusted.
BOUNDARY_REL = 1e-9


class DegenerateBranch(ValueError):
    """G- vanishes while G+ does not, so the non-edge branch has no solution."""


class TauZero(ValueError):
    """The alternate trace vanishes."""


def require_t_symmetric(g: ClassicalGame) -> None:
    if g.symmetry is not Symmetry.T:
        raise ValueError(
            f"expected a T-symmetric game, got symmetry={g.symmetry.value}; dualize S-symmetric games first"
        )


def boundary_band(g: ClassicalGame, c: Correlation) -> float:
    pc = phase_coords(g, c)
    return BOUNDARY_REL * max(1.0, abs(invariants(g).tau), abs(pc.ip_plus))


# -- edge strategies ----------------------------------------------------------


def edge_payoffs(g: ClassicalGame, c: Correlation) -> dict[Edge, tuple[float, float]]:
    """(Pi_A, Pi_B) at the four edges of a T-symmetric game."""
    require_t_symmetric(g)
    inv = invariants(g)
    pc = phase_coords(g, c)
    alice = {
        Edge.E00: (inv.trace + inv.tau + 2 * pc.gp_plus) / 4,
        Edge.E01: (inv.trace - inv.tau + 2 * pc.gp_minus) / 4,
        Edge.E10: (inv.trace - inv.tau - 2 * pc.gp_minus) / 4,
        Edge.E11: (inv.trace + inv.tau - 2 * pc.gp_plus) / 4,
    }
    # Bob at |ij> receives Alice's payoff at |1-j, 1-i>.
    bob_source = {Edge.E00: Edge.E11, Edge.E01: Edge.E01, Edge.E10: Edge.E10, Edge.E11: Edge.E00}
    return {e: (alice[e], alice[bob_source[e]]) for e in Edge}


@dataclass(frozen=True)
class EdgeQneReport:
    present: tuple[bool, bool, bool, bool]
    payoffs: tuple[Optional[tuple[float, float]], ...]
    boundary: tuple[bool, bool, bool, bool]

    def edges(self) -> list[Edge]:
        return [e for e in Edge if self.present[e]]

    @property
    def mask(self) -> int:
        return sum(e.bit for e in Edge if self.present[e])


def edge_qne(g: ClassicalGame, c: Correlation) -> EdgeQneReport:
    """Which edges |ij> are QNE, from the signs of H+ and H-."""
    require_t_symmetric(g)
    pc = phase_coords(g, c)
    eps = boundary_band(g, c)
    hp, hm = pc.h_plus, pc.h_minus

    def positive(h):
        return h > eps

    def negative(h):
        return h < -eps

    def near(h):
        return abs(h) <= eps

    diag_present = positive(hp) and positive(hm)
    diag_boundary = not diag_present and not negative(hp) and not negative(hm)
    present = (diag_present, negative(hm), negative(hp), diag_present)
    boundary = (diag_boundary, near(hm), near(hp), diag_boundary)
    table = edge_payoffs(g, c)
    payoffs = tuple(table[e] if (present[e] or boundary[e]) else None for e in Edge)
    return EdgeQneReport(present, payoffs, boundary)


def edge_payoff_interpolation(g: ClassicalGame, edge: Edge, c: Correlation) -> float:
    """Alice's edge payoff as an interpolation between two classical entries.

    Diagonal edges |ii> mix A_ii and A_{1-i,1-i} with weight cos^2(gamma2/2);
    anti-diagonal edges |i,1-i> mix A_{i,1-i} and A_{1-i,i} with weight cos^2(gamma1/2).
    """
    edge = Edge(edge)
    i, j = edge.ij
    a = g.a
    if i == j:
        w = math.cos(c.gamma2 / 2) ** 2
    else:
        w = math.cos(c.gamma1 / 2) ** 2
    return w * float(a[i, j]) + (1.0 - w) * float(a[1 - i, 1 - j])


def pareto_optimal_edges(g: ClassicalGame, c: Correlation, tol: float = 0.0) -> set[Edge]:
    """Edges whose payoff pair is not dominated by any other edge's pair."""
    table = edge_payoffs(g, c)
    result = set()
    for e, (pa, pb) in table.items():
        dominated = any(
            qa >= pa - tol and qb >= pb - tol and (qa > pa + tol or qb > pb + tol)
            for f, (qa, qb) in table.items()
            if f != e
        )
        if not dominated:
            result.add(e)
    return result


# -- non-edge branch ----------------------------------------------------------


@dataclass(frozen=True)
class NonEdgeQne:
    alpha: LocalStrategy
    beta: LocalStrategy
    payoff: float
    delta: float


def nonedge_payoff(g: ClassicalGame, delta: float) -> float:
    """Common payoff (Tr + (tau*Delta - sigma+ sigma-)/(tau + Delta)) / 4."""
    inv = invariants(g)
    return 0.25 * (inv.trace + (inv.tau * delta - inv.sigma_product) / (inv.tau + delta))


def nonedge_conditions(g: ClassicalGame, gp_plus: float, gp_minus: float) -> tuple[float, float]:
    """(Delta^2, (H+ + Delta)(H- + Delta)) at a point of the G'+/G'- plane."""
    inv = invariants(g)
    d2 = gp_plus**2 - gp_minus**2 - inv.sigma_product
    delta = math.sqrt(max(d2, 0.0))
    ip = gp_plus + gp_minus
    return d2, (inv.tau + ip + delta) * (inv.tau - ip + delta)


def nonedge_qne(g: ClassicalGame, c: Correlation, rel_tol: float = 1e-9) -> Optional[NonEdgeQne]:
    """The T-symmetric non-edge QNE at ``c``, or None when the branch has no solution.

    Raises DegenerateBranch when G- = 0 but G+ != 0.
    """
    require_t_symmetric(g)
    inv = invariants(g)
    pc = phase_coords(g, c)
    eps = rel_tol * g.scale
    eps2 = rel_tol * g.scale**2

    if abs(pc.g_minus) <= eps:
        if abs(pc.g_plus) > eps:
            raise DegenerateBranch(f"G- = {pc.g_minus:.3e} with G+ = {pc.g_plus:.3e}")
        # phase unconstrained: take the representative with sin(2*alpha2) = 0
        two_alpha2, delta = 0.0, 0.0
        denom = inv.tau
    else:
        d2 = pc.g_minus**2 - pc.g_plus**2
        if d2 < -eps2:
            return None
        delta = math.sqrt(max(d2, 0.0))
        cos2 = min(1.0, max(-1.0, -pc.g_plus / pc.g_minus))
        sin2 = -math.copysign(math.sqrt(max(0.0, 1.0 - cos2 * cos2)), pc.g_minus)
        two_alpha2 = math.atan2(sin2, cos2)
        denom = inv.tau - pc.g_minus * sin2

    if abs(denom) <= eps:
        return None
    if (pc.h_plus + delta) * (pc.h_minus + delta) < -eps2:
        return None
    ratio = pc.ip_plus / denom
    if abs(ratio) > 1.0 + rel_tol:
        return None
    alpha = LocalStrategy(math.acos(min(1.0, max(-1.0, ratio))), two_alpha2 / 2)
    beta = alpha.bar()
    return NonEdgeQne(alpha, beta, nonedge_payoff(g, delta), delta)


def is_t_fixed_point(alpha: LocalStrategy, beta: LocalStrategy) -> bool:
    """Whether |alpha, beta> is invariant under the twist up to a global phase.

    T commutes with J(gamma), so this also decides it for the correlated state.
    """
    psi = product_state(alpha, beta)
    return states_equal(twist_op() @ psi, psi)


class MixedNE(NamedTuple):
    prob_alice: float
    prob_bob: float
    payoff: float


def classical_mixed_ne(g: ClassicalGame, rel_tol: float = 1e-12) -> Optional[MixedNE]:
    """Interior mixed NE of the classical T-symmetric game.

    ``prob_alice`` / ``prob_bob`` are the probabilities of strategy 1; they satisfy
    prob_bob = 1 - prob_alice. None when |sigma+| > |tau|.
    """
    require_t_symmetric(g)
    inv = invariants(g)
    if abs(inv.tau) <= rel_tol * g.scale:
        raise TauZero("tau(A) = 0: no isolated mixed equilibrium")
    if abs(inv.sigma_plus) > abs(inv.tau) + rel_tol * g.scale:
        return None
    a00, a01, a10, a11 = g.a_flat
    x1 = min(1.0, max(0.0, (a11 - a01) / inv.tau))
    payoff = (a00 * a11 - a01 * a10) / inv.tau
    return MixedNE(x1, 1.0 - x1, payoff)


# -- brute-force verification -------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    confirmed: bool
    player: Optional[str] = None
    witness: Optional[LocalStrategy] = None
    gain: float = 0.0

    def __str__(self):
        if self.confirmed:
            return "Confirmed"
        return f"Refuted ({self.player} gains {self.gain:.3g} at theta={self.witness.theta:.6g}, phi={self.witness.phi:.6g})"


def _reduced(m: np.ndarray, fixed: np.ndarray, player: str) -> np.ndarray:
    """2x2 operator seen by ``player`` when the other player's state is ``fixed``."""
    t = m.reshape(2, 2, 2, 2)  # [a, b, a', b']
    if player == "A":
        return np.einsum("b,abcd,d->ac", fixed.conj(), t, fixed)
    return np.einsum("a,abcd,c->bd", fixed.conj(), t, fixed)


def _quadratic(r: np.ndarray, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    u0 = np.cos(theta / 2)
    u1 = np.sin(theta / 2) * np.exp(1j * phi)
    val = (
        r[0, 0] * u0 * u0
        + r[1, 1] * np.abs(u1) ** 2
        + 2.0 * np.real(r[0, 1] * u0 * u1)
    )
    return np.real(val)


def _best_deviation(r: np.ndarray, grid_n: int, refine: bool) -> tuple[float, float, float]:
    thetas = np.linspace(0.0, math.pi, grid_n)
    phis = np.arange(grid_n) * (TWO_PI / grid_n)
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    values = _quadratic(r, th, ph)
    k = int(np.argmax(values))
    best = (float(values.flat[k]), float(th.flat[k]), float(ph.flat[k]))
    if refine:
        dth, dph = math.pi / (grid_n - 1), TWO_PI / grid_n
        offsets = np.arange(-3, 4) / 3.0
        lt = np.clip(best[1] + offsets * dth, 0.0, math.pi)
        lp = best[2] + offsets * dph
        th2, ph2 = np.meshgrid(lt, lp, indexing="ij")
        local = _quadratic(r, th2, ph2)
        k2 = int(np.argmax(local))
        if local.flat[k2] > best[0]:
            best = (float(local.flat[k2]), float(th2.flat[k2]), float(ph2.flat[k2]))
    return best


def verify_qne_bruteforce(
    g: ClassicalGame,
    c: Correlation,
    candidate: tuple[LocalStrategy, LocalStrategy],
    grid_n: int = 64,
    tol: float = 1e-7,
    refine: bool = True,
) -> Verdict:
    """Scan unilateral deviations of each player on a grid_n x grid_n (theta, phi) grid."""
    if grid_n < 8:
        raise ValueError("grid_n must be at least 8")
    alpha, beta = candidate
    ma = correlated_operator(g, c, "A")
    mb = correlated_operator(g, c, "B")
    a_amp, b_amp = alpha.amplitudes(), beta.amplitudes()

    worst = Verdict(True)
    for player, m, own, other in (("A", ma, alpha, b_amp), ("B", mb, beta, a_amp)):
        r = _reduced(m, other, player)
        base = float(_quadratic(r, np.array(own.theta), np.array(own.phi)))
        value, th, ph = _best_deviation(r, grid_n, refine)
        gain = value - base
        if gain > tol and (worst.confirmed or gain > worst.gain):
            worst = Verdict(False, player, LocalStrategy(th, ph), gain)
    return worst


def best_response_gain(g: ClassicalGame, c: Correlation, alpha: LocalStrategy, beta: LocalStrategy) -> tuple[float, float]:
    """Exact best-response gains (top eigenvalue minus current payoff) for both players."""
    ma = correlated_operator(g, c, "A")
    mb = correlated_operator(g, c, "B")
    gains = []
    for player, m, own, other in (("A", ma, alpha, beta), ("B", mb, beta, alpha)):
        r = _reduced(m, other.amplitudes(), player)
        top = float(np.linalg.eigvalsh((r + r.conj().T) / 2)[-1])
        gains.append(top - float(_quadratic(r, np.array(own.theta), np.array(own.phi))))
    return gains[0], gains[1]


def interior_qne_scan(
    g: ClassicalGame,
    c: Correlation,
    grid_n: int = 14,
    zoom_steps: int = 30,
    tol: float = 1e-9,
    max_seeds: int = 12,
) -> list[tuple[LocalStrategy, LocalStrategy, float]]:
    """Diagnostic search for interior QNE without the T-symmetric ansatz.

    Minimizes the summed exact best-response gains of both players over a
    4-angle grid of interior strategies, polishes the lowest seeds by zooming,
    and keeps points whose residual falls below ``tol * scale``.
    Returns (alpha, beta, residual) triples.
    """
    t_a = correlated_operator(g, c, "A").reshape(2, 2, 2, 2)
    t_b = correlated_operator(g, c, "B").reshape(2, 2, 2, 2)

    def amps(theta, phi):
        return np.stack([np.cos(theta / 2), np.sin(theta / 2) * np.exp(1j * phi)], axis=-1)

    def residual(ua, ub):
        # ua, ub: (n, 2) amplitudes paired row by row
        ra = np.einsum("kb,abcd,kd->kac", ub.conj(), t_a, ub)
        rb = np.einsum("ka,abcd,kc->kbd", ua.conj(), t_b, ua)
        ga = np.linalg.eigvalsh(ra)[:, -1] - np.einsum("ka,kac,kc->k", ua.conj(), ra, ua).real
        gb = np.linalg.eigvalsh(rb)[:, -1] - np.einsum("kb,kbd,kd->k", ub.conj(), rb, ub).real
        return ga + gb

    thetas = np.linspace(0.0, math.pi, grid_n + 2)[1:-1]
    phis = np.arange(grid_n) * (TWO_PI / grid_n)
    pts = np.array(np.meshgrid(thetas, phis, thetas, phis, indexing="ij")).reshape(4, -1).T
    values = residual(amps(pts[:, 0], pts[:, 1]), amps(pts[:, 2], pts[:, 3]))

    # Seeds are strict-interior local minima: the residual is only quadratic near
    # edge equilibria, so the global lowest grid values would all drift to edges.
    cube = values.reshape((grid_n,) * 4)
    padded = np.pad(cube, ((1, 1), (0, 0), (1, 1), (0, 0)), constant_values=np.inf)
    is_min = np.ones_like(cube, dtype=bool)
    for shift in np.ndindex(3, 3, 3, 3):
        d = np.array(shift) - 1
        if not d.any():
            continue
        moved = np.roll(padded, tuple(-d), axis=(0, 1, 2, 3))[1:-1, :, 1:-1, :]
        is_min &= cube <= moved
    is_min[[0, -1], :, :, :] = False
    is_min[:, :, [0, -1], :] = False
    candidates = np.flatnonzero(is_min.ravel())
    order = candidates[np.argsort(values[candidates], kind="stable")]

    steps0 = np.array([thetas[1] - thetas[0], phis[1] - phis[0]] * 2)
    offsets = np.array(np.meshgrid(*[np.linspace(-1, 1, 5)] * 4, indexing="ij")).reshape(4, -1).T
    found: list[tuple[LocalStrategy, LocalStrategy, float]] = []
    for k in order[:max_seeds]:
        x, best, h = pts[k].copy(), float(values[k]), steps0.copy()
        for _ in range(zoom_steps):
            trial = x + offsets * h
            trial[:, 0] = np.clip(trial[:, 0], 1e-9, math.pi - 1e-9)
            trial[:, 2] = np.clip(trial[:, 2], 1e-9, math.pi - 1e-9)
            vals = residual(amps(trial[:, 0], trial[:, 1]), amps(trial[:, 2], trial[:, 3]))
            j = int(np.argmin(vals))
            if vals[j] < best:
                x, best = trial[j], float(vals[j])
            h = h / 3
        if best > tol * g.scale:
            continue
        alpha = LocalStrategy.from_angles(x[0], x[1])
        beta = LocalStrategy.from_angles(x[2], x[3])
        if min(math.sin(alpha.theta), math.sin(beta.theta)) < 1e-6:
            continue
        psi = product_state(alpha, beta)
        if any(states_equal(psi, product_state(a, b), 1e-6) for a, b, _ in found):
            continue
        found.append((alpha, beta, best))
    return found
