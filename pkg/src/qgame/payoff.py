"""Payoff evaluation: closed form, operator form, classical limit and decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import ClassicalGame, Symmetry, conversion_ops, invariants, quantize
from .hilbert import Correlation, correlation_unitary, expectation, swap_op, twist_op
from .strategy import LocalStrategy, product_state

PAYOFF_TOL = 1e-10


def payoff_tolerance(g: ClassicalGame, tol: float = PAYOFF_TOL) -> float:
    return tol * g.scale


@dataclass(frozen=True)
class PhaseCoords:
    g_plus: float
    g_minus: float
    gp_plus: float
    gp_minus: float
    i_plus: float
    i_minus: float
    ip_plus: float
    ip_minus: float
    h_plus: float
    h_minus: float


def phase_coords(g: ClassicalGame, c: Correlation) -> PhaseCoords:
    """The correlation-dependent scalars G, G', I, I' and H for Alice's matrix."""
    a00, a01, a10, a11 = g.a_flat
    tau = invariants(g).tau
    diag, off = a00 - a11, a01 - a10
    gpl = diag * math.sin(c.gamma2)
    gpl_p = diag * math.cos(c.gamma2)
    gmi = off * math.sin(c.gamma1)
    gmi_p = off * math.cos(c.gamma1)
    ip_plus = gpl_p + gmi_p
    return PhaseCoords(
        g_plus=gpl,
        g_minus=gmi,
        gp_plus=gpl_p,
        gp_minus=gmi_p,
        i_plus=gpl + gmi,
        i_minus=gpl - gmi,
        ip_plus=ip_plus,
        ip_minus=gpl_p - gmi_p,
        h_plus=tau + ip_plus,
        h_minus=tau - ip_plus,
    )


def closed_form_alice(a, theta_a, phi_a, theta_b, phi_b, gamma1, gamma2):
    """Alice's payoff from her 2x2 matrix ``a``; broadcasts over array arguments."""
    a00, a01, a10, a11 = (float(x) for x in np.ravel(a))
    trace = a00 + a01 + a10 + a11
    tau = a00 - a01 - a10 + a11
    gpl = (a00 - a11) * np.sin(gamma2)
    gpl_p = (a00 - a11) * np.cos(gamma2)
    gmi = (a01 - a10) * np.sin(gamma1)
    gmi_p = (a01 - a10) * np.cos(gamma1)
    ca, cb = np.cos(theta_a), np.cos(theta_b)
    ss = np.sin(theta_a) * np.sin(theta_b)
    return 0.25 * (
        trace
        + tau * ca * cb
        + (gpl_p + gmi_p) * ca
        + (gpl_p - gmi_p) * cb
        - (gpl + gmi) * ss * np.sin(phi_a) * np.cos(phi_b)
        - (gpl - gmi) * ss * np.cos(phi_a) * np.sin(phi_b)
    )


def _alice(g: ClassicalGame, alpha: LocalStrategy, beta: LocalStrategy, c: Correlation) -> float:
    return float(closed_form_alice(g.a, alpha.theta, alpha.phi, beta.theta, beta.phi, c.gamma1, c.gamma2))


def payoff_closed_form(
    g: ClassicalGame, alpha: LocalStrategy, beta: LocalStrategy, c: Correlation
) -> tuple[float, float]:
    """(Pi_A, Pi_B) with Bob's payoff taken from the game's declared symmetry.

    T-symmetric games use Pi_B(alpha, beta) = Pi_A(bar beta, bar alpha); S-symmetric
    ones use Pi_B(alpha, beta) = Pi_A(beta, alpha). Explicit games fall back to the
    operator expectation for Bob.
    """
    pa = _alice(g, alpha, beta, c)
    if g.symmetry is Symmetry.T:
        pb = _alice(g, beta.bar(), alpha.bar(), c)
    elif g.symmetry is Symmetry.S:
        pb = _alice(g, beta, alpha, c)
    else:
        pb = payoff_operator(g, alpha, beta, c)[1]
    return pa, pb


def joint_state(alpha: LocalStrategy, beta: LocalStrategy, c: Correlation) -> np.ndarray:
    """|alpha, beta; gamma> = J(gamma)|alpha>|beta>."""
    return correlation_unitary(c) @ product_state(alpha, beta)


def payoff_operator(
    g: ClassicalGame, alpha: LocalStrategy, beta: LocalStrategy, c: Correlation
) -> tuple[float, float]:
    """(Pi_A, Pi_B) as expectation values of the quantized payoff operators."""
    ops = quantize(g)
    psi = joint_state(alpha, beta, c)
    return expectation(psi, ops.op_a), expectation(psi, ops.op_b)


def payoff_classical_limit(g: ClassicalGame, x: float, y: float) -> tuple[float, float]:
    """Bilinear mixed-strategy payoffs; ``x``, ``y`` are the probabilities of strategy 1."""
    for p in (x, y):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability {p} outside [0, 1]")
    xv = np.array([1.0 - x, x])
    yv = np.array([1.0 - y, y])
    return float(xv @ g.a @ yv), float(xv @ g.b @ yv)


def correlated_operator(g: ClassicalGame, c: Correlation, player: str = "A") -> np.ndarray:
    """J^dagger M J for the chosen player's payoff operator M."""
    ops = quantize(g)
    m = ops.op_a if player == "A" else ops.op_b
    j = correlation_unitary(c)
    return j.conj().T @ m @ j


def decompose(g: ClassicalGame, c: Correlation, player: str = "A") -> tuple[np.ndarray, np.ndarray]:
    """Split J^dagger M J into its pseudo-classical (diagonal) and interference parts."""
    ops = quantize(g)
    m = ops.op_a if player == "A" else ops.op_b
    s, t = swap_op(), twist_op()
    full = conversion_ops()[2]
    c1 = math.cos(c.gamma1 / 2) ** 2
    c2 = math.cos(c.gamma2 / 2) ** 2
    s2 = math.sin(c.gamma2 / 2) ** 2
    pseudo = c1 * m + (c2 - c1) * (s @ m @ s) + s2 * (full @ m @ full)
    interference = 0.5j * math.sin(c.gamma1) * (m @ s - s @ m) + 0.5j * math.sin(c.gamma2) * (m @ t - t @ m)
    return pseudo, interference
