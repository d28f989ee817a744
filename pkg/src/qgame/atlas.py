"""The G'+ / G'- plane: dilemma domains, rectangles, phase classes and grid scans."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

from .equilibrium import (
    BOUNDARY_REL,
    DegenerateBranch,
    TauZero,
    edge_qne,
    nonedge_conditions,
    nonedge_qne,
    require_t_symmetric,
)
from .game import ClassicalGame, GameInvariants, invariants
from .hilbert import Correlation, TWO_PI
from .payoff import phase_coords
from .strategy import Edge


@dataclass(frozen=True)
class PhasePoint:
    gp_plus: float
    gp_minus: float


@dataclass(frozen=True)
class Rectangle:
    l_h: float
    l_v: float

    @property
    def half_extent(self) -> tuple[float, float]:
        return self.l_h / 2, self.l_v / 2

    def contains(self, p: PhasePoint, tol: float = 1e-12) -> bool:
        return abs(p.gp_plus) <= self.l_h / 2 + tol and abs(p.gp_minus) <= self.l_v / 2 + tol


class Domain(str, enum.Enum):
    BOS = "BoS"
    PD = "PD"
    SH = "SH"
    NO_DILEMMA_SINGLE = "NoDilemmaSingle"
    NO_DILEMMA_PAIR = "NoDilemmaPair"
    BOUNDARY = "Boundary"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class DomainLabel:
    """Domain of a point; ``edge`` names the equilibrium edge for PD and no-dilemma labels."""

    domain: Domain
    edge: Optional[Edge] = None

    def __str__(self):
        if self.domain in (Domain.NO_DILEMMA_SINGLE, Domain.NO_DILEMMA_PAIR):
            i, j = self.edge.ij
            return f"{self.domain.value}:{i}{j}"
        return self.domain.value


class Crossing(str, enum.Enum):
    INSIDE = "Inside"
    CORNERS_CUT = "CornersCut"
    EDGES_CUT = "EdgesCut"


@dataclass(frozen=True)
class PhaseClass:
    tau_sign: int
    crossing: Crossing
    orientation: Optional[int] = None  # sign(L_h - L_v), EdgesCut only

    def __str__(self):
        sign = "tau>0" if self.tau_sign > 0 else "tau<0"
        text = f"({sign}, {self.crossing.value}"
        if self.orientation is not None:
            text += ", L_h>L_v" if self.orientation > 0 else ", L_h<L_v"
        return text + ")"


class Region(str, enum.Enum):
    ALLOWED = "Allowed"
    EXCLUDED = "Excluded"
    BOUNDARY = "Boundary"


def to_phase_point(g: ClassicalGame, c: Correlation) -> PhasePoint:
    require_t_symmetric(g)
    pc = phase_coords(g, c)
    return PhasePoint(pc.gp_plus, pc.gp_minus)


def is_degenerate(inv: GameInvariants) -> bool:
    """tau = 0, or the rectangle collapses to the origin (sigma+ = sigma- = 0)."""
    ref = max(1.0, abs(inv.trace), abs(inv.sigma_plus), abs(inv.sigma_minus))
    if abs(inv.tau) <= 1e-12 * ref:
        return True
    return inv.sigma_plus == 0.0 and inv.sigma_minus == 0.0


def classify_point(inv: GameInvariants, p: PhasePoint) -> DomainLabel:
    """Dilemma domain of a point, decided from the edge-QNE set and dominance tests."""
    if is_degenerate(inv):
        return DomainLabel(Domain.DEGENERATE)
    s = p.gp_plus + p.gp_minus
    eps = BOUNDARY_REL * max(1.0, abs(inv.tau), abs(s))
    hp, hm = inv.tau + s, inv.tau - s
    if abs(hp) <= eps or abs(hm) <= eps:
        return DomainLabel(Domain.BOUNDARY)
    gm = p.gp_minus
    if hp > 0 and hm > 0:
        return DomainLabel(Domain.BOS)
    if hp < 0 and hm < 0:
        # |01> and |10>: |10> is payoff dominant iff G'- < 0, |01> risk dominant iff G'+ + G'- > 0
        if abs(gm) <= eps or abs(s) <= eps:
            return DomainLabel(Domain.BOUNDARY)
        if gm * s < 0:
            return DomainLabel(Domain.SH)
        return DomainLabel(Domain.NO_DILEMMA_PAIR, Edge.E10 if gm < 0 else Edge.E01)
    # single anti-diagonal equilibrium; it is Pareto-worse than the other one when
    # G'- < 0 for |01> and G'- > 0 for |10>
    edge = Edge.E01 if hm < 0 else Edge.E10
    if abs(gm) <= eps:
        return DomainLabel(Domain.BOUNDARY)
    worse = gm < 0 if edge is Edge.E01 else gm > 0
    if worse:
        return DomainLabel(Domain.PD, edge)
    return DomainLabel(Domain.NO_DILEMMA_SINGLE, edge)


def rectangle(g: ClassicalGame) -> Rectangle:
    a00, a01, a10, a11 = g.a_flat
    return Rectangle(2 * abs(a00 - a11), 2 * abs(a01 - a10))


def phase_class(g: ClassicalGame) -> PhaseClass:
    """Position of the game's rectangle relative to the lines H+ = 0 and H- = 0.

    A rectangle whose corners touch the lines counts as CornersCut.
    """
    inv = invariants(g)
    if abs(inv.tau) <= 1e-12 * g.scale:
        raise TauZero("phase class undefined for tau(A) = 0")
    rect = rectangle(g)
    tau = abs(inv.tau)
    half_sum = (rect.l_h + rect.l_v) / 2
    half_diff = abs(rect.l_h - rect.l_v) / 2
    eps = 1e-12 * g.scale
    sign = 1 if inv.tau > 0 else -1
    if half_sum < tau - eps:
        return PhaseClass(sign, Crossing.INSIDE)
    if tau < half_diff - eps:
        return PhaseClass(sign, Crossing.EDGES_CUT, 1 if rect.l_h > rect.l_v else -1)
    return PhaseClass(sign, Crossing.CORNERS_CUT)


def nonedge_region(g: ClassicalGame, p: PhasePoint, rel_tol: float = 1e-9) -> Region:
    """Whether the non-edge conditions Delta^2 >= 0 and (H+ + Delta)(H- + Delta) >= 0 hold.

    Points on the hyperbolae Delta = 0 count as Allowed when the second condition
    holds strictly (the classical-limit corner is such a point); Boundary marks
    the curves where the second product vanishes.
    """
    require_t_symmetric(g)
    eps2 = rel_tol * g.scale**2
    d2, h = nonedge_conditions(g, p.gp_plus, p.gp_minus)
    if d2 < -eps2 or h < -eps2:
        return Region.EXCLUDED
    if h <= eps2:
        return Region.BOUNDARY
    return Region.ALLOWED


def contact_points(g: ClassicalGame) -> tuple[PhasePoint, PhasePoint]:
    """Where the hyperbolae Delta = 0 touch the curves H+/- + Delta = 0."""
    inv = invariants(g)
    if inv.tau == 0.0:
        raise TauZero("contact points undefined for tau(A) = 0")
    t2, sp = inv.tau**2, inv.sigma_product
    x, y = (t2 + sp) / (2 * inv.tau), (t2 - sp) / (2 * inv.tau)
    return PhasePoint(-x, -y), PhasePoint(x, y)


def nonedge_boundary_curve(g: ClassicalGame, gp_minus: float, sign: int) -> float:
    """G'+ on the curve H_sign + Delta = 0 at the given G'-."""
    inv = invariants(g)
    return -gp_minus - (inv.tau**2 + inv.sigma_product) / (2 * (gp_minus + sign * inv.tau))


@dataclass(frozen=True)
class ScanRow:
    gamma1: float
    gamma2: float
    point: PhasePoint
    h_plus: float
    h_minus: float
    label: DomainLabel
    edge_mask: int
    nonedge: bool
    nonedge_payoff: Optional[float]


def scan_point(g: ClassicalGame, c: Correlation) -> ScanRow:
    inv = invariants(g)
    pc = phase_coords(g, c)
    point = PhasePoint(pc.gp_plus, pc.gp_minus)
    try:
        ne = nonedge_qne(g, c)
    except DegenerateBranch:
        ne = None
    return ScanRow(
        gamma1=c.gamma1,
        gamma2=c.gamma2,
        point=point,
        h_plus=pc.h_plus,
        h_minus=pc.h_minus,
        label=classify_point(inv, point),
        edge_mask=edge_qne(g, c).mask,
        nonedge=ne is not None,
        nonedge_payoff=None if ne is None else ne.payoff,
    )


def grid_gammas(resolution: int) -> list[float]:
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    return [TWO_PI * k / resolution for k in range(resolution)]


def grid_scan(g: ClassicalGame, resolution: int) -> Iterator[ScanRow]:
    """Rows over the uniform resolution x resolution grid of [0, 2pi)^2, gamma1-major."""
    require_t_symmetric(g)
    gammas = grid_gammas(resolution)
    for g1 in gammas:
        for g2 in gammas:
            yield scan_point(g, Correlation(g1, g2))
