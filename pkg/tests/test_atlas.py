import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import BOS, random_correlation, random_t_game
from qgame.atlas import (
    Crossing,
    Domain,
    DomainLabel,
    PhaseClass,
    PhasePoint,
    Rectangle,
    Region,
    classify_point,
    contact_points,
    grid_gammas,
    grid_scan,
    nonedge_boundary_curve,
    nonedge_region,
    phase_class,
    rectangle,
    to_phase_point,
)
from qgame.equilibrium import TauZero, nonedge_conditions, verify_qne_bruteforce
from qgame.game import ClassicalGame, Conversion, GameInvariants, dualize_game, invariants
from qgame.hilbert import Correlation
from qgame.payoff import payoff_operator, phase_coords
from qgame.strategy import Edge

SH_DUAL = ClassicalGame.t_symmetric((3, 3, 4, 0))
PD_DUAL = ClassicalGame.t_symmetric((5, 1, 3, 0))
BOS_G = ClassicalGame.t_symmetric(BOS)


def test_phase_points():
    assert to_phase_point(SH_DUAL, Correlation(0, 0)) == PhasePoint(3, -1)
    p = to_phase_point(SH_DUAL, Correlation(math.pi / 2, 0))
    assert p.gp_plus == 3 and abs(p.gp_minus) < 1e-15
    p = to_phase_point(PD_DUAL, Correlation(math.pi / 2, math.pi / 2))
    assert abs(p.gp_plus) < 1e-15 and abs(p.gp_minus) < 1e-15


def test_classify_examples():
    assert classify_point(invariants(SH_DUAL), PhasePoint(3, -1)) == DomainLabel(Domain.SH)
    assert classify_point(invariants(PD_DUAL), PhasePoint(5, -2)) == DomainLabel(Domain.PD, Edge.E01)
    # tau > 0 with H+ < 0, H- > 0 and G'- > 0: the mirrored prisoners' dilemma
    inv = GameInvariants(trace=0.0, tau=1.0, sigma_plus=3.0, sigma_minus=7.0)
    assert classify_point(inv, PhasePoint(-5, 2)) == DomainLabel(Domain.PD, Edge.E10)
    assert str(DomainLabel(Domain.NO_DILEMMA_SINGLE, Edge.E01)) == "NoDilemmaSingle:01"
    assert classify_point(invariants(ClassicalGame.t_symmetric((1, 1, 1, 1))), PhasePoint(0, 0)).domain is Domain.DEGENERATE


def _oracle_label(g: ClassicalGame, c: Correlation) -> str:
    """Domain from the brute-force edge set and operator-form payoffs."""
    present = [e for e in Edge if verify_qne_bruteforce(g, c, e.strategies()).confirmed]
    pay = {e: payoff_operator(g, *e.strategies(), c) for e in Edge}

    def dominated(e):
        return any(
            pay[f][0] >= pay[e][0] and pay[f][1] >= pay[e][1] and pay[f] != pay[e] for f in Edge if f != e
        )

    if present == [Edge.E00, Edge.E11]:
        return "BoS"
    if len(present) == 1:
        e = present[0]
        return "PD" if dominated(e) else f"NoDilemmaSingle:{e.ij[0]}{e.ij[1]}"
    assert present == [Edge.E01, Edge.E10]
    payoff_best = Edge.E10 if pay[Edge.E10][0] > pay[Edge.E01][0] else Edge.E01
    # Harsanyi-Selten: larger product of unilateral deviation losses
    loss01 = (pay[Edge.E01][0] - pay[Edge.E11][0]) * (pay[Edge.E01][1] - pay[Edge.E00][1])
    loss10 = (pay[Edge.E10][0] - pay[Edge.E00][0]) * (pay[Edge.E10][1] - pay[Edge.E11][1])
    risk_best = Edge.E01 if loss01 > loss10 else Edge.E10
    if payoff_best is not risk_best:
        return "SH"
    return f"NoDilemmaPair:{payoff_best.ij[0]}{payoff_best.ij[1]}"


def test_classify_matches_bruteforce_oracle(rng):
    seen = set()
    checked = 0
    while checked < 300:
        g, c = random_t_game(rng), random_correlation(rng)
        pc = phase_coords(g, c)
        inv = invariants(g)
        margins = (pc.h_plus, pc.h_minus, pc.gp_minus, pc.ip_plus)
        if min(abs(x) for x in margins) < 1e-2:
            continue
        label = str(classify_point(inv, PhasePoint(pc.gp_plus, pc.gp_minus)))
        assert label == _oracle_label(g, c)
        seen.add(label.split(":")[0])
        checked += 1
    assert seen == {"BoS", "PD", "SH", "NoDilemmaSingle", "NoDilemmaPair"}


_mirror = {"PD": "PD", "SH": "SH", "BoS": "BoS", "Boundary": "Boundary", "Degenerate": "Degenerate"}


@given(
    st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10),
    st.floats(-10, 10), st.floats(-10, 10),
)
def test_classify_full_conversion_symmetry(a00, a01, a10, a11, x, y):
    g = ClassicalGame.t_symmetric((a00, a01, a10, a11))
    d = dualize_game(g, Conversion.FULL)
    la = str(classify_point(invariants(g), PhasePoint(x, y)))
    lb = str(classify_point(invariants(d), PhasePoint(-x, -y)))
    if ":" in la:
        kind, edge = la.split(":")
        assert lb == f"{kind}:{edge[::-1]}"
    else:
        assert lb == _mirror[la]


def test_rectangles():
    assert rectangle(BOS_G) == Rectangle(2, 0)
    assert rectangle(SH_DUAL) == Rectangle(6, 2)
    assert rectangle(ClassicalGame.t_symmetric((1, 1, 1, 1))) == Rectangle(0, 0)
    assert Rectangle(6, 2).contains(PhasePoint(3, -1))
    assert not Rectangle(6, 2).contains(PhasePoint(3.1, 0))


def test_phase_class_examples():
    assert phase_class(BOS_G) == PhaseClass(1, Crossing.INSIDE)
    assert phase_class(SH_DUAL) == PhaseClass(-1, Crossing.CORNERS_CUT)
    assert str(phase_class(SH_DUAL)) == "(tau<0, CornersCut)"
    assert phase_class(PD_DUAL) == PhaseClass(1, Crossing.EDGES_CUT, 1)
    with pytest.raises(TauZero):
        phase_class(ClassicalGame.t_symmetric((1, 2, 3, 4)))


def test_phase_class_agrees_with_rectangle_geometry(rng):
    # oracle: sample the rectangle's boundary and see which lines it crosses
    for _ in range(300):
        g = random_t_game(rng)
        tau = invariants(g).tau
        hx, hy = rectangle(g).half_extent
        corners = [sx * hx + sy * hy for sx in (-1, 1) for sy in (-1, 1)]
        pc = phase_class(g)
        s_max = hx + hy
        crosses = s_max > abs(tau)
        assert (pc.crossing is Crossing.INSIDE) == (not crosses)
        # EdgesCut: the line G'+ + G'- = |tau| passes between two opposite edges
        # without hitting a corner side, i.e. |tau| < |hx - hy|
        if pc.crossing is Crossing.EDGES_CUT:
            assert abs(tau) < abs(hx - hy)
            assert pc.orientation == (1 if hx > hy else -1)
        elif pc.crossing is Crossing.CORNERS_CUT:
            assert abs(hx - hy) <= abs(tau) <= s_max
        assert max(corners) == pytest.approx(s_max)


def test_nonedge_region_examples():
    assert nonedge_region(SH_DUAL, PhasePoint(3, -1)) is Region.ALLOWED
    for p in contact_points(SH_DUAL):
        assert nonedge_region(SH_DUAL, p) is Region.BOUNDARY
    assert contact_points(SH_DUAL) == (PhasePoint(3, 1), PhasePoint(-3, -1))


def test_prisoners_dilemma_has_no_allowed_points():
    hx, hy = rectangle(PD_DUAL).half_extent
    for x in np.linspace(-hx, hx, 81):
        for y in np.linspace(-hy, hy, 81):
            assert nonedge_region(PD_DUAL, PhasePoint(x, y)) is Region.EXCLUDED


def test_boundary_curve_is_where_the_product_vanishes():
    inv = invariants(SH_DUAL)
    for sign in (1, -1):
        for gm in (-0.9, -0.3, 0.2, 0.8):
            gp = nonedge_boundary_curve(SH_DUAL, gm, sign)
            d2, _ = nonedge_conditions(SH_DUAL, gp, gm)
            if d2 < 0:
                continue
            h = inv.tau + sign * (gp + gm)
            assert h + math.sqrt(d2) == pytest.approx(0, abs=1e-9)


def test_grid_scan_layout():
    rows = list(grid_scan(BOS_G, 2))
    assert len(rows) == 4
    assert (rows[0].gamma1, rows[0].gamma2) == (0, 0)
    assert (rows[1].gamma1, rows[1].gamma2) == (0, math.pi)
    assert grid_gammas(4) == [0, math.pi / 2, math.pi, 3 * math.pi / 2]
    with pytest.raises(ValueError):
        grid_gammas(1)
    with pytest.raises(ValueError):
        next(grid_scan(ClassicalGame.s_symmetric(BOS), 4))


def test_bos_scan():
    for row in grid_scan(BOS_G, 24):
        assert row.edge_mask == 9
        assert row.label.domain is Domain.BOS


def test_stag_hunt_scan_rows_respect_region():
    labels = set()
    for row in grid_scan(SH_DUAL, 128):
        labels.add(row.label.domain)
        if row.nonedge:
            assert nonedge_region(SH_DUAL, row.point) is not Region.EXCLUDED
    assert Domain.SH in labels
    assert labels & {Domain.NO_DILEMMA_PAIR, Domain.NO_DILEMMA_SINGLE}
