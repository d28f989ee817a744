import math

import numpy as np
import pytest

from conftest import BOS, random_correlation, random_t_game
from qgame.equilibrium import (
    DegenerateBranch,
    TauZero,
    best_response_gain,
    classical_mixed_ne,
    edge_payoff_interpolation,
    edge_payoffs,
    edge_qne,
    interior_qne_scan,
    is_t_fixed_point,
    nonedge_payoff,
    nonedge_qne,
    pareto_optimal_edges,
    verify_qne_bruteforce,
)
from qgame.game import ClassicalGame
from qgame.hilbert import Correlation
from qgame.payoff import payoff_closed_form, payoff_operator, phase_coords
from qgame.strategy import Edge, LocalStrategy

SH_DUAL = ClassicalGame.t_symmetric((3, 3, 4, 0))
PD_DUAL = ClassicalGame.t_symmetric((5, 1, 3, 0))
BOS_G = ClassicalGame.t_symmetric(BOS)
CL = Correlation(0, 0)


def test_edge_qne_stag_hunt_classical():
    rep = edge_qne(SH_DUAL, CL)
    assert rep.edges() == [Edge.E01, Edge.E10]
    assert rep.payoffs[Edge.E01] == (3, 3)
    assert rep.payoffs[Edge.E10] == (4, 4)
    assert rep.mask == Edge.E01.bit | Edge.E10.bit


def test_edge_qne_prisoners_dilemma_classical():
    assert edge_qne(PD_DUAL, CL).edges() == [Edge.E01]


def test_edge_qne_bos_everywhere(rng):
    for _ in range(200):
        assert edge_qne(BOS_G, random_correlation(rng)).edges() == [Edge.E00, Edge.E11]


def test_edge_qne_requires_t_symmetry():
    with pytest.raises(ValueError, match="T-symmetric"):
        edge_qne(ClassicalGame.s_symmetric((4, 0, 3, 3)), CL)


def test_edge_boundary_flags():
    # H+ = H- = 0 for a game with tau = 0 at gamma where I'+ = 0
    g = ClassicalGame.t_symmetric((1, 1, 1, 1))
    rep = edge_qne(g, CL)
    assert rep.edges() == []
    assert all(rep.boundary)


def test_edge_payoff_interpolation_examples():
    assert edge_payoff_interpolation(BOS_G, Edge.E00, Correlation(0.7, math.pi / 2)) == pytest.approx(1.5)
    assert edge_payoff_interpolation(SH_DUAL, Edge.E10, Correlation(math.pi / 2, 0)) == pytest.approx(3.5)
    assert edge_payoff_interpolation(SH_DUAL, Edge.E00, CL) == 3.0


def test_edge_payoffs_match_interpolation_and_closed_form(rng):
    for _ in range(300):
        g, c = random_t_game(rng), random_correlation(rng)
        table = edge_payoffs(g, c)
        for e in Edge:
            a, b = e.strategies()
            assert table[e] == pytest.approx(payoff_closed_form(g, a, b, c), abs=1e-12)
            assert table[e][0] == pytest.approx(edge_payoff_interpolation(g, e, c), abs=1e-12)


def test_edge_qne_matches_bruteforce(rng):
    checked = 0
    while checked < 60:
        g, c = random_t_game(rng), random_correlation(rng)
        pc = phase_coords(g, c)
        if min(abs(pc.h_plus), abs(pc.h_minus)) <= 1e-3:
            continue
        present = edge_qne(g, c).present
        for e in Edge:
            assert present[e] == verify_qne_bruteforce(g, c, e.strategies()).confirmed
        checked += 1


def test_pareto_optimal_edges():
    # at gamma = 0 the PD dual's four edges pay (5,0)-style pairs; |01> pays (1,1) and is dominated by |10> (3,3)
    assert Edge.E01 not in pareto_optimal_edges(PD_DUAL, CL)
    assert Edge.E10 in pareto_optimal_edges(PD_DUAL, CL)


def test_nonedge_stag_hunt_classical():
    ne = nonedge_qne(SH_DUAL, CL)
    assert ne is not None
    assert ne.payoff == pytest.approx(3.0, abs=1e-12)
    assert verify_qne_bruteforce(SH_DUAL, CL, (ne.alpha, ne.beta)).confirmed


def test_nonedge_absent_for_prisoners_dilemma():
    assert nonedge_qne(PD_DUAL, CL) is None


@pytest.mark.parametrize("gamma2", [0.0, math.pi])
def test_nonedge_bos_payoff_independent_of_gamma1(gamma2):
    payoffs = []
    for g1 in np.linspace(0, 2 * math.pi, 17)[:-1]:
        ne = nonedge_qne(BOS_G, Correlation(g1, gamma2))
        assert ne is not None
        payoffs.append(ne.payoff)
    assert np.allclose(payoffs, 2 / 3, atol=1e-12)


def test_degenerate_branch():
    # BoS has A01 = A10, so G- = 0 while G+ = sin(gamma2) (A00 - A11) does not vanish
    with pytest.raises(DegenerateBranch):
        nonedge_qne(BOS_G, Correlation(0.3, 1.0))


def test_nonedge_solutions_are_equilibria(rng):
    found = 0
    while found < 40:
        g, c = random_t_game(rng), random_correlation(rng)
        try:
            ne = nonedge_qne(g, c)
        except DegenerateBranch:
            continue
        if ne is None:
            continue
        found += 1
        pa, pb = payoff_operator(g, ne.alpha, ne.beta, c)
        assert pa == pytest.approx(ne.payoff, abs=1e-9)
        assert pb == pytest.approx(ne.payoff, abs=1e-9)
        assert ne.payoff == pytest.approx(nonedge_payoff(g, ne.delta), abs=1e-12)
        assert max(best_response_gain(g, c, ne.alpha, ne.beta)) < 1e-8 * g.scale
        assert is_t_fixed_point(ne.alpha, ne.beta)


def test_classical_mixed_ne_examples():
    assert classical_mixed_ne(BOS_G).payoff == pytest.approx(2 / 3)
    assert classical_mixed_ne(SH_DUAL).payoff == pytest.approx(3.0)
    assert classical_mixed_ne(PD_DUAL) is None
    with pytest.raises(TauZero):
        classical_mixed_ne(ClassicalGame.t_symmetric((1, 1, 1, 1)))


def test_classical_mixed_ne_is_indifference_point(rng):
    for _ in range(200):
        g = random_t_game(rng)
        ne = classical_mixed_ne(g)
        if ne is None:
            continue
        x, y = ne.prob_alice, ne.prob_bob
        a, b = g.a, g.b
        yv = np.array([1 - y, y])
        xv = np.array([1 - x, x])
        assert (a @ yv)[0] == pytest.approx((a @ yv)[1], abs=1e-9)
        assert (xv @ b)[0] == pytest.approx((xv @ b)[1], abs=1e-9)
        assert ne.payoff == pytest.approx(xv @ a @ yv, abs=1e-9)


def test_verifier_examples():
    v = verify_qne_bruteforce(SH_DUAL, CL, (LocalStrategy.pure(1), LocalStrategy.pure(0)), 64, 1e-7)
    assert v.confirmed and str(v) == "Confirmed"
    v = verify_qne_bruteforce(SH_DUAL, CL, (LocalStrategy.pure(0), LocalStrategy.pure(0)), 64, 1e-7)
    assert not v.confirmed and "Refuted" in str(v)
    # Alice gains 1 by moving to |1>; the verdict names the larger gain (Bob's 3)
    zero, one = LocalStrategy.pure(0), LocalStrategy.pure(1)
    assert best_response_gain(SH_DUAL, CL, zero, zero) == pytest.approx((1.0, 3.0), abs=1e-12)
    assert payoff_closed_form(SH_DUAL, one, zero, CL)[0] - payoff_closed_form(SH_DUAL, zero, zero, CL)[0] == 1.0
    assert v.player == "B" and v.gain == pytest.approx(3.0) and v.witness.theta == pytest.approx(math.pi)
    const = ClassicalGame.t_symmetric((2, 2, 2, 2))
    assert verify_qne_bruteforce(const, Correlation(1, 2), (LocalStrategy(0.4, 1.0), LocalStrategy(2.0))).confirmed
    with pytest.raises(ValueError):
        verify_qne_bruteforce(SH_DUAL, CL, (LocalStrategy(0), LocalStrategy(0)), grid_n=4)


def test_t_fixed_point():
    a = LocalStrategy(1.0, 0.4)
    assert is_t_fixed_point(a, a.bar())
    assert not is_t_fixed_point(a, a)


def test_off_ansatz_interior_equilibria_exist():
    # the stag hunt admits interior QNE that break the T-symmetric ansatz
    c = Correlation(1.2, 0.3)
    found = interior_qne_scan(SH_DUAL, c)
    assert any(not is_t_fixed_point(a, b) for a, b, _ in found)
    for a, b, _ in found:
        assert verify_qne_bruteforce(SH_DUAL, c, (a, b)).confirmed
