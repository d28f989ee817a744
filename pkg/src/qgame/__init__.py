"""Quantized 2x2 symmetric games under a two-parameter family of correlations."""

from .atlas import Domain, PhaseClass, classify_point, grid_scan, phase_class, rectangle
from .equilibrium import classical_mixed_ne, edge_qne, nonedge_qne, verify_qne_bruteforce
from .game import ClassicalGame, Conversion, Symmetry, dualize_game, invariants, load_game, parse_game, t_symmetrize
from .hilbert import Correlation
from .payoff import payoff_closed_form, payoff_operator
from .strategy import Edge, LocalStrategy

__version__ = "0.1.0"

__all__ = [
    "ClassicalGame",
    "Conversion",
    "Correlation",
    "Domain",
    "Edge",
    "LocalStrategy",
    "PhaseClass",
    "Symmetry",
    "classical_mixed_ne",
    "classify_point",
    "dualize_game",
    "edge_qne",
    "grid_scan",
    "invariants",
    "load_game",
    "nonedge_qne",
    "parse_game",
    "payoff_closed_form",
    "payoff_operator",
    "phase_class",
    "rectangle",
    "t_symmetrize",
    "verify_qne_bruteforce",
]
