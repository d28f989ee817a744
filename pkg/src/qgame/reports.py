"""Dilemma analyses for the Battle of the Sexes, Prisoners' Dilemma and Stag Hunt."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .atlas import (
    Domain,
    Region,
    contact_points,
    grid_scan,
    nonedge_region,
    phase_class,
    rectangle,
    to_phase_point,
)
from .equilibrium import (
    DegenerateBranch,
    Verdict,
    edge_payoffs,
    edge_qne,
    nonedge_qne,
    pareto_optimal_edges,
    verify_qne_bruteforce,
)
from .game import ClassicalGame, invariants, t_symmetrize
from .hilbert import Correlation
from .payoff import payoff_closed_form
from .strategy import Edge, LocalStrategy

DEFAULT_VALUES = {
    "bos": (2.0, 0.0, 0.0, 1.0),
    "pd": (3.0, 0.0, 5.0, 1.0),
    "sh": (4.0, 0.0, 3.0, 3.0),
}


class ConstraintViolation(ValueError):
    """Payoffs do not satisfy the inequalities that define the named game."""


def fmt(x: float) -> str:
    """12 significant digits; round-off below 1e-12 prints as 0."""
    if abs(x) < 1e-12:
        x = 0.0
    return format(x + 0.0, ".12g")


def _check(condition: bool, name: str, values) -> None:
    if not condition:
        a00, a01, a10, a11 = values
        raise ConstraintViolation(
            f"{name} violated for A00={fmt(a00)}, A01={fmt(a01)}, A10={fmt(a10)}, A11={fmt(a11)}"
        )


def validate(which: str, values) -> None:
    a00, a01, a10, a11 = values
    if which == "bos":
        _check(a00 > a11 > a01 and a01 == a10, "A00 > A11 > A01 = A10", values)
    elif which == "pd":
        _check(a10 > a00 > a11 > a01, "A10 > A00 > A11 > A01", values)
        _check(2 * a00 > a01 + a10 > 2 * a11, "2*A00 > A01 + A10 > 2*A11", values)
    elif which == "sh":
        _check(a00 > a10 >= a11 > a01, "A00 > A10 >= A11 > A01", values)
    else:
        raise ValueError(f"unknown report {which!r}")


def _safe_nonedge(g, c):
    try:
        return nonedge_qne(g, c)
    except DegenerateBranch:
        return None


@dataclass
class Equilibrium:
    kind: str
    alpha: LocalStrategy
    beta: LocalStrategy
    payoffs: tuple[float, float]
    verdict: Verdict
    edge: Optional[Edge] = None


def verified_equilibria(g: ClassicalGame, c: Correlation, grid_n: int = 64, tol: float = 1e-7) -> list[Equilibrium]:
    """Edge and non-edge QNE at ``c`` with their brute-force verdicts."""
    found = []
    report = edge_qne(g, c)
    for e in report.edges():
        a, b = e.strategies()
        found.append(Equilibrium("edge", a, b, report.payoffs[e], verify_qne_bruteforce(g, c, (a, b), grid_n, tol), e))
    ne = _safe_nonedge(g, c)
    if ne is not None:
        verdict = verify_qne_bruteforce(g, c, (ne.alpha, ne.beta), grid_n, tol)
        found.append(Equilibrium("non-edge", ne.alpha, ne.beta, (ne.payoff, ne.payoff), verdict))
    return found


@dataclass
class DilemmaReport:
    which: str
    values: tuple[float, float, float, float]
    game: ClassicalGame
    verdict: str
    data: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _header(which: str, values, g: ClassicalGame) -> list[str]:
    inv = invariants(g)
    rect = rectangle(g)
    lines = [
        f"report: {which}",
        "classical A (A00 A01 A10 A11): " + " ".join(fmt(v) for v in values),
    ]
    if which != "bos":
        lines.append("T-symmetric dual A (A00 A01 A10 A11): " + " ".join(fmt(v) for v in g.a_flat))
    lines += [
        f"Tr = {fmt(inv.trace)}  tau = {fmt(inv.tau)}  sigma+ = {fmt(inv.sigma_plus)}  sigma- = {fmt(inv.sigma_minus)}",
        f"rectangle: L_h = {fmt(rect.l_h)}  L_v = {fmt(rect.l_v)}",
        f"phase class: {phase_class(g)}",
    ]
    return lines


def bos_report(values=DEFAULT_VALUES["bos"], resolution: int = 64) -> DilemmaReport:
    values = tuple(float(v) for v in values)
    validate("bos", values)
    g = ClassicalGame.t_symmetric(values)
    a00, _, _, a11 = values
    lines = _header("bos", values, g)

    rows = list(grid_scan(g, resolution))
    all_pair = all(r.edge_mask == (Edge.E00.bit | Edge.E11.bit) for r in rows)
    all_bos = all(r.label.domain is Domain.BOS for r in rows)
    ne_rows = [r for r in rows if r.nonedge]
    ne_gamma2 = sorted({round(r.gamma2, 12) for r in ne_rows})
    ne_payoffs = [r.nonedge_payoff for r in ne_rows]
    ne_max = max(ne_payoffs) if ne_payoffs else None

    me = Correlation(0.0, math.pi / 2)
    me_pay = edge_payoffs(g, me)
    ne_cl = _safe_nonedge(g, Correlation(0.0, 0.0))

    resolved = not (all_pair and all_bos)
    data = {
        "edge_qne_always_00_11": all_pair,
        "domain_always_bos": all_bos,
        "nonedge_gamma2": ne_gamma2,
        "nonedge_payoff_max": ne_max,
        "nonedge_payoff_min": min(ne_payoffs) if ne_payoffs else None,
        "me_edge_payoffs": {e.ket: me_pay[e] for e in (Edge.E00, Edge.E11)},
        "classical_nonedge": ne_cl,
        "scanned": len(rows),
    }
    lines += [
        f"scan: {len(rows)} correlations ({resolution} x {resolution})",
        f"edge QNE exactly {{|00>, |11>}} at every scanned gamma: {'yes' if all_pair else 'no'}",
        f"every scanned point in the BoS domain: {'yes' if all_bos else 'no'}",
        "non-edge QNE found only at gamma2 = " + ", ".join(fmt(x) for x in ne_gamma2),
    ]
    if ne_max is not None:
        lines.append(
            f"non-edge payoff {fmt(ne_max)} (independent of gamma1) < A11 = {fmt(a11)}: "
            + ("yes" if ne_max < a11 else "no")
        )
    lines.append(
        f"at gamma2 = pi/2 the edge payoffs coincide: |00> {fmt(me_pay[Edge.E00][0])}, "
        f"|11> {fmt(me_pay[Edge.E11][0])} = (A00 + A11)/2 = {fmt((a00 + a11) / 2)}"
    )
    if resolved:
        summary = "dilemma-free correlations exist"
    else:
        summary = "unresolved for all gamma"
        if ne_max is not None and ne_max < a11:
            summary = f"unresolved; non-edge payoff {fmt(ne_max)} < A11 = {fmt(a11)} for all gamma"
    lines.append("verdict: " + summary)
    return DilemmaReport("bos", values, g, "unresolved" if not resolved else "resolved", data, lines)


def pd_report(values=DEFAULT_VALUES["pd"], resolution: int = 128) -> DilemmaReport:
    values = tuple(float(v) for v in values)
    validate("pd", values)
    g = t_symmetrize(ClassicalGame.s_symmetric(values))
    lines = _header("pd", values, g)

    free = []
    nonedge_points = 0
    nonedge_present = 0
    labels = Counter()
    for r in grid_scan(g, resolution):
        labels[str(r.label)] += 1
        c = Correlation(r.gamma1, r.gamma2)
        if r.label.domain is Domain.NO_DILEMMA_SINGLE:
            sole = edge_qne(g, c).edges()
            if len(sole) == 1 and sole[0] in pareto_optimal_edges(g, c):
                free.append((r.gamma1, r.gamma2, sole[0]))
        if nonedge_region(g, r.point) is not Region.EXCLUDED:
            nonedge_points += 1
        nonedge_present += r.nonedge

    cl = Correlation(0.0, 0.0)
    cl_edges = edge_qne(g, cl).edges()
    data = {
        "dilemma_free": free,
        "nonedge_region_points": nonedge_points,
        "nonedge_present": nonedge_present,
        "labels": dict(labels),
        "classical_edges": cl_edges,
        "scanned": resolution * resolution,
    }
    lines += [
        "classical limit edge QNE: " + ", ".join(e.ket for e in cl_edges),
        f"scan: {resolution * resolution} correlations ({resolution} x {resolution})",
        "domains visited: " + ", ".join(f"{k} ({v})" for k, v in sorted(labels.items())),
        f"correlations with a sole, Pareto-optimal edge QNE: {len(free)}",
    ]
    if free:
        g1, g2, e = free[0]
        lines.append(f"  e.g. gamma = ({fmt(g1)}, {fmt(g2)}) with sole QNE {e.ket}")
    lines.append(f"points satisfying both non-edge conditions: {nonedge_points}")
    if nonedge_points == 0 and nonedge_present == 0:
        summary = "no non-edge QNE anywhere"
    else:
        summary = f"non-edge QNE at {nonedge_present} scanned correlations"
    summary += "; dilemma-free correlations exist" if free else "; no dilemma-free correlation found"
    lines.append("verdict: " + summary)
    return DilemmaReport("pd", values, g, "resolved" if free else "unresolved", data, lines)


def payoff_table(g: ClassicalGame, c: Correlation) -> tuple[list[list[tuple[float, float]]], Optional[object]]:
    """3x3 payoff bi-matrix: rows Alice |0>, |1>, alpha_ne; columns Bob |0>, |1>, beta_ne."""
    ne = _safe_nonedge(g, c)
    alices = [LocalStrategy.pure(0), LocalStrategy.pure(1)]
    bobs = [LocalStrategy.pure(0), LocalStrategy.pure(1)]
    if ne is not None:
        alices.append(ne.alpha)
        bobs.append(ne.beta)
    table = [[payoff_closed_form(g, a, b, c) for b in bobs] for a in alices]
    return table, ne


def _render_table(name: str, table) -> list[str]:
    head = ["Alice \\ Bob", "|0>", "|1>", "|beta_ne>"][: len(table[0]) + 1]
    rows = [f"{name}:", "  " + " | ".join(head)]
    for label, row in zip(["|0>", "|1>", "|alpha_ne>"], table):
        rows.append("  " + " | ".join([label] + [f"({fmt(pa)}, {fmt(pb)})" for pa, pb in row]))
    return rows


def sh_report(values=DEFAULT_VALUES["sh"], resolution: int = 128) -> DilemmaReport:
    values = tuple(float(v) for v in values)
    validate("sh", values)
    g = t_symmetrize(ClassicalGame.s_symmetric(values))
    lines = _header("sh", values, g)

    labels = Counter()
    nonedge_rows = 0
    for r in grid_scan(g, resolution):
        labels[str(r.label)] += 1
        nonedge_rows += r.nonedge
    total = resolution * resolution
    resolved_points = sum(v for k, v in labels.items() if k.startswith("NoDilemma"))

    cl = Correlation(0.0, 0.0)
    me = Correlation(math.pi / 2, 0.0)
    cl_table, cl_ne = payoff_table(g, cl)
    me_table, me_ne = payoff_table(g, me)
    cl_point, me_point = to_phase_point(g, cl), to_phase_point(g, me)
    contacts = contact_points(g)
    cl_eq = [e for e in verified_equilibria(g, cl) if e.verdict.confirmed]
    me_eq = [e for e in verified_equilibria(g, me) if e.verdict.confirmed]

    data = {
        "labels": dict(labels),
        "resolved_fraction": resolved_points / total,
        "nonedge_fraction": nonedge_rows / total,
        "contact_points": contacts,
        "cl_point": cl_point,
        "me_point": me_point,
        "cl_table": cl_table,
        "me_table": me_table,
        "cl_nonedge": cl_ne,
        "me_nonedge": me_ne,
        "cl_equilibria": cl_eq,
        "me_equilibria": me_eq,
        "risk_dominance": values[2] + values[3] > values[0] + values[1],
    }
    lines += [
        f"scan: {total} correlations ({resolution} x {resolution})",
        "domains visited: " + ", ".join(f"{k} ({v})" for k, v in sorted(labels.items())),
        f"edge resolution: {fmt(100 * resolved_points / total)}% of correlations lie in no-dilemma domains",
        f"non-edge strips: non-edge QNE at {fmt(100 * nonedge_rows / total)}% of correlations",
        "contact points: " + ", ".join(f"({fmt(p.gp_plus)}, {fmt(p.gp_minus)})" for p in contacts),
        f"CL at (G'+, G'-) = ({fmt(cl_point.gp_plus)}, {fmt(cl_point.gp_minus)}), "
        f"ME at ({fmt(me_point.gp_plus)}, {fmt(me_point.gp_minus)})",
    ]
    lines += _render_table("CL payoffs", cl_table)
    lines += _render_table("ME payoffs", me_table)
    for name, eqs in (("CL", cl_eq), ("ME", me_eq)):
        for e in eqs:
            where = e.edge.ket if e.edge is not None else "non-edge"
            lines.append(
                f"{name} QNE {where}: ({fmt(e.payoffs[0])}, {fmt(e.payoffs[1])}) [{e.verdict}]"
            )
    verdict = "dilemma resolvable within edge strategies" if resolved_points else "dilemma persists"
    lines.append("verdict: " + verdict)
    return DilemmaReport("sh", values, g, "resolved" if resolved_points else "unresolved", data, lines)


REPORTS = {"bos": bos_report, "pd": pd_report, "sh": sh_report}
