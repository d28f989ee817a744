"""Command-line front end: ``qgame classify | qne | grid | report``."""

from __future__ import annotations

import argparse
import io
import math
import sys
from collections import Counter
from pathlib import Path
from typing import Optional

from .atlas import Domain, grid_scan, is_degenerate, phase_class, rectangle
from .equilibrium import DegenerateBranch, edge_qne, nonedge_qne, verify_qne_bruteforce
from .game import (
    ClassicalGame,
    ParseError,
    Symmetry,
    check_symmetry,
    invariants,
    load_game,
    quantize,
    t_symmetrize,
)
from .hilbert import Correlation
from .reports import DEFAULT_VALUES, REPORTS, ConstraintViolation, fmt
from .strategy import Edge
from .svg import render_phase_svg

EXIT_OK, EXIT_INPUT, EXIT_IO = 0, 2, 3

CSV_HEADER = "gamma1,gamma2,gp_plus,gp_minus,h_plus,h_minus,domain,edge_mask,nonedge,nonedge_payoff"


def _g12(x: float) -> str:
    return format(x + 0.0, ".12g")


def _analysis_game(g: ClassicalGame, out) -> ClassicalGame:
    """T-symmetric game used for the phase analysis; explicit games are rejected."""
    if g.symmetry is Symmetry.T:
        return g
    if g.symmetry is Symmetry.S:
        dual = t_symmetrize(g)
        print(
            "note: S-symmetric input analysed through its T-symmetric dual (Alice's labels flipped, "
            "gamma1 <-> gamma2); dual A = " + " ".join(fmt(v) for v in dual.a_flat),
            file=out,
        )
        return dual
    raise ConstraintViolation("explicit (asymmetric) games are outside the phase theory; use an S or T game")


def cmd_classify(game_path: str, resolution: int = 128) -> str:
    out = io.StringIO()
    g = load_game(game_path)
    inv = invariants(g)
    print(f"symmetry: {g.symmetry.value} (operator check: {check_symmetry(quantize(g)).value})", file=out)
    print(
        f"invariants: Tr = {fmt(inv.trace)}, tau = {fmt(inv.tau)}, "
        f"sigma+ = {fmt(inv.sigma_plus)}, sigma- = {fmt(inv.sigma_minus)}",
        file=out,
    )
    t = _analysis_game(g, out)
    tinv = invariants(t)
    rect = rectangle(t)
    shape = "segment" if (rect.l_h == 0.0) != (rect.l_v == 0.0) else "rectangle"
    if rect.l_h == 0.0 and rect.l_v == 0.0:
        shape = "point"
    if g is not t:
        print(f"dual invariants: tau = {fmt(tinv.tau)}", file=out)
    print(f"rectangle: L_h = {fmt(rect.l_h)}, L_v = {fmt(rect.l_v)} ({shape})", file=out)
    if is_degenerate(tinv):
        print("phase class: Degenerate (tau = 0 or a point rectangle); domains: Degenerate", file=out)
        return out.getvalue()
    print(f"phase class: {phase_class(t)}", file=out)
    labels = Counter(str(r.label) for r in grid_scan(t, resolution))
    domains = sorted(labels)
    print(f"domains over a {resolution} x {resolution} scan: " + ", ".join(domains), file=out)
    real = [d for d in domains if d != Domain.BOUNDARY.value]
    if len(real) == 1:
        print(f"{shape}; entirely {real[0]} domain", file=out)
    return out.getvalue()


def cmd_qne(game_path: str, gamma1: float, gamma2: float, grid_n: int = 64, tol: float = 1e-7) -> str:
    out = io.StringIO()
    g = load_game(game_path)
    t = _analysis_game(g, out)
    c_in = Correlation(gamma1, gamma2)
    c = c_in if t is g else c_in.swapped()
    if is_degenerate(invariants(t)):
        print("game is Degenerate (tau = 0); edge analysis only", file=out)
    print(f"gamma = ({fmt(c_in.gamma1)}, {fmt(c_in.gamma2)})", file=out)

    def verdict_for(alpha, beta):
        # verify in the input game's own frame
        if t is not g:
            alpha = alpha.bar()
        return verify_qne_bruteforce(g, c_in, (alpha, beta), grid_n, tol)

    report = edge_qne(t, c)
    listed = 0
    for e in Edge:
        if not (report.present[e] or report.boundary[e]):
            continue
        a, b = e.strategies()
        v = verdict_for(a, b)
        label = e.ket
        if t is not g:
            i, j = e.ij
            label += f" (input labels |{1 - i}{j}>)"
        pa, pb = report.payoffs[e]
        tag = "edge QNE" if report.present[e] else "edge on boundary"
        if not v.confirmed and report.present[e]:
            tag = "edge candidate rejected"
        print(f"{tag} {label}: (Pi_A, Pi_B) = ({fmt(pa)}, {fmt(pb)}) [{v}]", file=out)
        listed += 1
    if not listed:
        print("no edge QNE", file=out)

    try:
        ne = nonedge_qne(t, c)
    except DegenerateBranch as exc:
        print(f"non-edge branch degenerate: {exc}", file=out)
        ne = None
    else:
        if ne is None:
            print("no non-edge QNE", file=out)
    if ne is not None:
        v = verdict_for(ne.alpha, ne.beta)
        tag = "non-edge QNE" if v.confirmed else "non-edge candidate rejected"
        print(
            f"{tag}: payoff ({fmt(ne.payoff)}, {fmt(ne.payoff)}), "
            f"alpha = (theta {fmt(ne.alpha.theta)}, phi {fmt(ne.alpha.phi)}), "
            f"beta = (theta {fmt(ne.beta.theta)}, phi {fmt(ne.beta.phi)}), Delta = {fmt(ne.delta)} [{v}]",
            file=out,
        )
    return out.getvalue()


def grid_csv(g: ClassicalGame, resolution: int) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for r in grid_scan(g, resolution):
        fields = [
            _g12(r.gamma1),
            _g12(r.gamma2),
            _g12(r.point.gp_plus),
            _g12(r.point.gp_minus),
            _g12(r.h_plus),
            _g12(r.h_minus),
            str(r.label),
            str(r.edge_mask),
            "1" if r.nonedge else "0",
            "" if r.nonedge_payoff is None else _g12(r.nonedge_payoff),
        ]
        out.write(",".join(fields) + "\n")
    return out.getvalue()


def cmd_grid(game_path: str, resolution: int = 128, fmt_name: str = "csv") -> tuple[str, str]:
    """(artifact, notes)."""
    if resolution < 2:
        raise ConstraintViolation("resolution must be at least 2")
    notes = io.StringIO()
    g = load_game(game_path)
    t = _analysis_game(g, notes)
    if fmt_name == "csv":
        return grid_csv(t, resolution), notes.getvalue()
    if fmt_name == "svg":
        return render_phase_svg(t, grid_scan(t, resolution)), notes.getvalue()
    labels = Counter(str(r.label) for r in grid_scan(t, resolution))
    text = "".join(f"{k}: {v}\n" for k, v in sorted(labels.items()))
    return text, notes.getvalue()


def parse_values(text: Optional[str]) -> Optional[tuple[float, ...]]:
    if text is None:
        return None
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"--values expects four comma-separated numbers, got {text!r}") from None
    if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
        raise ParseError(f"--values expects four finite numbers A00,A01,A10,A11, got {text!r}")
    return vals


def cmd_report(which: str, values=None, resolution: Optional[int] = None) -> str:
    kwargs = {"values": values if values is not None else DEFAULT_VALUES[which]}
    if resolution is not None:
        kwargs["resolution"] = resolution
    return REPORTS[which](**kwargs).text()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgame", description="Quantum 2x2 games under J(gamma) correlations.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="symmetry, invariants, rectangle, phase class and domains")
    c.add_argument("file")
    c.add_argument("--resolution", type=int, default=128)

    q = sub.add_parser("qne", help="edge and non-edge QNE at one correlation")
    q.add_argument("file")
    q.add_argument("--gamma1", type=float, required=True)
    q.add_argument("--gamma2", type=float, required=True)
    q.add_argument("--verify-grid", type=int, default=64, help="brute-force grid size (default 64)")
    q.add_argument("--verify-tol", type=float, default=1e-7, help="brute-force gain tolerance")

    g = sub.add_parser("grid", help="scan the correlation torus")
    g.add_argument("file")
    g.add_argument("--resolution", type=int, default=128)
    g.add_argument("--format", choices=("csv", "svg", "text"), default="csv")
    g.add_argument("--out", help="output path (default stdout)")

    r = sub.add_parser("report", help="BoS / PD / SH dilemma analysis")
    r.add_argument("which", choices=sorted(REPORTS))
    r.add_argument("--values", help="A00,A01,A10,A11 (row-major); defaults to the standard payoffs")
    r.add_argument("--resolution", type=int)
    r.add_argument("--out", help="output path (default stdout)")
    return p


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classify":
            _emit(cmd_classify(args.file, args.resolution), None)
        elif args.command == "qne":
            _emit(cmd_qne(args.file, args.gamma1, args.gamma2, args.verify_grid, args.verify_tol), None)
        elif args.command == "grid":
            artifact, notes = cmd_grid(args.file, args.resolution, args.format)
            if notes:
                sys.stderr.write(notes)
            _emit(artifact, args.out)
        else:
            if args.resolution is not None and args.resolution < 2:
                raise ConstraintViolation("resolution must be at least 2")
            _emit(cmd_report(args.which, parse_values(args.values), args.resolution), args.out)
    except OSError as exc:
        print(f"qgame: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParseError, ConstraintViolation) as exc:
        print(f"qgame: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # invariant violations raised while building the game
        print(f"qgame: ConstraintViolation: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
