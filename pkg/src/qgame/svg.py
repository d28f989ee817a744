"""SVG rendering of a game's G'+ / G'- phase diagram."""

from __future__ import annotations

import math
from typing import Iterable

from .atlas import Domain, PhasePoint, ScanRow, classify_point, rectangle
from .game import ClassicalGame, invariants

SIZE = 800
PLOT_X0, PLOT_Y0, PLOT_W = 100, 40, 600
CELLS = 120

COLORS = {
    Domain.BOS: "#8fb3de",
    Domain.PD: "#e39b8f",
    Domain.SH: "#e8c77d",
    Domain.NO_DILEMMA_SINGLE: "#a6d99b",
    Domain.NO_DILEMMA_PAIR: "#5fae73",
    Domain.BOUNDARY: "#9a9a9a",
    Domain.DEGENERATE: "#dddddd",
}


def _n(x: float) -> str:
    return f"{x + 0.0:.2f}"


class _Frame:
    """Maps plane coordinates in [-w, w]^2 onto the plot square."""

    def __init__(self, w: float):
        self.w = w

    def x(self, gp: float) -> float:
        return PLOT_X0 + (gp + self.w) / (2 * self.w) * PLOT_W

    def y(self, gm: float) -> float:
        return PLOT_Y0 + (self.w - gm) / (2 * self.w) * PLOT_W


def _window(g: ClassicalGame) -> float:
    inv = invariants(g)
    rect = rectangle(g)
    w = max(rect.l_h / 2, rect.l_v / 2, abs(inv.tau), 1e-9) * 1.3
    return w


def _polyline(frame: _Frame, pts: Iterable[tuple[float, float]], style: str) -> str:
    coords = " ".join(f"{_n(frame.x(a))},{_n(frame.y(b))}" for a, b in pts)
    return f'<polyline points="{coords}" fill="none" {style}/>'


def _hyperbola(frame: _Frame, k: float, steps: int = 160) -> list[list[tuple[float, float]]]:
    """Branches of x^2 - y^2 = k inside the window."""
    w = frame.w
    if k == 0.0:
        return [[(-w, -w), (w, w)], [(-w, w), (w, -w)]]
    r = math.sqrt(abs(k))
    top = math.asinh(w / r) + 0.05
    ts = [-top + 2 * top * i / steps for i in range(steps + 1)]
    branches = []
    for s in (1, -1):
        if k > 0:
            branches.append([(s * r * math.cosh(t), r * math.sinh(t)) for t in ts])
        else:
            branches.append([(r * math.sinh(t), s * r * math.cosh(t)) for t in ts])
    return branches


def render_phase_svg(g: ClassicalGame, rows: Iterable[ScanRow] = ()) -> str:
    """Fixed 800x800 diagram: domain cells, rectangle, H = 0 lines, Delta = 0 hyperbolae.

    Scan rows with a non-edge QNE are marked as dots.
    """
    inv = invariants(g)
    w = _window(g)
    frame = _Frame(w)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        '<rect x="0" y="0" width="800" height="800" fill="#ffffff"/>',
        "<defs><clipPath id=\"plot\">"
        f'<rect x="{PLOT_X0}" y="{PLOT_Y0}" width="{PLOT_W}" height="{PLOT_W}"/></clipPath></defs>',
        '<g clip-path="url(#plot)">',
    ]

    # domain cells, merged into horizontal runs
    cell = PLOT_W / CELLS
    for r in range(CELLS):
        gm = w - (r + 0.5) * 2 * w / CELLS
        run_start, run_domain = 0, None
        for col in range(CELLS + 1):
            dom = None
            if col < CELLS:
                gp = -w + (col + 0.5) * 2 * w / CELLS
                dom = classify_point(inv, PhasePoint(gp, gm)).domain
            if dom is not run_domain:
                if run_domain is not None:
                    out.append(
                        f'<rect x="{_n(PLOT_X0 + run_start * cell)}" y="{_n(PLOT_Y0 + r * cell)}" '
                        f'width="{_n((col - run_start) * cell)}" height="{_n(cell)}" fill="{COLORS[run_domain]}"/>'
                    )
                run_start, run_domain = col, dom

    # H+ = 0 and H- = 0: G'+ + G'- = -tau and G'+ + G'- = tau
    for c, name in ((-inv.tau, "H+ = 0"), (inv.tau, "H- = 0")):
        out.append(
            _polyline(frame, [(-w, c + w), (w, c - w)], 'stroke="#1f3b73" stroke-width="2"')
            + f"<!-- {name} -->"
        )
    for branch in _hyperbola(frame, inv.sigma_product):
        out.append(_polyline(frame, branch, 'stroke="#7a1f5c" stroke-width="1.5" stroke-dasharray="6,4"'))

    rect = rectangle(g)
    hx, hy = rect.half_extent
    out.append(
        f'<rect x="{_n(frame.x(-hx))}" y="{_n(frame.y(hy))}" width="{_n(frame.x(hx) - frame.x(-hx))}" '
        f'height="{_n(frame.y(-hy) - frame.y(hy))}" fill="none" stroke="#000000" stroke-width="2"/>'
    )

    seen = set()
    for row in rows:
        if not row.nonedge:
            continue
        key = (_n(frame.x(row.point.gp_plus)), _n(frame.y(row.point.gp_minus)))
        if key in seen:
            continue
        seen.add(key)
        out.append(f'<circle cx="{key[0]}" cy="{key[1]}" r="1.5" fill="#000000"/>')
    out.append("</g>")

    # axes
    out.append(
        f'<rect x="{PLOT_X0}" y="{PLOT_Y0}" width="{PLOT_W}" height="{PLOT_W}" fill="none" stroke="#333333"/>'
    )
    out.append(
        f'<line x1="{PLOT_X0}" y1="{_n(frame.y(0))}" x2="{PLOT_X0 + PLOT_W}" y2="{_n(frame.y(0))}" '
        'stroke="#333333" stroke-width="0.8"/>'
    )
    out.append(
        f'<line x1="{_n(frame.x(0))}" y1="{PLOT_Y0}" x2="{_n(frame.x(0))}" y2="{PLOT_Y0 + PLOT_W}" '
        'stroke="#333333" stroke-width="0.8"/>'
    )
    bottom = PLOT_Y0 + PLOT_W
    font = 'font-family="sans-serif" font-size="14"'
    out += [
        f'<text x="{PLOT_X0}" y="{bottom + 18}" {font}>{-w:.3g}</text>',
        f'<text x="{PLOT_X0 + PLOT_W}" y="{bottom + 18}" text-anchor="end" {font}>{w:.3g}</text>',
        f'<text x="{PLOT_X0 - 6}" y="{bottom}" text-anchor="end" {font}>{-w:.3g}</text>',
        f'<text x="{PLOT_X0 - 6}" y="{PLOT_Y0 + 12}" text-anchor="end" {font}>{w:.3g}</text>',
        f'<text x="{PLOT_X0 + PLOT_W / 2}" y="{bottom + 22}" text-anchor="middle" {font}>G′₊</text>',
        f'<text x="{PLOT_X0 - 40}" y="{PLOT_Y0 + PLOT_W / 2}" text-anchor="middle" {font}>G′₋</text>',
    ]

    # legend
    x, y = PLOT_X0, bottom + 50
    for i, (dom, color) in enumerate(COLORS.items()):
        lx = x + (i % 4) * 150
        ly = y + (i // 4) * 26
        out.append(f'<rect x="{lx}" y="{ly}" width="16" height="16" fill="{color}" stroke="#333333"/>')
        out.append(f'<text x="{lx + 22}" y="{ly + 13}" {font}>{dom.value}</text>')
    ly = y + 2 * 26
    out.append(f'<line x1="{x}" y1="{ly + 8}" x2="{x + 16}" y2="{ly + 8}" stroke="#1f3b73" stroke-width="2"/>')
    out.append(f'<text x="{x + 22}" y="{ly + 13}" {font}>H± = 0</text>')
    out.append(
        f'<line x1="{x + 150}" y1="{ly + 8}" x2="{x + 166}" y2="{ly + 8}" stroke="#7a1f5c" '
        'stroke-width="1.5" stroke-dasharray="6,4"/>'
    )
    out.append(f'<text x="{x + 172}" y="{ly + 13}" {font}>Δ = 0</text>')
    out.append(f'<circle cx="{x + 308}" cy="{ly + 8}" r="3" fill="#000000"/>')
    out.append(f'<text x="{x + 322}" y="{ly + 13}" {font}>non-edge QNE</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
