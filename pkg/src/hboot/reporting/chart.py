"""Standalone SVG chart of per-field confidence intervals.

One horizontal segment per field spanning the interval, with end caps and a
dot at the original estimate.  The SVG is written by hand so identical input
gives identical bytes.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from ..errors import ValidationError
from ..intervals import IntervalMethod
from ..resampling import StatisticKind
from .commands import CIReport
from .io import write_atomic

__all__ = ["render_interval_chart", "emit_interval_chart", "nice_ticks"]

WIDTH = 640
LEFT = 170
RIGHT = 30
TOP = 50
ROW = 30
BOTTOM = 60

_METHOD_NAMES = {
    IntervalMethod.NORMAL: "Normal",
    IntervalMethod.PERCENTILE: "Percentile",
    IntervalMethod.BASIC: "Basic",
    IntervalMethod.BIAS_CORRECTED: "Bias-corrected",
}


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    span = hi - lo
    raw = span / max(target - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    k = 0
    while first + k * step <= hi + 1e-9 * step:
        ticks.append(round(first + k * step, 10))
        k += 1
    return ticks


def _f(x: float) -> str:
    return f"{x:.2f}"


def _label(x: float) -> str:
    return f"{x:.6g}"


def render_interval_chart(report: CIReport, method=IntervalMethod.BASIC, level: float = 0.90,
                          statistic=StatisticKind.MEAN) -> str:
    method = IntervalMethod(method)
    statistic = StatisticKind(statistic)
    entries = []
    for row in report.rows:
        if row.statistic is not statistic:
            continue
        try:
            ci = row.get(method, level)
        except KeyError:
            continue
        entries.append((row.field_id, ci.lower, ci.upper, row.distribution.original_estimate))
    if not entries:
        raise ValidationError(f"no {method.label} {level:g} interval for the {statistic.value} to chart")

    lo = min(min(e[1], e[3]) for e in entries)
    hi = max(max(e[2], e[3]) for e in entries)
    span = hi - lo
    pad = 0.05 * span if span > 0 else max(1.0, abs(lo) * 0.05)
    lo, hi = lo - pad, hi + pad
    plot_w = WIDTH - LEFT - RIGHT
    height = TOP + ROW * len(entries) + BOTTOM

    def x(v: float) -> float:
        return LEFT + (v - lo) / (hi - lo) * plot_w

    axis_y = TOP + ROW * len(entries)
    title = (f"{100 * level:.6g}% {_METHOD_NAMES[method]} bootstrap confidence intervals "
             f"for the {statistic.value} {report.index_kind.replace('_', ' ')}")
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>',
        f'<text x="{WIDTH / 2:.2f}" y="24" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line x1="{LEFT}" y1="{axis_y}" x2="{WIDTH - RIGHT}" y2="{axis_y}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{TOP - 10}" x2="{LEFT}" y2="{axis_y}" stroke="black"/>',
    ]
    for t in nice_ticks(lo, hi):
        tx = _f(x(t))
        out.append(f'<line x1="{tx}" y1="{axis_y}" x2="{tx}" y2="{axis_y + 5}" stroke="black"/>')
        out.append(f'<text x="{tx}" y="{axis_y + 18}" text-anchor="middle">{_label(t)}</text>')
    out.append(f'<text x="{LEFT + plot_w / 2:.2f}" y="{axis_y + 42}" text-anchor="middle">'
               f'{escape(statistic.value)} {escape(report.index_kind.replace("_", " "))}</text>')
    for i, (field_id, lower, upper, est) in enumerate(entries):
        y = TOP + ROW * i + ROW / 2
        a, b, c = _f(x(lower)), _f(x(upper)), _f(x(est))
        out += [
            f'<g class="interval" data-field="{escape(field_id, {chr(34): "&quot;"})}">',
            f'<text x="{LEFT - 8}" y="{_f(y + 4)}" text-anchor="end">{escape(field_id)}</text>',
            f'<line x1="{a}" y1="{_f(y)}" x2="{b}" y2="{_f(y)}" stroke="black" stroke-width="2"/>',
            f'<line x1="{a}" y1="{_f(y - 6)}" x2="{a}" y2="{_f(y + 6)}" stroke="black" stroke-width="2"/>',
            f'<line x1="{b}" y1="{_f(y - 6)}" x2="{b}" y2="{_f(y + 6)}" stroke="black" stroke-width="2"/>',
            f'<circle cx="{c}" cy="{_f(y)}" r="3.5" fill="black"/>',
            "</g>",
        ]
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_interval_chart(report: CIReport, path, method=IntervalMethod.BASIC, level: float = 0.90,
                        statistic=StatisticKind.MEAN) -> str:
    svg = render_interval_chart(report, method, level, statistic)
    write_atomic(path, svg)
    return svg
