"""Minimal deterministic SVG scatter/line plots.

matplotlib embeds timestamps and random ids in its SVG output, which breaks
byte-for-byte reproducibility, so the few plots this package emits are
written directly.  Markers carry class="marker" and series polylines
class="series" so tests (and curious users) can parse coordinates back out
with any XML reader.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["Series", "render_plot"]

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 70, 20, 40, 50  # margins


@dataclass
class Series:
    name: str
    points: list[tuple[float, float]] = field(default_factory=list)
    line: list[tuple[float, float]] = field(default_factory=list)


def _bounds(series):
    xs = [p[0] for s in series for p in s.points + s.line]
    ys = [p[1] for s in series for p in s.points + s.line]
    if not xs:
        raise ValueError("nothing to plot")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x0 == x1:
        x0, x1 = x0 - 1.0, x1 + 1.0
    if y0 == y1:
        y0, y1 = y0 - 1.0, y1 + 1.0
    return x0, x1, y0, y1


def render_plot(
    series: list[Series], xlabel: str, ylabel: str, title: str = ""
) -> str:
    """Render series to a self-contained SVG string (identical input, identical bytes)."""
    x0, x1, y0, y1 = _bounds(series)
    iw = _W - _ML - _MR
    ih = _H - _MT - _MB

    def px(x: float) -> float:
        return _ML + (x - x0) / (x1 - x0) * iw

    def py(y: float) -> float:
        return _MT + ih - (y - y0) / (y1 - y0) * ih

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_ML}" y1="{_MT + ih}" x2="{_ML + iw}" y2="{_MT + ih}" '
        'stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_MT + ih}" stroke="black"/>',
    ]
    if title:
        out.append(
            f'<text x="{_W // 2}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )
    out.append(
        f'<text x="{_ML + iw / 2:.2f}" y="{_H - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>'
    )
    out.append(
        f'<text x="16" y="{_MT + ih / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {_MT + ih / 2:.2f})">{ylabel}</text>'
    )
    for value, anchor, xpos in ((x0, "start", _ML), (x1, "end", _ML + iw)):
        out.append(
            f'<text x="{xpos}" y="{_MT + ih + 16}" text-anchor="{anchor}" '
            f'font-family="sans-serif" font-size="10">{value:.6g}</text>'
        )
    for value, ypos in ((y0, _MT + ih), (y1, _MT)):
        out.append(
            f'<text x="{_ML - 6}" y="{ypos + 4}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{value:.6g}</text>'
        )
    for k, s in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        if len(s.line) >= 2:
            pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in s.line)
            out.append(
                f'<polyline class="series" data-name="{s.name}" points="{pts}" '
                f'fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        for x, y in s.points:
            out.append(
                f'<circle class="marker" data-name="{s.name}" cx="{px(x):.2f}" '
                f'cy="{py(y):.2f}" r="3" fill="{color}" fill-opacity="0.6"/>'
            )
        out.append(
            f'<text x="{_ML + iw - 6}" y="{_MT + 14 + 14 * k}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="{color}">{s.name}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
