"""SVG rendering of sampled paths."""
from __future__ import annotations

from .motion import SampledPath

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")
SIZE = 480


def color(i: int) -> str:
    return PALETTE[i % len(PALETTE)]


def render_svg(path: SampledPath) -> str:
    z = path.frames
    lo = complex(z.real.min(), z.imag.min())
    hi = complex(z.real.max(), z.imag.max())
    span = max(hi.real - lo.real, hi.imag - lo.imag, 1e-9)
    pad = 0.08 * span
    scale = SIZE / (span + 2 * pad)

    def pt(w: complex) -> tuple[float, float]:
        # flip y so the picture has the usual orientation
        return (w.real - lo.real + pad) * scale, (hi.imag - w.imag + pad) * scale

    mark = 0.012 * SIZE
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    for i in range(path.n):
        c = color(i)
        coords = " ".join("{:.3f},{:.3f}".format(*pt(w)) for w in z[:, i])
        out.append(f'<polyline points="{coords}" fill="none" stroke="{c}" stroke-width="1.5"/>')
        sx, sy = pt(z[0, i])
        out.append(f'<circle cx="{sx:.3f}" cy="{sy:.3f}" r="{mark:.3f}" fill="none" stroke="{c}"/>')
        gx, gy = pt(z[-1, i])
        out.append(f'<path d="M{gx - mark:.3f},{gy - mark:.3f}L{gx + mark:.3f},{gy + mark:.3f}'
                   f'M{gx - mark:.3f},{gy + mark:.3f}L{gx + mark:.3f},{gy - mark:.3f}" '
                   f'stroke="{c}" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

