"""Minimal deterministic SVG rendering of sampled curves (finite chart only)."""

from __future__ import annotations

import numpy as np

from .curves import SampledCurve

__all__ = ["curves_svg", "write_svg"]

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
CLIP_LIMIT = 1e3


def curves_svg(curves: list[SampledCurve], size: int = 640, clip: float = CLIP_LIMIT):
    """SVG text plus notices about clipped samples (points near infinity)."""
    notices = []
    polylines = []
    for idx, c in enumerate(curves):
        z = c.values
        keep = ~c.infinite_mask & (np.abs(z.real) <= clip) & (np.abs(z.imag) <= clip)
        dropped = int((~keep).sum())
        if dropped:
            notices.append(f"curve {idx} ({c.label}): clipped {dropped} samples beyond {clip:g}")
        if keep.sum() >= 2:
            polylines.append((idx, z[keep]))
    if not polylines:
        body = "<!-- no drawable samples -->"
        return _wrap(body, size, (-1, 1, -1, 1), notices), notices
    xs = np.concatenate([p.real for _, p in polylines])
    ys = np.concatenate([p.imag for _, p in polylines])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    box = (x0 - pad, x1 + pad, y0 - pad, y1 + pad)
    parts = []
    for idx, p in polylines:
        color = _PALETTE[idx % len(_PALETTE)]
        pts = " ".join(f"{v.real:.8g},{-v.imag:.8g}" for v in p)
        first = p[0]
        parts.append(
            f'<polyline points="{pts} {first.real:.8g},{-first.imag:.8g}" '
            f'fill="none" stroke="{color}" stroke-width="{(box[1]-box[0])/400.0:.6g}"/>'
        )
    return _wrap("\n".join(parts), size, box, notices), notices


def _wrap(body: str, size: int, box, notices) -> str:
    x0, x1, y0, y1 = box
    w, h = x1 - x0, y1 - y0
    note = "".join(f"<!-- {n} -->\n" for n in notices)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{x0:.8g} {-y1:.8g} {w:.8g} {h:.8g}">\n{note}{body}\n</svg>\n'
    )


def write_svg(path, curves: list[SampledCurve], size: int = 640, clip: float = CLIP_LIMIT):
    text, notices = curves_svg(curves, size=size, clip=clip)
    with open(path, "w") as fh:
        fh.write(text)
    return notices
