# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: io: self-contained SVG line plots."""

import dataclasses as _dc
import pathlib as _pathlib
import typing as _typing
from xml.sax import saxutils as _saxutils

import numpy as _np

from .tabulator import write_text as _write_text

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]


@_dc.dataclass
class Series:
    """One polyline.

    :param label: legend entry.
    :param x: abscissae.
    :param y: ordinates, same length.
    """
    label: str
    x: _np.ndarray
    y: _np.ndarray


@_dc.dataclass
class LinePlotSettings:
    """Settings for :py:func:`~.line_plot`.

    :param width: image width in px.
    :param height: image height in px.
    :param margin: space for ticks and labels in px.
    :param ticks: tick count per axis.
    """
    width: int = 640
    height: int = 420
    margin: int = 60
    ticks: int = 6


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def line_plot(series: _typing.Sequence[Series],
              path: _typing.Union[str, _pathlib.Path],
              title: str = "",
              xlabel: str = "",
              ylabel: str = "",
              marked_points: _typing.Sequence[_typing.Tuple[float, float]] = (),
              settings: LinePlotSettings = None) -> _pathlib.Path:
    """Render series as polylines with axes, ticks, legend and marked points, and write the SVG atomically.

    :param series: curves to draw.
    :param path: output file.
    :param title: plot title.
    :param xlabel: x axis label.
    :param ylabel: y axis label.
    :param marked_points: (x, y) points drawn as dots.
    :param settings: layout settings.
    :return: path written.
    """
    s = settings if settings is not None else LinePlotSettings()
    xs = _np.concatenate([_np.asarray(c.x, dtype=float) for c in series] + [_np.array([p[0] for p in marked_points])])
    ys = _np.concatenate([_np.asarray(c.y, dtype=float) for c in series] + [_np.array([p[1] for p in marked_points])])
    x0, x1 = float(_np.nanmin(xs)), float(_np.nanmax(xs))
    y0, y1 = float(_np.nanmin(ys)), float(_np.nanmax(ys))
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    plot_w, plot_h = s.width - 2 * s.margin, s.height - 2 * s.margin

    def px(x):
        return s.margin + (x - x0) / (x1 - x0) * plot_w

    def py(y):
        return s.height - s.margin - (y - y0) / (y1 - y0) * plot_h

    esc = _saxutils.escape
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{s.width}" height="{s.height}" '
           f'viewBox="0 0 {s.width} {s.height}" font-family="sans-serif" font-size="12">',
           f'<rect x="0" y="0" width="{s.width}" height="{s.height}" fill="white"/>',
           f'<rect x="{s.margin}" y="{s.margin}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>']
    for t in _np.linspace(x0, x1, s.ticks):
        out.append(f'<line x1="{px(t):.2f}" y1="{s.height - s.margin}" x2="{px(t):.2f}" '
                   f'y2="{s.height - s.margin + 5}" stroke="black"/>')
        out.append(f'<text x="{px(t):.2f}" y="{s.height - s.margin + 18}" text-anchor="middle">{_fmt(t)}</text>')
    for t in _np.linspace(y0, y1, s.ticks):
        out.append(f'<line x1="{s.margin - 5}" y1="{py(t):.2f}" x2="{s.margin}" y2="{py(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{s.margin - 8}" y="{py(t) + 4:.2f}" text-anchor="end">{_fmt(t)}</text>')
    for k, curve in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(curve.x, curve.y) if _np.isfinite(b))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{points}"/>')
        ly = s.margin + 16 * (k + 1)
        out.append(f'<line x1="{s.width - s.margin - 120}" y1="{ly - 4}" x2="{s.width - s.margin - 100}" '
                   f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{s.width - s.margin - 95}" y="{ly}">{esc(curve.label)}</text>')
    for a, b in marked_points:
        out.append(f'<circle cx="{px(a):.2f}" cy="{py(b):.2f}" r="4" fill="black"/>')
    out.append(f'<text x="{s.width / 2:.1f}" y="{s.margin / 2:.1f}" text-anchor="middle" '
               f'font-size="14">{esc(title)}</text>')
    out.append(f'<text x="{s.width / 2:.1f}" y="{s.height - 12}" text-anchor="middle">{esc(xlabel)}</text>')
    out.append(f'<text x="16" y="{s.height / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {s.height / 2:.1f})">{esc(ylabel)}</text>')
    out.append('</svg>')
    return _write_text("\n".join(out) + "\n", path)
