"""Matplotlib figures for the report path: rasters with axes, point clouds and
the symmetry count table. Figures are written straight to files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .hopping import PointCloud
from .render import RasterImage, to_rgb
from .symmetries import CountRow

# PNG writers stamp the library version by default; drop it so reruns are
# byte-identical.
SAVE_KW = {"metadata": {"Software": None}, "dpi": 150}


def _style(ax, title: str | None):
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title, fontsize=10)


def _unit_circle(ax):
    t = np.linspace(0, 2 * np.pi, 721)
    ax.plot(np.cos(t), np.sin(t), color="red", lw=0.8)


def plot_raster(img: RasterImage, path, title: str | None = None, circle: bool = True, size: float = 6.0) -> Path:
    w = img.window
    extent = (
        w.center.real - w.half_width,
        w.center.real + w.half_width,
        w.center.imag - w.half_height,
        w.center.imag + w.half_height,
    )
    fig, ax = plt.subplots(figsize=(size, size * w.half_height / w.half_width))
    ax.imshow(to_rgb(img), extent=extent, origin="upper", interpolation="nearest")
    if circle:
        _unit_circle(ax)
    _style(ax, title)
    fig.tight_layout()
    fig.savefig(path, **SAVE_KW)
    plt.close(fig)
    return Path(path)


def plot_point_cloud(
    clouds: PointCloud | Sequence[PointCloud], path, title: str | None = None, circle: bool = True
) -> Path:
    if isinstance(clouds, PointCloud):
        clouds = [clouds]
    fig, ax = plt.subplots(figsize=(6, 6))
    for cloud in clouds:
        ax.scatter(cloud.points.real, cloud.points.imag, s=1.0, color="black", linewidths=0)
    if circle:
        _unit_circle(ax)
    _style(ax, title)
    fig.tight_layout()
    fig.savefig(path, **SAVE_KW)
    plt.close(fig)
    return Path(path)


def plot_counts(rows: Sequence[CountRow], path, title: str | None = None) -> Path:
    ms = [r.m for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ms, [r.count for r in rows], "o-", color="black", label="distinct p in S")
    ax.semilogy(ms, [r.conjectured for r in rows], "s--", color="gray", label="2^(ceil(m/2)-1)")
    ax.set_xlabel("degree m")
    ax.set_ylabel("count")
    ax.legend(frameon=False)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, **SAVE_KW)
    plt.close(fig)
    return Path(path)
