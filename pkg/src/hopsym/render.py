"""Rasterise polynomial preimages of the unit disk and filled Julia sets.

All membership tests are evaluated at pixel centres. Rows are split into
bands that may be computed on a thread pool; each band writes into its own
slice, so the assembled raster does not depend on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .polyring import IntPoly, parity

BAND_ROWS = 64


@dataclass(frozen=True)
class Window:
    """Rectangle ``center ± (half_width + i*half_height)`` sampled on a
    ``width x height`` pixel grid; pixel ``(0, 0)`` is the top-left corner."""

    center: complex = 0j
    half_width: float = 1.8
    half_height: float = 1.8
    width: int = 2048
    height: int = 2048

    def __post_init__(self):
        if self.half_width <= 0 or self.half_height <= 0:
            raise ValueError("window extents must be positive")
        if self.width < 1 or self.height < 1:
            raise ValueError("window resolution must be positive")

    @classmethod
    def square(cls, half_width: float = 1.8, resolution: int = 2048, center: complex = 0j) -> "Window":
        return cls(complex(center), half_width, half_width, resolution, resolution)

    @property
    def pixel_size(self) -> tuple[float, float]:
        return 2 * self.half_width / self.width, 2 * self.half_height / self.height

    def xs(self) -> np.ndarray:
        dx = 2 * self.half_width / self.width
        return self.center.real + (np.arange(self.width) + 0.5 - self.width / 2) * dx

    def ys(self) -> np.ndarray:
        dy = 2 * self.half_height / self.height
        return self.center.imag - (np.arange(self.height) + 0.5 - self.height / 2) * dy

    def points(self, rows: slice = slice(None)) -> np.ndarray:
        """Pixel-centre points as a ``(rows, width)`` complex array."""
        ys = self.ys()[rows]
        return self.xs()[None, :] + 1j * ys[:, None]

    def point(self, row: int, col: int) -> complex:
        return complex(self.xs()[col], self.ys()[row])

    def as_text(self) -> str:
        return (
            f"center={self.center.real!r},{self.center.imag!r} half_width={self.half_width!r} "
            f"half_height={self.half_height!r} resolution={self.width}x{self.height}"
        )


@dataclass
class RasterImage:
    """Membership raster (``uint8`` 0/1) or escape-time raster (``int32``)."""

    window: Window
    values: np.ndarray
    kind: str = "membership"

    def __post_init__(self):
        if self.values.shape != (self.window.height, self.window.width):
            raise ValueError("raster shape does not match window resolution")

    @property
    def mask(self) -> np.ndarray:
        if self.kind == "membership":
            return self.values.astype(bool)
        return self.values < 0

    def count(self) -> int:
        return int(self.mask.sum())

    def __or__(self, other: "RasterImage") -> "RasterImage":
        if self.window != other.window:
            raise ValueError("rasters cover different windows")
        return RasterImage(self.window, (self.mask | other.mask).astype(np.uint8))


def _tiled(window: Window, fn: Callable[[np.ndarray], np.ndarray], threads: int | None, dtype) -> np.ndarray:
    out = np.empty((window.height, window.width), dtype=dtype)
    bands = [slice(r, min(r + BAND_ROWS, window.height)) for r in range(0, window.height, BAND_ROWS)]

    def work(band: slice) -> None:
        out[band] = fn(window.points(band))

    threads = threads or os.cpu_count() or 1
    if threads > 1 and len(bands) > 1:
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(work, bands))
    else:
        for band in bands:
            work(band)
    return out


def _horner(coeffs: Sequence[float], z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _float_coeffs(p: IntPoly) -> list[float]:
    return [float(c) for c in p.coeffs]


def escape_radius(p: IntPoly) -> float:
    """``max(2, 1 + Σ|non-leading coefficients|)`` for monic ``p`` of degree >= 2.

    Once ``|z|`` reaches this radius, ``|p(z)| > |z|`` and the orbit diverges.
    """
    if p.degree < 2:
        raise ValueError("escape radius needs degree >= 2")
    if not p.is_monic():
        raise ValueError(f"escape radius needs a monic polynomial, got {p}")
    return float(max(2, 1 + sum(abs(c) for c in p.coeffs[:-1])))


# ---------------------------------------------------------------------------
# membership kernels (operate on complex arrays)
# ---------------------------------------------------------------------------


def _abs_value(p: IntPoly, z: np.ndarray, z2: np.ndarray) -> np.ndarray:
    # pure-parity polynomials are evaluated in z**2 at half the cost
    par = parity(p)
    if par == "even":
        return np.abs(_horner(_float_coeffs(p)[0::2], z2))
    if par == "odd":
        return np.abs(z) * np.abs(_horner(_float_coeffs(p)[1::2], z2))
    return np.abs(_horner(_float_coeffs(p), z))


def preimage_mask(p: IntPoly, z: np.ndarray) -> np.ndarray:
    return _abs_value(p, z, z * z) <= 1.0


def union_mask(polys: Sequence[IntPoly], z: np.ndarray) -> np.ndarray:
    out = np.zeros(z.shape, dtype=bool)
    flat = z.reshape(-1)
    todo = np.arange(flat.size)
    for p in polys:
        if todo.size == 0:
            break
        zt = flat[todo]
        hit = _abs_value(p, zt, zt * zt) <= 1.0
        out.reshape(-1)[todo[hit]] = True
        todo = todo[~hit]
    return out


def iterated_mask(p: IntPoly, n_max: int, z: np.ndarray) -> np.ndarray:
    coeffs = _float_coeffs(p)
    radius = escape_radius(p) if p.degree >= 2 else np.inf
    member = np.zeros(z.shape, dtype=bool)
    active = np.ones(z.shape, dtype=bool)
    cur = z.copy()
    for _ in range(n_max):
        if not active.any():
            break
        idx = np.nonzero(active)
        w = _horner(coeffs, cur[idx])
        cur[idx] = w
        a = np.abs(w)
        hit = a <= 1.0
        member[tuple(i[hit] for i in idx)] = True
        # members are settled; escaped orbits never come back
        still = ~hit & (a < radius)
        active[idx] = still
    return member


def julia_counts(p: IntPoly, max_iter: int, z: np.ndarray) -> np.ndarray:
    """Escape time per point (iterations until ``|z| > R``); ``-1`` if bounded."""
    coeffs = _float_coeffs(p)
    radius = escape_radius(p)
    counts = np.full(z.shape, -1, dtype=np.int32)
    cur = z.copy()
    active = np.abs(cur) <= radius
    counts[~active] = 0
    for n in range(1, max_iter + 1):
        if not active.any():
            break
        idx = np.nonzero(active)
        w = _horner(coeffs, cur[idx])
        cur[idx] = w
        esc = np.abs(w) > radius
        counts[tuple(i[esc] for i in idx)] = n
        active[idx] = ~esc
    return counts


def symmetry_images(z: np.ndarray) -> list[np.ndarray]:
    """The 8 images of ``z`` under the group generated by ``z -> iz`` and
    ``z -> conj(z)``."""
    out = []
    for base in (z, np.conj(z)):
        w = base
        for _ in range(4):
            out.append(w)
            # exact quarter turn: (x, y) -> (-y, x)
            w = -w.imag + 1j * w.real
    return out


# ---------------------------------------------------------------------------
# public raster operations
# ---------------------------------------------------------------------------


def _supersampled(window: Window, kernel: Callable[[np.ndarray], np.ndarray]) -> Callable[[np.ndarray], np.ndarray]:
    dx, dy = window.pixel_size
    offsets = [complex(sx * dx / 4, sy * dy / 4) for sx in (-1, 1) for sy in (-1, 1)]

    def fn(z):
        out = np.zeros(z.shape, dtype=bool)
        for off in offsets:
            out |= kernel(z + off)
        return out

    return fn


def _membership(window: Window, kernel, threads, supersample: bool) -> RasterImage:
    fn = _supersampled(window, kernel) if supersample else kernel
    values = _tiled(window, lambda z: fn(z).astype(np.uint8), threads, np.uint8)
    return RasterImage(window, values)


def raster_preimage_disk(
    p: IntPoly, w: Window, threads: int | None = None, supersample: bool = False
) -> RasterImage:
    """Pixels whose centre ``z`` has ``|p(z)| <= 1``."""
    if p.degree < 1:
        raise ValueError("need deg p >= 1")
    return _membership(w, lambda z: preimage_mask(p, z), threads, supersample)


def raster_union(
    polys: Sequence[IntPoly],
    w: Window,
    symmetry_closure: bool = False,
    threads: int | None = None,
    supersample: bool = False,
) -> RasterImage:
    """Pixel-wise OR of the preimage rasters, optionally closed under the
    dihedral symmetries ``z -> iz`` and ``z -> conj(z)``."""
    polys = list(polys)
    if symmetry_closure and _grid_is_dihedral(w):
        img = _membership(w, lambda z: union_mask(polys, z), threads, supersample)
        return RasterImage(w, dihedral_closure(img.mask).astype(np.uint8))

    def kernel(z):
        if not symmetry_closure:
            return union_mask(polys, z)
        out = np.zeros(z.shape, dtype=bool)
        for img in symmetry_images(z):
            out |= union_mask(polys, img)
        return out

    return _membership(w, kernel, threads, supersample)


def _grid_is_dihedral(w: Window) -> bool:
    # pixel centres of an origin-centred square grid are permuted exactly by
    # the quarter turn and by conjugation
    if w.center != 0 or w.width != w.height or w.half_width != w.half_height:
        return False
    xs, ys = w.xs(), w.ys()
    return bool(np.array_equal(xs, -xs[::-1]) and np.array_equal(xs, ys[::-1]))


def dihedral_closure(mask: np.ndarray) -> np.ndarray:
    """OR of ``mask`` over the 8 grid symmetries of a square raster."""
    out = mask.copy()
    for base in (mask, mask[::-1, :]):
        cur = base
        for _ in range(3):
            # value at (i, j) becomes the value at the quarter-turn image of (i, j)
            cur = cur[::-1, :].T
            out |= cur
        out |= base
    return out


def raster_iterated_preimage(
    p: IntPoly, n_max: int, w: Window, threads: int | None = None, supersample: bool = False
) -> RasterImage:
    """Pixels with ``|p^(n)(z)| <= 1`` for some ``1 <= n <= n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return _membership(w, lambda z: iterated_mask(p, n_max, z), threads, supersample)


def raster_filled_julia(
    p: IntPoly, max_iter: int, w: Window, threads: int | None = None, counts: bool = False
) -> RasterImage:
    """Pixels whose orbit stays within the escape radius for ``max_iter`` steps.

    With ``counts=True`` the raster stores escape times (``-1`` for members).
    """
    if p.degree < 2:
        raise ValueError("filled Julia sets need deg p >= 2")
    values = _tiled(w, lambda z: julia_counts(p, max_iter, z), threads, np.int32)
    if counts:
        return RasterImage(w, values, kind="escape-time")
    return RasterImage(w, (values < 0).astype(np.uint8))


def unit_disk_raster(w: Window) -> RasterImage:
    z = w.points()
    return RasterImage(w, (np.abs(z) <= 1.0).astype(np.uint8))


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def circle_mask(w: Window) -> np.ndarray:
    """Pixels whose centre lies within half a pixel of the unit circle."""
    half = 0.5 * max(w.pixel_size)
    return np.abs(np.abs(w.points()) - 1.0) <= half


def to_rgb(img: RasterImage, circle: bool = False) -> np.ndarray:
    if img.kind == "membership":
        gray = np.where(img.mask, 0, 255).astype(np.uint8)
    else:
        # escape-time shading: members black, fast escapes white
        v = img.values.astype(np.int64)
        top = max(int(v.max()), 1)
        shade = 255 - (np.clip(v, 0, None) * 255 // top)
        gray = np.where(v < 0, 0, 255 - shade // 2).astype(np.uint8)
    rgb = np.repeat(gray[:, :, None], 3, axis=2)
    if circle:
        rgb[circle_mask(img.window)] = (255, 0, 0)
    return rgb


def ppm_bytes(img: RasterImage, circle: bool = False) -> bytes:
    rgb = to_rgb(img, circle)
    h, w = rgb.shape[:2]
    return f"P6\n{w} {h}\n255\n".encode("ascii") + np.ascontiguousarray(rgb).tobytes()


def export_image(img: RasterImage, path, fmt: str | None = None, circle: bool = False) -> Path:
    """Write ``img`` as binary PPM (``"ppm"``) or PNG (``"png"``)."""
    path = Path(path)
    fmt = (fmt or path.suffix.lstrip(".") or "ppm").lower()
    try:
        if fmt in ("ppm", "p6", "portable-pixmap"):
            path.write_bytes(ppm_bytes(img, circle))
        elif fmt == "png":
            import matplotlib.image as mimage

            mimage.imsave(path, to_rgb(img, circle), format="png", metadata={"Software": None})
        else:
            raise ValueError(f"unknown image format {fmt!r}")
    except OSError as exc:
        raise OSError(f"cannot write image to {path}: {exc.strerror or exc}") from exc
    return path
