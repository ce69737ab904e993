"""Deterministic rendering of parameter-plane and dynamical-plane grids.

Work is split into fixed horizontal bands (independent of the worker count);
each band writes a disjoint range of the output buffer, so any degree of
parallelism produces byte-identical images.  Color tables are fixed bytes,
not computed gradients, to keep golden-file tests meaningful.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from . import cycles, escape
from .grid import GridSpec, classify_julia_grid, classify_parameter_grid

BAND_ROWS = 64

# Escape levels map onto a 24-step grey staircase, brightest at level 0.
GREY_RAMP: Tuple[int, ...] = tuple(250 - 10 * k for k in range(24))

# Attracting periods: red=1, green=2, blue=3, yellow=4, then magenta, cyan,
# orange, violet; repeats beyond period 8.
PERIOD_PALETTE: Tuple[Tuple[int, int, int], ...] = (
    (220, 40, 40),
    (40, 180, 70),
    (60, 90, 220),
    (230, 220, 50),
    (200, 60, 200),
    (60, 200, 200),
    (240, 140, 40),
    (130, 70, 200),
)

BLACK = (0, 0, 0)


@dataclass
class ImageBuffer:
    nx: int
    ny: int
    rgb: bytearray = field(default_factory=bytearray)

    def __post_init__(self):
        if not self.rgb:
            self.rgb = bytearray(3 * self.nx * self.ny)
        if len(self.rgb) != 3 * self.nx * self.ny:
            raise ValueError("rgb length must be 3*nx*ny")

    def get(self, j: int, i: int) -> Tuple[int, int, int]:
        o = 3 * (j * self.nx + i)
        return self.rgb[o], self.rgb[o + 1], self.rgb[o + 2]


def grey_for_level(level: int) -> Tuple[int, int, int]:
    g = GREY_RAMP[level % len(GREY_RAMP)]
    return g, g, g


def color_for_period(period: int) -> Tuple[int, int, int]:
    return PERIOD_PALETTE[(period - 1) % len(PERIOD_PALETTE)]


def _bands(ny: int) -> List[Tuple[int, int]]:
    return [(j, min(j + BAND_ROWS, ny)) for j in range(0, ny, BAND_ROWS)]


def _paint(level: np.ndarray, aux: np.ndarray, aux_is_period: bool) -> np.ndarray:
    """RGB bytes for one band from level/period (or level/phase) arrays."""
    ny, nx = level.shape
    out = np.zeros((ny, nx, 3), np.uint8)
    esc = level >= 0
    if esc.any():
        greys = np.array(GREY_RAMP, np.uint8)
        g = greys[level[esc] % len(GREY_RAMP)]
        out[esc] = g[:, None]
    colored = aux > 0 if aux_is_period else aux >= 0
    colored &= ~esc
    if colored.any():
        pal = np.array(PERIOD_PALETTE, np.uint8)
        idx = (aux[colored] - 1) % len(pal) if aux_is_period else aux[colored] % len(pal)
        out[colored] = pal[idx]
    return out


def render_parameter(
    spec: GridSpec,
    max_iter: int = 800,
    period_max: int = 14,
    workers: int = 1,
    bailout_constant: float = escape.DEFAULT_BAILOUT_CONSTANT,
) -> ImageBuffer:
    """Parameter-plane image: grey ramp on escape level, period palette on
    hyperbolic pixels, black for undecided."""
    img = ImageBuffer(spec.nx, spec.ny)
    view = np.frombuffer(memoryview(img.rgb), np.uint8).reshape(spec.ny, spec.nx, 3)

    def do_band(band):
        j0, j1 = band
        res = classify_parameter_grid(
            spec,
            max_iter=max_iter,
            period_max=period_max,
            bailout_constant=bailout_constant,
            row0=j0,
            row1=j1,
        )
        view[j0:j1] = _paint(res.level, res.period, aux_is_period=True)

    _run_bands(do_band, _bands(spec.ny), workers)
    return img


def render_julia(
    t: complex,
    spec: GridSpec,
    max_iter: int = escape.RENDER_MAX_ITER,
    workers: int = 1,
    bailout_constant: float = escape.DEFAULT_BAILOUT_CONSTANT,
) -> ImageBuffer:
    """Dynamical-plane image: grey ramp on escape level, palette by
    convergence phase for points attracted to the finite cycle (if any),
    black for undecided."""
    cyc = cycles.find_attracting_cycle(t, bailout_constant=bailout_constant)
    pts = cyc.points(t) if cyc is not None else None
    img = ImageBuffer(spec.nx, spec.ny)
    view = np.frombuffer(memoryview(img.rgb), np.uint8).reshape(spec.ny, spec.nx, 3)

    def do_band(band):
        j0, j1 = band
        res = classify_julia_grid(
            t,
            spec,
            max_iter=max_iter,
            cycle_points=pts,
            bailout_constant=bailout_constant,
            row0=j0,
            row1=j1,
        )
        view[j0:j1] = _paint(res.level, res.phase, aux_is_period=False)

    _run_bands(do_band, _bands(spec.ny), workers)
    return img


def _run_bands(fn, bands, workers: int):
    if workers <= 1:
        for b in bands:
            fn(b)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(fn, bands))


def encode_ppm(img: ImageBuffer) -> bytes:
    """Binary PPM: 'P6\\n<nx> <ny>\\n255\\n' + raw RGB, top row first."""
    header = f"P6\n{img.nx} {img.ny}\n255\n".encode("ascii")
    return header + bytes(img.rgb)


def decode_ppm(data: bytes) -> ImageBuffer:
    if not data.startswith(b"P6\n"):
        raise ValueError("not a P6 PPM produced by this package")
    rest = data[3:]
    nl1 = rest.index(b"\n")
    dims = rest[:nl1].split()
    nx, ny = int(dims[0]), int(dims[1])
    rest = rest[nl1 + 1 :]
    nl2 = rest.index(b"\n")
    if rest[:nl2] != b"255":
        raise ValueError("unsupported maxval")
    raw = rest[nl2 + 1 :]
    if len(raw) != 3 * nx * ny:
        raise ValueError("truncated pixel data")
    return ImageBuffer(nx, ny, bytearray(raw))


def write_ppm(img: ImageBuffer, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_ppm(img))


def average_hash(img: ImageBuffer) -> int:
    """64-bit average hash of the luma image (perceptual regression key)."""
    arr = np.frombuffer(bytes(img.rgb), np.uint8).reshape(img.ny, img.nx, 3)
    luma = arr.astype(np.float64) @ np.array([0.299, 0.587, 0.114])
    cells = np.zeros((8, 8))
    ys = np.linspace(0, img.ny, 9).astype(int)
    xs = np.linspace(0, img.nx, 9).astype(int)
    for a in range(8):
        for b in range(8):
            block = luma[ys[a] : ys[a + 1], xs[b] : xs[b + 1]]
            cells[a, b] = block.mean() if block.size else 0.0
    bits = (cells >= cells.mean()).ravel()
    h = 0
    for bit in bits:
        h = (h << 1) | int(bit)
    return h


def rotate180(img: ImageBuffer) -> ImageBuffer:
    arr = np.frombuffer(bytes(img.rgb), np.uint8).reshape(img.ny, img.nx, 3)
    rot = arr[::-1, ::-1].copy()
    return ImageBuffer(img.nx, img.ny, bytearray(rot.tobytes()))
