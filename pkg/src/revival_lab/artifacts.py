"""Writers (and a PGM reader) for the run artifacts.

* series CSV: ``t,re_A,im_A,abs_A2``
* events CSV: ``t,height,fraction`` with fraction ``p/q`` or empty
* carpet: binary 16-bit PGM (P5, maxval 65535, big-endian), row 0 = first time

Floats are written with ``repr``, the shortest string that round-trips.
"""

from __future__ import annotations

import csv
import os
import re
from pathlib import Path

import numpy as np

from .dynamics import ComplexSeries, DensityGrid

__all__ = [
    "PGM_MAXVAL",
    "format_float",
    "format_fraction",
    "write_series_csv",
    "write_events_csv",
    "quantize_density",
    "write_carpet_pgm",
    "read_pgm",
]

PGM_MAXVAL = 65535


def format_float(x) -> str:
    return repr(float(x))


def format_fraction(frac) -> str:
    return "" if frac is None else f"{frac.numerator}/{frac.denominator}"


def _atomic_write(path, write):
    """Write via a sibling temp file so a failure never leaves a partial artifact."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".part")
    try:
        write(tmp)
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    return path


def _write_rows(path, header, rows):
    def write(target):
        with open(target, "w", newline="", encoding="ascii") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)

    return _atomic_write(path, write)


def write_series_csv(series: ComplexSeries, path) -> Path:
    abs2 = series.abs2
    rows = (
        (format_float(t), format_float(a.real), format_float(a.imag), format_float(h))
        for t, a, h in zip(series.times, series.values, abs2)
    )
    return _write_rows(path, ("t", "re_A", "im_A", "abs_A2"), rows)


def write_events_csv(events, path) -> Path:
    rows = ((format_float(e.t), format_float(e.height), format_fraction(e.fraction)) for e in events)
    return _write_rows(path, ("t", "height", "fraction"), rows)


def quantize_density(grid: DensityGrid) -> np.ndarray:
    """Map densities onto 0..65535, scaled by the global maximum of the grid."""
    values = np.asarray(grid.values, dtype=float)
    vmax = float(values.max())
    if vmax <= 0.0:
        return np.zeros(values.shape, dtype=np.uint16)
    return np.rint(values / vmax * PGM_MAXVAL).astype(np.uint16)


def write_carpet_pgm(grid: DensityGrid, path) -> Path:
    pixels = quantize_density(grid)
    height, width = pixels.shape
    header = f"P5\n{width} {height}\n{PGM_MAXVAL}\n".encode("ascii")

    def write(target):
        with open(target, "wb") as fh:
            fh.write(header)
            fh.write(pixels.astype(">u2").tobytes())

    return _atomic_write(path, write)


_PGM_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n)*(\S+)")


def read_pgm(path) -> np.ndarray:
    """Read a binary PGM (8- or 16-bit) into a (rows, cols) integer array."""
    data = Path(path).read_bytes()
    pos = 0
    tokens = []
    for _ in range(4):
        m = _PGM_TOKEN.match(data, pos)
        if m is None:
            raise ValueError(f"{path}: truncated PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    if tokens[0] != b"P5":
        raise ValueError(f"{path}: not a binary PGM (magic {tokens[0]!r})")
    width, height, maxval = (int(tok) for tok in tokens[1:])
    pos += 1  # single whitespace byte after maxval
    dtype = ">u2" if maxval > 255 else "u1"
    count = width * height
    pixels = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
    return pixels.reshape(height, width).astype(np.uint16 if maxval > 255 else np.uint8)
