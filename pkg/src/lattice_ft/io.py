"""Signal and image files for the command-line data path.

Signals are CSV files with one real per line (blank lines and ``#`` comments
are skipped).  Images are PGM, plain (P2) or raw (P5), 8 or 16 bit.  Gray
levels map to [0, 1] as value / maxval and come back by rounding half up.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError, UnsupportedFormat

__all__ = [
    "NormalizationDegenerate",
    "Scaling",
    "read_csv",
    "write_csv",
    "read_pgm",
    "write_pgm",
    "quantize",
    "minmax_scaling",
]


class NormalizationDegenerate(UserWarning):
    """Constant input: min-max scaling has nothing to stretch."""


@dataclass(frozen=True)
class Scaling:
    """u = (value - offset) / scale, and back."""

    offset: float = 0.0
    scale: float = 1.0

    def forward(self, values):
        return (np.asarray(values, dtype=float) - self.offset) / self.scale

    def backward(self, u):
        return np.asarray(u, dtype=float) * self.scale + self.offset

    def to_json(self):
        return {"offset": self.offset, "scale": self.scale}


def minmax_scaling(values):
    lo, hi = float(np.min(values)), float(np.max(values))
    if hi == lo:
        warnings.warn("constant input cannot be min-max scaled; mapping it to 0", NormalizationDegenerate, stacklevel=2)
        # scale 1 with offset lo sends every sample to exactly 0
        return Scaling(lo, 1.0)
    return Scaling(lo, hi - lo)


def read_csv(path):
    """One real per line; returns a float array."""
    values = []
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read signal: {exc}", source=str(path)) from None
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip().rstrip(",")
        if not text:
            continue
        try:
            value = float(text)
        except ValueError:
            raise ParseError(f"not a real number: {text!r}", lineno, 1, source=str(path)) from None
        if not np.isfinite(value):
            raise ParseError(f"not a finite number: {text!r}", lineno, 1, source=str(path))
        values.append(value)
    if not values:
        raise ParseError("signal file holds no samples", source=str(path))
    return np.array(values, dtype=float)


def write_csv(path, values):
    # repr round-trips every double exactly
    Path(path).write_text("".join(f"{float(v)!r}\n" for v in np.ravel(values)))


def _tokens(data, start, count, source):
    """``count`` whitespace-separated header/body tokens from byte ``start``, skipping comments."""
    out = []
    i = start
    n = len(data)
    while len(out) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i : i + 1] == b"#":
            while i < n and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        if i >= n:
            raise ParseError("PGM ends early", source=source)
        j = i
        while j < n and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
            j += 1
        out.append(data[i:j])
        i = j
    return out, i


def read_pgm(path):
    """Returns ``(gray levels as int array [rows, cols], maxval)``."""
    source = str(path)
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read image: {exc}", source=source) from None
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise UnsupportedFormat(f"{source}: only PGM P2/P5 images are supported, got {magic!r}")
    header, pos = _tokens(data, 2, 3, source)
    try:
        cols, rows, maxval = (int(t) for t in header)
    except ValueError:
        raise ParseError("bad PGM header", source=source) from None
    if cols < 1 or rows < 1 or not 1 <= maxval <= 65535:
        raise ParseError(f"bad PGM size {cols}x{rows} or maxval {maxval}", source=source)
    if magic == b"P2":
        body, _ = _tokens(data, pos, rows * cols, source)
        try:
            pixels = np.array([int(t) for t in body], dtype=np.int64)
        except ValueError:
            raise ParseError("non-integer PGM sample", source=source) from None
    else:
        # exactly one whitespace byte separates the header from the raster
        pos += 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = rows * cols * dtype.itemsize
        if len(data) - pos < need:
            raise ParseError("PGM raster is truncated", source=source)
        pixels = np.frombuffer(data, dtype=dtype, count=rows * cols, offset=pos).astype(np.int64)
    if pixels.min() < 0 or pixels.max() > maxval:
        raise ParseError("PGM sample exceeds maxval", source=source)
    return pixels.reshape(rows, cols), maxval


def quantize(u, maxval):
    """Gray levels from [0, 1] values, rounding half up."""
    return np.floor(np.clip(np.asarray(u, dtype=float), 0.0, 1.0) * maxval + 0.5).astype(np.int64)


def write_pgm(path, levels, maxval=255, plain=False):
    levels = np.asarray(levels, dtype=np.int64)
    rows, cols = levels.shape
    head = f"{'P2' if plain else 'P5'}\n{cols} {rows}\n{maxval}\n".encode()
    if plain:
        body = "\n".join(" ".join(str(v) for v in row) for row in levels).encode() + b"\n"
    else:
        body = levels.astype(">u2" if maxval > 255 else "u1").tobytes()
    Path(path).write_bytes(head + body)
