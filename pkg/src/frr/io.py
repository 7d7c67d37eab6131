"""Binary PGM (P5) images and the raw CFLD complex-field format.

CFLD layout (little endian)::

    b"CFLD" | u32 version (=1) | u32 dims | u32 N | N**dims pairs of f64 (re, im), row-major

The spacing is not stored; fields are read back onto the default grid.
"""

from __future__ import annotations

import os
import struct
import tempfile
from contextlib import contextmanager

import numpy as np

from .errors import FormatError, InvalidArgumentError
from .fields import ComplexField, make_grid

CFLD_MAGIC = b"CFLD"
CFLD_VERSION = 1
_CFLD_HEADER = struct.Struct("<4sIII")


@contextmanager
def atomic_write(path):
    """Open a temporary file next to ``path`` and rename it into place on success."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _pgm_tokens(data: bytes, count: int):
    """Read ``count`` whitespace separated header tokens, skipping comments."""
    pos = 2
    tokens = []
    while len(tokens) < count:
        while pos < len(data) and (data[pos : pos + 1].isspace() or data[pos : pos + 1] == b"#"):
            if data[pos : pos + 1] == b"#":
                end = data.find(b"\n", pos)
                pos = len(data) if end < 0 else end + 1
            else:
                pos += 1
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise FormatError("truncated PGM header", offset=pos)
        token = data[start:pos]
        if not token.isdigit():
            raise FormatError(f"expected a decimal integer in PGM header, got {token[:16]!r}", offset=start)
        tokens.append(int(token))
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise FormatError("missing whitespace after PGM header", offset=pos)
    return tokens, pos + 1


def read_pgm(path) -> tuple[np.ndarray, int]:
    """Read a binary PGM file.

    Returns
    -------
    pixels : ndarray of float, shape (height, width)
        Intensities divided by ``maxval``, so in [0, 1].
    maxval : int
    """
    with open(path, "rb") as fh:
        data = fh.read()
    magic = data[:2]
    if magic == b"P2":
        raise FormatError("ASCII PGM (P2) is not supported; convert to binary P5", offset=0)
    if magic != b"P5":
        raise FormatError(f"not a binary PGM file (magic {magic!r})", offset=0)
    (width, height, maxval), start = _pgm_tokens(data, 3)
    if not 0 < maxval <= 65535:
        raise FormatError(f"PGM maxval must be in 1..65535, got {maxval}", offset=start - 1)
    if width <= 0 or height <= 0:
        raise FormatError(f"PGM dimensions must be positive, got {width}x{height}", offset=start - 1)
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    expected = width * height * dtype.itemsize
    payload = data[start : start + expected]
    if len(payload) < expected:
        raise FormatError(f"truncated PGM payload: expected {expected} bytes, found {len(payload)}", offset=start)
    pixels = np.frombuffer(payload, dtype=dtype).reshape(height, width)
    return pixels.astype(float) / maxval, maxval


def write_pgm(pixels, path, maxval: int = 255) -> None:
    """Write intensities in [0, 1] as a binary PGM with the given ``maxval``."""
    pixels = np.asarray(pixels, dtype=float)
    if pixels.ndim != 2:
        raise InvalidArgumentError(f"PGM images are 2D, got shape {pixels.shape}")
    if not 0 < maxval <= 65535:
        raise InvalidArgumentError(f"maxval must be in 1..65535, got {maxval}")
    if not np.all(np.isfinite(pixels)):
        raise InvalidArgumentError("cannot write non-finite pixels")
    levels = np.rint(np.clip(pixels, 0.0, 1.0) * maxval)
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    height, width = pixels.shape
    with atomic_write(path) as fh:
        fh.write(f"P5\n{width} {height}\n{maxval}\n".encode("ascii"))
        fh.write(levels.astype(dtype).tobytes())


def write_cfld(field: ComplexField, path) -> None:
    data = np.ascontiguousarray(field.samples, dtype="<c16")
    with atomic_write(path) as fh:
        fh.write(_CFLD_HEADER.pack(CFLD_MAGIC, CFLD_VERSION, field.dims, field.grid.n))
        fh.write(data.tobytes())


def read_cfld(path) -> ComplexField:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < _CFLD_HEADER.size:
        raise FormatError(f"file too short for a CFLD header: {len(data)} bytes", offset=len(data))
    magic, version, dims, n = _CFLD_HEADER.unpack_from(data)
    if magic != CFLD_MAGIC:
        raise FormatError(f"bad CFLD magic {magic!r}", offset=0)
    if version != CFLD_VERSION:
        raise FormatError(f"unsupported CFLD version {version}", offset=4)
    if dims not in (1, 2):
        raise FormatError(f"unsupported CFLD dims {dims}; only 1 and 2 are supported", offset=8)
    expected = _CFLD_HEADER.size + 16 * n**dims
    if len(data) != expected:
        raise FormatError(f"CFLD size mismatch: expected {expected} bytes, got {len(data)}")
    samples = np.frombuffer(data, dtype="<c16", offset=_CFLD_HEADER.size).reshape((n,) * dims)
    return ComplexField(make_grid(n, dims), samples)
