"""Grayscale image I/O (PGM), output-to-source coordinate mapping, downscaling.

Images are plain ``(height, width)`` ``uint8`` numpy arrays, row-major.
"""

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .validation import ImageValidationError, check_image

HALF_PIXEL = "half_pixel"
ALIGN_CORNERS = "align_corners"
COORD_MODES = (HALF_PIXEL, ALIGN_CORNERS)

_WHITESPACE = b" \t\n\r\v\f"


class PGMFormatError(ImageValidationError):
    pass


def _header_tokens(data, count):
    # Returns ``count`` header tokens and the offset just past the last one.
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WHITESPACE:
            pos += 1
        if pos < n and data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        if start == pos:
            raise PGMFormatError("truncated PGM header")
        tokens.append(data[start:pos])
    return tokens, pos


def _parse_int(token, what):
    try:
        value = int(token.decode("ascii"))
    except (UnicodeDecodeError, ValueError):
        raise PGMFormatError(f"invalid {what} in PGM header: {token!r}") from None
    if value <= 0:
        raise PGMFormatError(f"{what} must be positive, got {value}")
    return value


def parse_pgm(data):
    """Decode P2 or P5 bytes into a ``uint8`` array."""
    tokens, pos = _header_tokens(data, 4)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise PGMFormatError(f"unsupported magic number {magic!r}; expected P2 or P5")
    width = _parse_int(tokens[1], "width")
    height = _parse_int(tokens[2], "height")
    maxval = _parse_int(tokens[3], "maxval")
    if maxval != 255:
        raise PGMFormatError(f"maxval must be 255, got {maxval}")
    npix = width * height

    if magic == b"P5":
        if pos >= len(data) or data[pos] not in _WHITESPACE:
            raise PGMFormatError("missing whitespace after PGM header")
        payload = data[pos + 1 : pos + 1 + npix]
        if len(payload) != npix:
            raise PGMFormatError(f"expected {npix} payload bytes, found {len(payload)}")
        return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()

    try:
        values = [int(t) for t in data[pos:].split()]
    except ValueError:
        raise PGMFormatError("non-integer sample in P2 payload") from None
    if len(values) != npix:
        raise PGMFormatError(f"expected {npix} samples, found {len(values)}")
    arr = np.array(values, dtype=np.int64)
    if arr.min() < 0 or arr.max() > 255:
        raise PGMFormatError("P2 sample out of range [0, 255]")
    return arr.astype(np.uint8).reshape(height, width)


def load_pgm(path):
    """Read a P2 (ASCII) or P5 (binary) PGM with maxval 255."""
    return parse_pgm(Path(path).read_bytes())


def encode_pgm(img):
    img = check_image(img)
    h, w = img.shape
    return b"P5\n%d %d\n255\n" % (w, h) + img.tobytes()


def save_pgm(img, path):
    """Write ``img`` as binary P5, maxval 255."""
    Path(path).write_bytes(encode_pgm(img))


@dataclass(frozen=True)
class SourceCoord:
    """Location of one output pixel in source-pixel units.

    ``x``/``u``/``dx`` run along rows, ``y``/``v``/``dy`` along columns.
    """

    x: float
    y: float
    u: int
    v: int
    dx: float
    dy: float


def _axis_positions(n_out, n_src, scale, mode):
    idx = np.arange(n_out, dtype=np.float64)
    if mode == HALF_PIXEL:
        return (idx + 0.5) / scale - 0.5
    if mode == ALIGN_CORNERS:
        if n_out == 1:
            return np.zeros(1)
        return idx * (n_src - 1) / (n_out - 1)
    raise ValueError(f"unknown coordinate mode {mode!r}; expected one of {COORD_MODES}")


def axis_coords(n_src, scale, mode=HALF_PIXEL):
    """Vectorised mapping along one axis.

    Returns ``(pos, base, frac)`` for every output index, where ``pos`` is the
    clamped source coordinate, ``base`` the lower neighbour in
    ``[0, n_src - 2]`` and ``frac = pos - base`` in ``[0, 1]``.
    """
    if n_src < 2:
        raise ImageValidationError("interpolation needs at least 2 source pixels per axis")
    pos = np.clip(_axis_positions(n_src * scale, n_src, scale, mode), 0.0, n_src - 1)
    base = np.clip(np.floor(pos).astype(np.intp), 0, n_src - 2)
    return pos, base, pos - base


def raw_axis_positions(n_src, scale, mode=HALF_PIXEL):
    """Unclamped source coordinates, as needed by wide kernels (bicubic)."""
    return _axis_positions(n_src * scale, n_src, scale, mode)


def map_output_coord(X, Y, scale, height, width, mode=HALF_PIXEL):
    """Map output pixel ``(X, Y)`` of a ``scale``-times upscale to the source grid."""
    if scale < 2:
        raise ValueError(f"scale must be >= 2, got {scale}")
    if not (0 <= X < scale * height and 0 <= Y < scale * width):
        raise ValueError(f"output coordinate ({X}, {Y}) out of range")

    def one(i, n):
        if mode == HALF_PIXEL:
            p = (i + 0.5) / scale - 0.5
        elif mode == ALIGN_CORNERS:
            p = i * (n - 1) / (n * scale - 1)
        else:
            raise ValueError(f"unknown coordinate mode {mode!r}")
        p = min(max(p, 0.0), n - 1)
        b = min(max(math.floor(p), 0), n - 2)
        return p, b, p - b

    x, u, dx = one(X, height)
    y, v, dy = one(Y, width)
    return SourceCoord(x=x, y=y, u=u, v=v, dx=dx, dy=dy)


def downscale(img, factor, mode="decimate"):
    """Shrink ``img`` by an integer ``factor``.

    ``decimate`` keeps pixel ``(factor*i, factor*j)``; ``box`` averages each
    ``factor x factor`` block, rounding half up.
    """
    img = check_image(img)
    if isinstance(factor, bool) or int(factor) != factor or factor < 2:
        raise ValueError(f"factor must be an integer >= 2, got {factor!r}")
    factor = int(factor)
    h, w = img.shape
    if h % factor or w % factor:
        raise ImageValidationError(f"image {h}x{w} is not divisible by factor {factor}")
    if mode == "decimate":
        return np.ascontiguousarray(img[::factor, ::factor])
    if mode == "box":
        n = factor * factor
        sums = img.astype(np.int64).reshape(h // factor, factor, w // factor, factor).sum(axis=(1, 3))
        return ((2 * sums + n) // (2 * n)).astype(np.uint8)
    raise ValueError(f"unknown downscale mode {mode!r}; expected 'decimate' or 'box'")
