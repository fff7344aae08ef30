"""Input checks shared by the functional API and the estimators."""

import numbers

import numpy as np


class ImageValidationError(ValueError):
    pass


def check_image(X, min_size=1, name="image"):
    """Return ``X`` as a C-contiguous 2-D ``uint8`` array.

    Integer or integral-valued float input is accepted as long as every value
    lies in [0, 255]; anything else raises ``ImageValidationError``.
    """
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ImageValidationError(f"{name} must be 2-D (height, width), got shape {arr.shape}")
    h, w = arr.shape
    if h < min_size or w < min_size:
        raise ImageValidationError(f"{name} must be at least {min_size}x{min_size}, got {h}x{w}")
    if arr.dtype == np.uint8:
        return np.ascontiguousarray(arr)
    if arr.dtype.kind not in "iuf" or arr.dtype.kind == "b":
        raise ImageValidationError(f"{name} has unsupported dtype {arr.dtype}")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)) or np.any(arr != np.round(arr)):
            raise ImageValidationError(f"{name} must hold integral intensities")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ImageValidationError(f"{name} intensities must lie in [0, 255]")
    return np.ascontiguousarray(arr, dtype=np.uint8)


def check_scale(scale):
    if isinstance(scale, bool) or not isinstance(scale, numbers.Integral):
        raise ValueError(f"scale must be an integer, got {scale!r}")
    if scale < 2:
        raise ValueError(f"scale must be >= 2, got {scale}")
    return int(scale)


def check_pheromone(tau, shape):
    tau = np.asarray(tau, dtype=np.float64)
    if tau.shape != tuple(shape):
        raise ImageValidationError(
            f"pheromone field shape {tau.shape} does not match image shape {tuple(shape)}"
        )
    if not np.all(np.isfinite(tau)) or np.any(tau <= 0):
        raise ImageValidationError("pheromone values must be finite and > 0")
    return tau


def check_same_shape(a, b):
    if a.shape != b.shape:
        raise ImageValidationError(f"dimension mismatch: {a.shape} vs {b.shape}")
