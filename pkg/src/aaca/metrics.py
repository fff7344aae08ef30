"""MSE / PSNR between a reference image and a reconstruction (peak 255)."""

import math
from dataclasses import dataclass

import numpy as np

from .validation import check_image, check_same_shape

PEAK = 255.0


@dataclass(frozen=True)
class QualityScore:
    mse: float
    psnr: float


def mse(a, b):
    a = check_image(a, name="a")
    b = check_image(b, name="b")
    check_same_shape(a, b)
    diff = a.astype(np.int64) - b.astype(np.int64)
    return float(np.sum(diff * diff, dtype=np.int64)) / diff.size


def psnr_from_mse(value):
    """``10*log10(255**2 / mse)``; ``inf`` when the error is zero."""
    if value < 0:
        raise ValueError(f"mse must be >= 0, got {value}")
    if value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / value)


def psnr(a, b):
    return psnr_from_mse(mse(a, b))


def score(reference, reconstruction):
    m = mse(reference, reconstruction)
    return QualityScore(mse=m, psnr=psnr_from_mse(m))
