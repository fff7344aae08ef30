"""Integer-factor upscalers: nearest, bilinear, bicubic, OBACA and AACA.

All methods share the output-to-source mapping in :mod:`aaca.image`, round
half up and clamp to [0, 255].  OBACA and AACA additionally read a pheromone
field with the source image's shape; its values are boosted with ``exp``
before use.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .image import HALF_PIXEL, axis_coords, raw_axis_positions
from .validation import check_image, check_pheromone, check_scale
from .weighting import DEFAULT_EPS, boost, global_weight_map

METHODS = ("nearest", "bilinear", "bicubic", "obaca", "aaca")
PHEROMONE_METHODS = frozenset({"obaca", "aaca"})


def round_clamp(values):
    """Round half up, clamp to [0, 255], return ``uint8``."""
    return np.clip(np.floor(np.asarray(values, dtype=np.float64) + 0.5), 0, 255).astype(np.uint8)


class _Sites:
    """The four source corners and bilinear weights of every output pixel.

    Corner arrays are indexed ``[output_row, output_col]``.  The naming
    follows the blend ``w4*P(u,v) + w2*P(u,v+1) + w3*P(u+1,v) + w1*P(u+1,v+1)``.
    """

    def __init__(self, shape, scale, mode=HALF_PIXEL, rows=None):
        h, w = shape
        _, u, dx = axis_coords(h, scale, mode)
        _, v, dy = axis_coords(w, scale, mode)
        if rows is not None:
            u, dx = u[rows], dx[rows]
        self.u, self.v = u[:, None], v[None, :]
        dx, dy = dx[:, None], dy[None, :]
        self.w1 = dx * dy
        self.w2 = (1.0 - dx) * dy
        self.w3 = dx * (1.0 - dy)
        self.w4 = (1.0 - dx) * (1.0 - dy)

    def corners(self, a):
        """Values of ``a`` at ``(u,v), (u,v+1), (u+1,v), (u+1,v+1)``."""
        u, v = self.u, self.v
        return a[u, v], a[u, v + 1], a[u + 1, v], a[u + 1, v + 1]

    def weights(self):
        return self.w4, self.w2, self.w3, self.w1


def _blend(values, weights):
    # normalised so that uniformly rescaled weights give bit-identical output
    num = sum(wi * pi for wi, pi in zip(weights, values))
    den = sum(weights)
    return num / den


def blend_site(corners, dx, dy, boosts=None, normalize=True):
    """Unrounded estimate at one site from its four corner values.

    ``corners`` and ``boosts`` are ordered ``(u,v), (u,v+1), (u+1,v),
    (u+1,v+1)``; ``dx`` runs along rows, ``dy`` along columns.  Without
    ``boosts`` this is plain bilinear; with them it is the OBACA blend.
    """
    w = ((1.0 - dx) * (1.0 - dy), (1.0 - dx) * dy, dx * (1.0 - dy), dx * dy)
    values = tuple(float(c) for c in corners)
    if boosts is None:
        return _blend(values, w)
    p = tuple(float(b) for b in boosts)
    if normalize:
        top = max(p)
        return _blend(values, tuple((pi / top) * wi for pi, wi in zip(p, w)))
    return sum(pi * wi * vi for pi, wi, vi in zip(p, w, values))


def _row_chunks(n_rows, n_jobs):
    n_jobs = max(1, min(int(n_jobs), n_rows))
    bounds = np.linspace(0, n_rows, n_jobs + 1).astype(int)
    return [np.arange(a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _by_rows(fn, shape, scale, n_jobs):
    """Evaluate ``fn(rows)`` over output-row chunks and stack the results."""
    n_out = shape[0] * scale
    if n_jobs is None or n_jobs == 1:
        return fn(None)
    chunks = _row_chunks(n_out, n_jobs)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(fn, chunks))
    return np.concatenate(parts, axis=0)


def bilinear_values(img, scale, mode=HALF_PIXEL, rows=None):
    """Unrounded bilinear estimate at every output site (``float64``)."""
    img = check_image(img, min_size=2)
    sites = _Sites(img.shape, scale, mode, rows)
    return _blend(sites.corners(img.astype(np.float64)), sites.weights())


def bilinear_weights(shape, scale, mode=HALF_PIXEL):
    """``(w4, w2, w3, w1)`` broadcast to the full output grid."""
    sites = _Sites(shape, scale, mode)
    out_shape = (shape[0] * scale, shape[1] * scale)
    return tuple(np.broadcast_to(w, out_shape) for w in sites.weights())


def bilinear(img, scale, mode=HALF_PIXEL, n_jobs=1):
    img = check_image(img, min_size=2)
    scale = check_scale(scale)
    return round_clamp(_by_rows(lambda r: bilinear_values(img, scale, mode, r), img.shape, scale, n_jobs))


def obaca_values(img, tau, scale, normalize=True, mode=HALF_PIXEL, rows=None):
    img = check_image(img, min_size=2)
    tau = check_pheromone(tau, img.shape)
    sites = _Sites(img.shape, scale, mode, rows)
    p = sites.corners(boost(tau))
    values = sites.corners(img.astype(np.float64))
    if normalize:
        # scale by the group max first: equal boosts become exactly 1.0
        top = np.maximum(np.maximum(p[0], p[1]), np.maximum(p[2], p[3]))
        pw = tuple((pi / top) * wi for pi, wi in zip(p, sites.weights()))
        return _blend(values, pw)
    return sum(pi * wi * vi for pi, wi, vi in zip(p, sites.weights(), values))


def obaca(img, tau, scale, normalize=True, mode=HALF_PIXEL, n_jobs=1):
    """Per-corner pheromone weighting of the bilinear blend.

    Each corner's weight is multiplied by that corner's boosted pheromone.
    With ``normalize`` the products are renormalised to sum to one; without
    it they are applied as-is, which scales the output by the local mean
    pheromone level.
    """
    img = check_image(img, min_size=2)
    scale = check_scale(scale)
    return round_clamp(
        _by_rows(lambda r: obaca_values(img, tau, scale, normalize, mode, r), img.shape, scale, n_jobs)
    )


def aaca_global_weights(tau, scale, eps=DEFAULT_EPS, mode=HALF_PIXEL, rows=None):
    """Global weight ``w_g`` at every output site."""
    tau = np.asarray(tau, dtype=np.float64)
    sites = _Sites(tau.shape, scale, mode, rows)
    groups = np.stack(np.broadcast_arrays(*sites.corners(boost(tau))), axis=-1)
    return global_weight_map(groups, eps)


def aaca_values(img, tau, scale, eps=DEFAULT_EPS, mode=HALF_PIXEL, rows=None):
    img = check_image(img, min_size=2)
    tau = check_pheromone(tau, img.shape)
    return aaca_global_weights(tau, scale, eps, mode, rows) * bilinear_values(img, scale, mode, rows)


def aaca(img, tau, scale, eps=DEFAULT_EPS, mode=HALF_PIXEL, n_jobs=1):
    """Bilinear blend multiplied by the site's max/mean global weight."""
    img = check_image(img, min_size=2)
    scale = check_scale(scale)
    check_pheromone(tau, img.shape)
    return round_clamp(
        _by_rows(lambda r: aaca_values(img, tau, scale, eps, mode, r), img.shape, scale, n_jobs)
    )


def nearest(img, scale, mode=HALF_PIXEL):
    img = check_image(img)
    scale = check_scale(scale)
    h, w = img.shape

    def idx(n):
        pos = np.clip(raw_axis_positions(n, scale, mode), 0, n - 1)
        return np.minimum(np.floor(pos + 0.5).astype(np.intp), n - 1)

    return np.ascontiguousarray(img[idx(h)[:, None], idx(w)[None, :]])


def keys_kernel(t, a=-0.5):
    t = np.abs(np.asarray(t, dtype=np.float64))
    t2, t3 = t * t, t * t * t
    near = (a + 2) * t3 - (a + 3) * t2 + 1
    far = a * t3 - 5 * a * t2 + 8 * a * t - 4 * a
    return np.where(t <= 1, near, np.where(t < 2, far, 0.0))


def _cubic_axis(n, scale, mode, a):
    # (taps, weights), each (n*scale, 4); taps edge-replicated
    pos = raw_axis_positions(n, scale, mode)
    base = np.floor(pos).astype(np.intp)
    offsets = np.arange(-1, 3)
    taps = base[:, None] + offsets[None, :]
    weights = keys_kernel(pos[:, None] - taps, a)
    return np.clip(taps, 0, n - 1), weights


def bicubic_values(img, scale, mode=HALF_PIXEL, a=-0.5):
    img = check_image(img)
    h, w = img.shape
    rt, rw = _cubic_axis(h, scale, mode, a)
    ct, cw = _cubic_axis(w, scale, mode, a)
    src = img.astype(np.float64)
    # separable: columns first, then rows
    cols = np.einsum("hok,ok->ho", src[:, ct], cw)
    return np.einsum("rkw,rk->rw", cols[rt], rw)


def bicubic(img, scale, mode=HALF_PIXEL, a=-0.5):
    """Keys cubic convolution (``a = -0.5``) with edge replication."""
    img = check_image(img)
    scale = check_scale(scale)
    return round_clamp(bicubic_values(img, scale, mode, a))


def upscale(img, scale, method="bilinear", pheromone=None, *, obaca_normalize=True,
            eps=DEFAULT_EPS, mode=HALF_PIXEL, n_jobs=1):
    """Dispatch to one of ``METHODS``; ``pheromone`` is a tau array or field."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method in PHEROMONE_METHODS:
        if pheromone is None:
            raise ValueError(f"method {method!r} needs a pheromone field")
        tau = getattr(pheromone, "tau", pheromone)
        if method == "obaca":
            return obaca(img, tau, scale, obaca_normalize, mode, n_jobs)
        return aaca(img, tau, scale, eps, mode, n_jobs)
    if method == "bilinear":
        return bilinear(img, scale, mode, n_jobs)
    if method == "bicubic":
        return bicubic(img, scale, mode)
    return nearest(img, scale, mode)
