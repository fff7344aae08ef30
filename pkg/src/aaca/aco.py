"""Pheromone-matrix construction by an ant colony walking over the image.

Ants move between 8-connected pixels with the pseudorandom-proportional rule,
steered by the normalised local intensity variation (the heuristic) and the
pheromone already laid.  Every arrival triggers a local decay toward
``tau_init``; after each iteration the pixels toured by at least one ant get
evaporation plus a deposit equal to the touring ant's mean heuristic.

Randomness comes from one ``numpy`` PCG64 stream seeded with
``AcoParams.seed``.  Per iteration it is consumed in this order: ant placement
(one ``choice`` call), then for every step and every ant in turn either the
transition draws (``q``, plus one more uniform when exploring) or the
relocation draw.
"""

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .validation import check_image

EMPIRICAL = "empirical"
THEORETICAL = "theoretical"
VMAX_MODES = (EMPIRICAL, THEORETICAL)

# N, NE, E, SE, S, SW, W, NW; row index grows southwards
NEIGHBOR_OFFSETS = ((-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1))


@dataclass(frozen=True)
class AcoParams:
    alpha: float = 1.0
    beta: float = 2.0
    tau_init: float = 1e-4
    phi: float = 1e-5
    rho: float = 0.1
    q0: float = 0.7
    iterations: int = 4
    steps_per_ant: int = 40
    ants: int = 0  # 0: round(sqrt(width * height))
    memory_size: int = 0  # 0: ceil(width * height / ants)
    seed: int = 0
    vmax_mode: str = EMPIRICAL

    def __post_init__(self):
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not self.beta >= self.alpha:
            raise ValueError(f"beta must be >= alpha, got beta={self.beta}, alpha={self.alpha}")
        if not (self.tau_init > 0 and math.isfinite(self.tau_init)):
            raise ValueError(f"tau_init must be finite and > 0, got {self.tau_init}")
        for name in ("phi", "rho"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {value}")
        if not 0 <= self.q0 <= 1:
            raise ValueError(f"q0 must lie in [0, 1], got {self.q0}")
        if not 1 <= self.iterations <= 10:
            raise ValueError(f"iterations must lie in [1, 10], got {self.iterations}")
        if self.steps_per_ant < 0:
            raise ValueError(f"steps_per_ant must be >= 0, got {self.steps_per_ant}")
        if self.ants < 0 or self.memory_size < 0:
            raise ValueError("ants and memory_size must be >= 0 (0 selects the default)")
        if self.vmax_mode not in VMAX_MODES:
            raise ValueError(f"vmax_mode must be one of {VMAX_MODES}, got {self.vmax_mode!r}")


@dataclass(frozen=True)
class HeuristicField:
    eta: np.ndarray
    vmax: float


@dataclass(frozen=True)
class PheromoneField:
    """Finished pheromone lattice, read-only.

    ``visits`` counts how many tour entries landed on each pixel over all
    iterations; pixels with zero visits still hold exactly ``tau_init``.
    """

    tau: np.ndarray
    visits: np.ndarray
    n_ants: int
    memory_size: int

    @property
    def shape(self):
        return self.tau.shape


@dataclass
class AntState:
    position: tuple
    memory: deque
    tour: list = field(default_factory=list)

    @classmethod
    def start(cls, position, memory_size):
        ant = cls(position=position, memory=deque(maxlen=memory_size))
        ant.memory.append(position)
        return ant

    def move_to(self, pixel, record=True):
        self.position = pixel
        self.memory.append(pixel)
        if record:
            self.tour.append(pixel)


def vc_map(img):
    """Intensity variation of every pixel over its 8-neighbourhood.

    Sum of absolute differences across the four lines through the pixel
    (two diagonals, the row, the column); borders use edge replication.
    """
    p = np.pad(check_image(img).astype(np.int64), 1, mode="edge")
    c = slice(1, -1)
    up, down, left, right = slice(None, -2), slice(2, None), slice(None, -2), slice(2, None)
    return (
        np.abs(p[up, left] - p[down, right])
        + np.abs(p[down, left] - p[up, right])
        + np.abs(p[c, left] - p[c, right])
        + np.abs(p[up, c] - p[down, c])
    ).astype(np.float64)


def vc(img, i, j):
    img = check_image(img)
    h, w = img.shape
    if not (0 <= i < h and 0 <= j < w):
        raise IndexError(f"pixel ({i}, {j}) outside {h}x{w} image")

    def P(r, c):
        return int(img[min(max(r, 0), h - 1), min(max(c, 0), w - 1)])

    return float(
        abs(P(i - 1, j - 1) - P(i + 1, j + 1))
        + abs(P(i + 1, j - 1) - P(i - 1, j + 1))
        + abs(P(i, j - 1) - P(i, j + 1))
        + abs(P(i - 1, j) - P(i + 1, j))
    )


def heuristic_field(img, mode=EMPIRICAL):
    """Normalised variation ``eta = vc / vmax`` in [0, 1].

    ``empirical`` divides by the image's own maximum variation (1 for a flat
    image); ``theoretical`` by the largest possible value, 4 * 255.
    """
    v = vc_map(img)
    if mode == EMPIRICAL:
        vmax = float(v.max())
        if vmax == 0:
            vmax = 1.0
    elif mode == THEORETICAL:
        vmax = 4.0 * 255.0
    else:
        raise ValueError(f"unknown vmax mode {mode!r}")
    return HeuristicField(eta=v / vmax, vmax=vmax)


def default_ant_count(img):
    h, w = np.shape(img)
    return max(1, int(math.floor(math.sqrt(w * h) + 0.5)))


def default_memory_size(img, k):
    if k < 1:
        raise ValueError(f"ant count must be >= 1, got {k}")
    h, w = np.shape(img)
    return -(-(w * h) // k)


def admissible_neighbors(ant, shape, visited=()):
    """8-connected in-bounds neighbours not in the ant's memory nor in ``visited``.

    ``visited`` is any container of ``(row, col)`` tuples (pixels visited by
    any ant this iteration).  Order follows ``NEIGHBOR_OFFSETS``.
    """
    h, w = shape
    i, j = ant.position
    out = []
    for di, dj in NEIGHBOR_OFFSETS:
        r, c = i + di, j + dj
        if 0 <= r < h and 0 <= c < w:
            p = (r, c)
            if p not in visited and p not in ant.memory:
                out.append(p)
    return out


def transition_probabilities(candidates, tau, eta, params):
    """Exploration-branch probabilities over ``candidates``.

    Proportional to ``tau**alpha * eta**beta``; uniform when every weight is 0.
    """
    weights = np.array(
        [tau[p] ** params.alpha * eta[p] ** params.beta for p in candidates], dtype=np.float64
    )
    total = weights.sum()
    if total <= 0:
        return np.full(len(candidates), 1.0 / len(candidates))
    return weights / total


def transition_choose(candidates, tau, eta, params, rng):
    """Pick the next pixel with the pseudorandom-proportional rule.

    With probability ``q0`` take the candidate maximising ``tau * eta**beta``
    (first in enumeration order on ties); otherwise sample from
    ``transition_probabilities``.
    """
    if not candidates:
        raise ValueError("no admissible neighbour to move to")
    q = rng.random()
    if q <= params.q0:
        best, best_score = candidates[0], -1.0
        for p in candidates:
            s = tau[p] * eta[p] ** params.beta
            if s > best_score:
                best, best_score = p, s
        return best
    weights = [tau[p] ** params.alpha * eta[p] ** params.beta for p in candidates]
    total = sum(weights)
    r = rng.random()
    if total <= 0:
        return candidates[min(int(r * len(candidates)), len(candidates) - 1)]
    target = r * total
    acc = 0.0
    for p, wgt in zip(candidates, weights):
        acc += wgt
        if target < acc:
            return p
    # rounding left target == total: fall back to the last positive weight
    return next(p for p, wgt in zip(reversed(candidates), reversed(weights)) if wgt > 0)


def local_update(tau, pixel, params):
    tau[pixel] = (1.0 - params.phi) * tau[pixel] + params.phi * params.tau_init


def global_update(tau, tours, eta, params):
    """Evaporate and deposit on every pixel toured by at least one ant.

    Each ant deposits the mean heuristic of its own tour on the pixels it
    toured; pixels no ant toured are left untouched.
    """
    deposit = np.zeros(tau.shape, dtype=np.float64)
    touched = np.zeros(tau.shape, dtype=bool)
    for tour in tours:
        if not tour:
            continue
        rows, cols = zip(*set(tour))
        # mean over tour entries, repeats included
        amount = float(np.mean([eta[p] for p in tour]))
        np.add.at(deposit, (np.array(rows), np.array(cols)), amount)
        touched[rows, cols] = True
    tau[touched] = (1.0 - params.rho) * tau[touched] + params.rho * deposit[touched]


def _relocate(ant, visited, closed, width, rng):
    free = np.flatnonzero(~closed)
    if free.size == 0:
        return
    pixel = divmod(int(free[rng.integers(free.size)]), width)
    ant.move_to(pixel, record=False)
    visited.add(pixel)
    closed[pixel[0] * width + pixel[1]] = True


def construct_pheromone(img, params=None, heuristic=None, tours_out=None):
    """Run the colony over ``img`` and return its ``PheromoneField``.

    Each iteration places the ants on distinct random pixels, then advances
    every ant one step at a time, ``steps_per_ant`` rounds, ants in index
    order within a round.  A pixel entered by any ant is closed to all ants
    for the rest of the iteration.  An ant with no admissible neighbour jumps
    to a random open pixel; the jump uses up its step and lays no pheromone.

    If ``tours_out`` is a list, each iteration's per-ant tours are appended.
    """
    img = check_image(img)
    params = params or AcoParams()
    h, w = img.shape
    heur = heuristic if heuristic is not None else heuristic_field(img, params.vmax_mode)
    eta = heur.eta
    k = params.ants or default_ant_count(img)
    mem = params.memory_size or default_memory_size(img, k)
    rng = np.random.default_rng(params.seed)

    tau = np.full((h, w), params.tau_init, dtype=np.float64)
    visits = np.zeros((h, w), dtype=np.int64)

    for _ in range(params.iterations):
        starts = rng.choice(h * w, size=k, replace=k > h * w)
        ants = [AntState.start(divmod(int(s), w), mem) for s in starts]
        visited = {a.position for a in ants}
        closed = np.zeros(h * w, dtype=bool)
        closed[starts] = True
        for _step in range(params.steps_per_ant):
            for ant in ants:
                candidates = admissible_neighbors(ant, (h, w), visited)
                if not candidates:
                    _relocate(ant, visited, closed, w, rng)
                    continue
                nxt = transition_choose(candidates, tau, eta, params, rng)
                ant.move_to(nxt)
                visited.add(nxt)
                closed[nxt[0] * w + nxt[1]] = True
                local_update(tau, nxt, params)
        tours = [a.tour for a in ants]
        if tours_out is not None:
            tours_out.append(tours)
        for tour in tours:
            for p in tour:
                visits[p] += 1
        global_update(tau, tours, eta, params)

    tau.setflags(write=False)
    visits.setflags(write=False)
    return PheromoneField(tau=tau, visits=visits, n_ants=k, memory_size=mem)


def pheromone_to_csv(tau):
    """Row-major CSV, one image row per line, shortest round-trip float repr."""
    return "".join(",".join(repr(float(t)) for t in row) + "\n" for row in np.asarray(tau))


def save_pheromone_csv(tau, path):
    with open(path, "w") as fh:
        fh.write(pheromone_to_csv(tau))


def load_pheromone_csv(path):
    tau = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    if not np.all(np.isfinite(tau)) or np.any(tau <= 0):
        raise ValueError(f"{path}: pheromone values must be finite and > 0")
    return tau
