"""Max/mean global weighting over the four pheromone values around a site.

The four boosted pheromone values are split into equality classes (values
within ``eps`` of their sorted neighbour chain together).  The class-size
multiset decides the pattern, and the pattern decides the rule:

=============  ===========  ======
class sizes    pattern      weight
=============  ===========  ======
{4}            ALL_EQUAL    mean
{3, 1}         THREE_ONE    max
{2, 2}         TWO_TWO      max
{2, 1, 1}      TWO_ONE_ONE  max
{1, 1, 1, 1}   ALL_DISTINCT mean
=============  ===========  ======
"""

import enum

import numpy as np

DEFAULT_EPS = 1e-12


class WeightPattern(enum.Enum):
    ALL_EQUAL = "AllEqual"
    THREE_ONE = "ThreeOne"
    TWO_TWO = "TwoTwo"
    TWO_ONE_ONE = "TwoOneOne"
    ALL_DISTINCT = "AllDistinct"


_MEAN_PATTERNS = frozenset({WeightPattern.ALL_EQUAL, WeightPattern.ALL_DISTINCT})

_BY_SIZES = {
    (4,): WeightPattern.ALL_EQUAL,
    (3, 1): WeightPattern.THREE_ONE,
    (2, 2): WeightPattern.TWO_TWO,
    (2, 1, 1): WeightPattern.TWO_ONE_ONE,
    (1, 1, 1, 1): WeightPattern.ALL_DISTINCT,
}


def boost(tau):
    """Pheromone to weight: ``exp(tau)``. Works on scalars and arrays."""
    return np.exp(tau)


def class_sizes(group, eps=DEFAULT_EPS):
    """Sizes of the equality classes of ``group``, largest first."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    values = sorted(float(p) for p in group)
    if len(values) != 4:
        raise ValueError(f"a pheromone group has exactly 4 values, got {len(values)}")
    sizes = [1]
    for prev, cur in zip(values, values[1:]):
        if cur - prev <= eps:
            sizes[-1] += 1
        else:
            sizes.append(1)
    return tuple(sorted(sizes, reverse=True))


def classify(group, eps=DEFAULT_EPS):
    return _BY_SIZES[class_sizes(group, eps)]


def global_weight(group, eps=DEFAULT_EPS):
    values = [float(p) for p in group]
    if classify(values, eps) in _MEAN_PATTERNS:
        return sum(values) / 4.0
    return max(values)


def global_weight_map(groups, eps=DEFAULT_EPS):
    """Vectorised ``global_weight`` over an array of shape ``(..., 4)``."""
    groups = np.asarray(groups, dtype=np.float64)
    s = np.sort(groups, axis=-1)
    breaks = np.count_nonzero(np.diff(s, axis=-1) > eps, axis=-1)
    use_mean = (breaks == 0) | (breaks == 3)
    # same summation order as global_weight so both paths agree bit for bit
    mean = (groups[..., 0] + groups[..., 1] + groups[..., 2] + groups[..., 3]) / 4.0
    return np.where(use_mean, mean, s[..., -1])
