"""Belief-update probability functions.

Agents hold an integer belief strength in [0, 6] toward a single
proposition (0 = strong disbelief, 6 = strong belief).  Three families
of update rules decide whether an agent adopts an incoming belief:

* simple contagion  -- flat per-contact probability ``p``
* complex contagion -- deterministic adoption once the fraction of
  neighbors currently holding the incoming belief reaches ``alpha``
* cognitive contagion -- probability is a distance kernel beta(b_u, b)
  of the gap between the agent's current belief and the incoming one;
  available kernels are a hard threshold, an inverse-linear decay, and
  a sigmoid

Everything in this module is a pure function of its arguments: no
state, no RNG, safe to call from any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

BELIEF_MIN = 0
BELIEF_MAX = 6
NUM_LEVELS = BELIEF_MAX - BELIEF_MIN + 1
BELIEF_LEVELS = tuple(range(BELIEF_MIN, BELIEF_MAX + 1))

# math.exp overflows past ~709; the kernel saturates long before that.
_EXP_CLIP = 700.0


class UnsupportedModelError(ValueError):
    """Raised when an operation does not apply to the given contagion model."""


def _check_belief(b) -> int:
    if isinstance(b, (bool, float)) and not float(b).is_integer():
        raise ValueError(f"belief strength must be an integer, got {b!r}")
    b = int(b)
    if not BELIEF_MIN <= b <= BELIEF_MAX:
        raise ValueError(
            f"belief strength must be in [{BELIEF_MIN}, {BELIEF_MAX}], got {b}"
        )
    return b


@dataclass(frozen=True)
class SimpleContagion:
    """Disease-style rule: every received message is adopted with flat probability p."""

    p: float

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"simple contagion p must be in (0, 1), got {self.p}")


@dataclass(frozen=True)
class ComplexContagion:
    """Peer-pressure rule: adopt iff the believing-neighbor fraction reaches alpha."""

    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"complex contagion alpha must be in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class ThresholdCognitive:
    """Hard bounded-confidence kernel: adopt iff |b_u - b| <= gamma."""

    gamma: int

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"threshold gamma must be >= 0, got {self.gamma}")


@dataclass(frozen=True)
class LinearCognitive:
    """Inverse-linear kernel 1 / (gamma + alpha * |b_u - b|), clamped to [0, 1]."""

    gamma: float
    alpha: float

    def __post_init__(self):
        if self.gamma < 0 or self.alpha < 0:
            raise ValueError(
                f"linear kernel parameters must be >= 0, got gamma={self.gamma}, alpha={self.alpha}"
            )
        if self.gamma == 0 and self.alpha == 0:
            raise ValueError("linear kernel needs gamma > 0 or alpha > 0")


@dataclass(frozen=True)
class SigmoidCognitive:
    """Sigmoid kernel 1 / (1 + exp(alpha * (|b_u - b| - gamma)))."""

    alpha: float
    gamma: float

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"sigmoid alpha must be >= 0, got {self.alpha}")


ContagionModel = Union[
    SimpleContagion, ComplexContagion, ThresholdCognitive, LinearCognitive, SigmoidCognitive
]
CognitiveModel = (ThresholdCognitive, LinearCognitive, SigmoidCognitive)

# Gullible / normal / stubborn parameterizations for each kernel family.
LINEAR_PRESETS = {
    "gullible": LinearCognitive(gamma=1.0, alpha=0.0),
    "normal": LinearCognitive(gamma=1.0, alpha=1.0),
    "stubborn": LinearCognitive(gamma=10.0, alpha=20.0),
}
THRESHOLD_PRESETS = {
    "gullible": ThresholdCognitive(gamma=6),
    "normal": ThresholdCognitive(gamma=3),
    "stubborn": ThresholdCognitive(gamma=1),
}
SIGMOID_PRESETS = {
    "gullible": SigmoidCognitive(alpha=1.0, gamma=7.0),
    "normal": SigmoidCognitive(alpha=2.0, gamma=3.0),
    "stubborn": SigmoidCognitive(alpha=4.0, gamma=2.0),
}

# Defensive cognitive contagion: the stubborn sigmoid.  Near-certain adoption
# at distance <= 1, coin flip at 2, ~0.018 at 3, effectively zero beyond.
DCC = SIGMOID_PRESETS["stubborn"]


def sigmoid_beta(b_u: int, b: int, alpha: float, gamma: float) -> float:
    """Sigmoid adoption probability 1 / (1 + e^(alpha * (|b_u - b| - gamma)))."""
    d = abs(_check_belief(b_u) - _check_belief(b))
    x = alpha * (d - gamma)
    if x > _EXP_CLIP:
        return 0.0
    if x < -_EXP_CLIP:
        return 1.0
    return 1.0 / (1.0 + math.exp(x))


def linear_beta(b_u: int, b: int, gamma: float, alpha: float) -> float:
    """Inverse-linear adoption probability min(1, 1 / (gamma + alpha * |b_u - b|)).

    gamma = alpha = 0 is rejected (division by zero at distance 0).  If the
    denominator vanishes for a particular distance (gamma = 0, distance 0),
    the clamped limit 1.0 is returned.
    """
    if gamma < 0 or alpha < 0:
        raise ValueError(f"gamma and alpha must be >= 0, got gamma={gamma}, alpha={alpha}")
    if gamma == 0 and alpha == 0:
        raise ValueError("gamma and alpha cannot both be 0")
    d = abs(_check_belief(b_u) - _check_belief(b))
    denom = gamma + alpha * d
    if denom <= 0.0:
        return 1.0
    return min(1.0, 1.0 / denom)


def threshold_beta(b_u: int, b: int, gamma: int) -> float:
    """Hard-threshold adoption probability: 1 if |b_u - b| <= gamma else 0."""
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    d = abs(_check_belief(b_u) - _check_belief(b))
    return 1.0 if d <= gamma else 0.0


def contagion_prob(
    model: ContagionModel,
    b_u: int,
    b_msg: int,
    believing_neighbor_fraction: float = 0.0,
) -> float:
    """Probability that an agent at belief b_u adopts an incoming belief b_msg.

    ``believing_neighbor_fraction`` is the share of the agent's neighbors
    currently holding b_msg; only the complex rule consults it.
    """
    if not 0.0 <= believing_neighbor_fraction <= 1.0:
        raise ValueError(
            f"believing_neighbor_fraction must be in [0, 1], got {believing_neighbor_fraction}"
        )
    if isinstance(model, SimpleContagion):
        return model.p
    if isinstance(model, ComplexContagion):
        return 1.0 if believing_neighbor_fraction >= model.alpha else 0.0
    if isinstance(model, ThresholdCognitive):
        return threshold_beta(b_u, b_msg, model.gamma)
    if isinstance(model, LinearCognitive):
        return linear_beta(b_u, b_msg, model.gamma, model.alpha)
    if isinstance(model, SigmoidCognitive):
        return sigmoid_beta(b_u, b_msg, model.alpha, model.gamma)
    raise TypeError(f"not a contagion model: {model!r}")


def min_infected_neighbors(p: float, delta: float) -> int:
    """Smallest neighbor count n such that 1 - (1-p)^n >= delta.

    Independent per-neighbor adoption trials at probability p compound as
    1 - (1-p)^n; this returns ceil(log(1-delta) / log(1-p)), nudged when
    floating-point rounding of the log ratio would miss the true minimum.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be in (0, 1), got {p}")
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"delta must be in [0, 1), got {delta}")
    if delta == 0.0:
        return 0
    n = math.ceil(math.log1p(-delta) / math.log1p(-p))
    while n > 0 and 1.0 - (1.0 - p) ** (n - 1) >= delta:
        n -= 1
    while 1.0 - (1.0 - p) ** n < delta:
        n += 1
    return n


def beta_table(model: ContagionModel) -> np.ndarray:
    """7x7 matrix of adoption probabilities beta(i, j) for a cognitive kernel."""
    if not isinstance(model, CognitiveModel):
        raise UnsupportedModelError(
            f"beta table is only defined for cognitive kernels, got {type(model).__name__}"
        )
    table = np.empty((NUM_LEVELS, NUM_LEVELS))
    for i in BELIEF_LEVELS:
        for j in BELIEF_LEVELS:
            table[i, j] = contagion_prob(model, i, j)
    return table


def beta_table_csv(model: ContagionModel) -> str:
    """Beta table as CSV text: 7 data rows, 7 columns, 3-decimal fixed point."""
    table = beta_table(model)
    return "\n".join(",".join(f"{v:.3f}" for v in row) for row in table) + "\n"
