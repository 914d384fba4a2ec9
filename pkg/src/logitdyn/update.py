"""Logit-space policy-gradient updates for a softmax policy.

For one experience (chosen action ``c``, advantage ``A``, learning rate
``eta``) every logit moves by ``eta * A * (delta_cj - P_j)``. The increments
sum to zero, and their L2 norm has the closed form
``eta * |A| * sqrt(1 - 2 P_c + C(P))`` with ``C(P) = sum_a P_a**2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .exceptions import InvalidParameterError, LogitDynError, ShapeError
from .simplex import as_logits, as_prob

RADICAND_CLAMP = 1e-12

_SPLITTER = 134217729.0  # 2**27 + 1


@dataclass(frozen=True)
class Experience:
    """One (chosen action, advantage, learning rate) sample."""

    chosen: int
    advantage: float
    learning_rate: float

    def __post_init__(self):
        if isinstance(self.chosen, bool) or int(self.chosen) != self.chosen or self.chosen < 0:
            raise InvalidParameterError(f"chosen must be a non-negative integer, got {self.chosen!r}")
        if not math.isfinite(self.advantage):
            raise InvalidParameterError(f"advantage must be finite, got {self.advantage!r}")
        if not (self.learning_rate > 0 and math.isfinite(self.learning_rate)):
            raise InvalidParameterError(f"learning_rate must be positive, got {self.learning_rate!r}")


def _check_index(chosen: int, n: int) -> int:
    if isinstance(chosen, (bool, np.bool_)) or int(chosen) != chosen:
        raise IndexError(f"action index must be an integer, got {chosen!r}")
    chosen = int(chosen)
    if not 0 <= chosen < n:
        raise IndexError(f"action index {chosen} out of range for {n} actions")
    return chosen


def score_vector(p: ArrayLike, chosen: int) -> NDArray[np.float64]:
    """Gradient of ``log pi(chosen)`` with respect to the logits: ``onehot(chosen) - p``."""
    p = as_prob(p)
    chosen = _check_index(chosen, p.size)
    score = -p
    score[chosen] += 1.0
    return score


def update_vector(p: ArrayLike, e: Experience) -> NDArray[np.float64]:
    """Logit increments produced by experience ``e`` under policy ``p``.

    The chosen logit moves by ``eta * (1 - P_c) * A`` and every other logit by
    ``-eta * P_o * A``. Both come from the single score vector, so the entries
    sum to zero up to round-off.
    """
    return (e.learning_rate * e.advantage) * score_vector(p, e.chosen)


def _exact_squares(p: NDArray[np.float64]) -> NDArray[np.float64]:
    # Dekker two-product: p*p == hi + lo exactly, so math.fsum of the pieces
    # gives a correctly rounded sum of squares.
    sq = p * p
    t = _SPLITTER * p
    hi = t - (t - p)
    lo = p - hi
    err = ((hi * hi - sq) + 2.0 * hi * lo) + lo * lo
    return np.concatenate([sq, err])


def _sqrt_radicand(r: float) -> float:
    if r < 0.0:
        if r < -RADICAND_CLAMP:
            raise LogitDynError(f"negative sensitivity radicand {r!r}")
        r = 0.0
    return math.sqrt(r)


def _radicand(p: NDArray[np.float64], chosen: int) -> float:
    # 1 - 2 P_c + C(P), summed exactly: near P_c = 1 the three terms cancel
    # to O((1 - P_c)**2) and naive summation loses every significant digit.
    return math.fsum([1.0, -2.0 * p[chosen], *_exact_squares(p)])


def sensitivity_factor(p: ArrayLike, chosen: int) -> float:
    """Policy-dependent part of the update norm, ``sqrt(1 - 2 P_c + C(P))``.

    Lies in ``[0, sqrt(2)]``; the upper end is reached only when the chosen
    action has probability 0 and another action has probability 1.
    """
    p = as_prob(p)
    chosen = _check_index(chosen, p.size)
    return _sqrt_radicand(_radicand(p, chosen))


def sensitivity_from_stats(p_chosen: float, collision: float) -> float:
    """``sqrt(1 - 2 p_chosen + collision)`` from the two summary statistics alone."""
    return _sqrt_radicand(1.0 - 2.0 * p_chosen + collision)


def update_magnitude(p: ArrayLike, e: Experience) -> float:
    """Closed-form L2 norm of :func:`update_vector`: ``eta * |A| * sqrt(1 - 2 P_c + C(P))``."""
    return e.learning_rate * abs(e.advantage) * sensitivity_factor(p, e.chosen)


def apply_update(z: ArrayLike, u: ArrayLike) -> NDArray[np.float64]:
    """Add the increments ``u`` to the logits ``z``."""
    z = as_logits(z)
    u = np.asarray(u, dtype=np.float64)
    if u.shape != z.shape:
        raise ShapeError(f"update of shape {u.shape} does not match logits of shape {z.shape}")
    return z + u
