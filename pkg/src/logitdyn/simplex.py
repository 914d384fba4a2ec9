"""Probability-simplex primitives: softmax, collision probability, entropies.

All entropies are in nats. Inputs are plain array-likes; the ``as_logits`` and
``as_prob`` helpers validate them and return float64 numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .exceptions import InvalidInputError, InvalidParameterError

SIMPLEX_ATOL = 1e-12
RENORMALIZE_ATOL = 1e-9
ALPHA_GUARD = 1e-9


def as_logits(z: ArrayLike) -> NDArray[np.float64]:
    """Validate a logit vector: 1-D, length >= 2, all entries finite."""
    arr = np.asarray(z, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise InvalidInputError(f"logits must be a 1-D vector of length >= 2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("logits must be finite")
    return arr


def as_prob(p: ArrayLike) -> NDArray[np.float64]:
    """Validate a point on the probability simplex.

    Vectors whose sum is off by at most ``RENORMALIZE_ATOL`` are renormalized;
    larger deviations, negative entries or non-finite values are rejected.
    """
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise InvalidInputError(f"distribution must be a 1-D vector of length >= 2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("distribution must be finite")
    if np.any(arr < 0):
        raise InvalidInputError("distribution has negative entries")
    total = arr.sum()
    if abs(total - 1.0) > RENORMALIZE_ATOL:
        raise InvalidInputError(f"distribution sums to {total!r}, not 1")
    if total != 1.0:
        arr = arr / total
    return arr


def log_softmax(z: ArrayLike) -> NDArray[np.float64]:
    """Log-probabilities of the softmax policy, computed via log-sum-exp.

    Accepts a single logit vector or a 2-D batch (one vector per row).
    """
    arr = np.asarray(z, dtype=np.float64)
    m = arr.max(axis=-1, keepdims=True)
    shifted = arr - m
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


def softmax(z: ArrayLike) -> NDArray[np.float64]:
    """Map logits to action probabilities ``exp(z_i) / sum_k exp(z_k)``.

    The maximum logit is subtracted before exponentiation so large logits
    cannot overflow.

    Raises:
        InvalidInputError: if ``z`` has non-finite entries or fewer than 2.
    """
    z = as_logits(z)
    e = np.exp(z - z.max())
    return e / e.sum()


def collision_probability(p: ArrayLike) -> float:
    """Probability that two independent draws from ``p`` coincide: ``sum p_i**2``."""
    p = as_prob(p)
    return float(np.dot(p, p))


def renyi_entropy(p: ArrayLike, alpha: float) -> float:
    """Rényi entropy of order ``alpha`` in nats.

    Zero-probability entries are dropped from the power sum. ``alpha`` must be
    positive and at least ``ALPHA_GUARD`` away from 1; use
    :func:`shannon_entropy` for the ``alpha -> 1`` limit.
    """
    alpha = float(alpha)
    if not alpha > 0 or not math.isfinite(alpha):
        raise InvalidParameterError(f"alpha must be positive and finite, got {alpha}")
    if abs(alpha - 1.0) <= ALPHA_GUARD:
        raise InvalidParameterError("alpha too close to 1; use shannon_entropy")
    p = as_prob(p)
    support = p[p > 0]
    x = alpha * np.log(support)
    m = x.max()
    log_power_sum = m + math.log(float(np.exp(x - m).sum()))
    return float(log_power_sum / (1.0 - alpha))


def shannon_entropy(p: ArrayLike) -> float:
    """Shannon entropy ``-sum p_i ln p_i`` with the convention ``0 ln 0 = 0``."""
    p = as_prob(p)
    support = p[p > 0]
    return float(-np.dot(support, np.log(support)))


@dataclass(frozen=True)
class EntropyReport:
    collision: float
    renyi2: float
    shannon: float


def entropy_report(p: ArrayLike) -> EntropyReport:
    """Collision probability, order-2 Rényi entropy and Shannon entropy of ``p``."""
    p = as_prob(p)
    c = collision_probability(p)
    return EntropyReport(collision=c, renyi2=-math.log(c), shannon=shannon_entropy(p))


def uniform(n: int) -> NDArray[np.float64]:
    if n < 2:
        raise InvalidParameterError(f"need at least 2 actions, got {n}")
    return np.full(n, 1.0 / n)


def random_simplex(rng: np.random.Generator, n: int, size: int | None = None) -> NDArray[np.float64]:
    """Draw points uniformly from the simplex (flat Dirichlet).

    Independent standard exponentials are normalized by their sum. Returns a
    vector of length ``n`` or, if ``size`` is given, a ``(size, n)`` array.
    """
    shape = (n,) if size is None else (size, n)
    e = rng.standard_exponential(shape)
    return e / e.sum(axis=-1, keepdims=True)
