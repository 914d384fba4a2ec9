"""Independent numerical checks for the closed-form logit dynamics.

Nothing here reuses the closed forms it is meant to check: gradients come from
central differences of ``log_softmax``, norms from summing squared entries,
collision probabilities from sampling pairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .exceptions import InvalidParameterError
from .simplex import (
    as_logits,
    as_prob,
    collision_probability,
    log_softmax,
    renyi_entropy,
    shannon_entropy,
    softmax,
)
from .update import Experience, _check_index, update_vector

RNG_ALGORITHM = "numpy.random.default_rng (PCG64)"
DEFAULT_STEP = 1e-5
MAX_STEP = 1e-2
ORDERING_ATOL = 1e-12

_MC_CHUNK = 1_000_000


@dataclass(frozen=True)
class GradCheckReport:
    max_abs_err: float
    worst_indices: tuple[int, int]
    step_size: float


def _check_step(step: float) -> float:
    step = float(step)
    if not 0 < step <= MAX_STEP:
        raise InvalidParameterError(f"step must lie in (0, {MAX_STEP}], got {step}")
    return step


def finite_diff_jacobian(z: ArrayLike, step: float = DEFAULT_STEP) -> NDArray[np.float64]:
    """Central-difference estimate of ``d log pi_i / d z_j`` as an ``(n, n)`` array.

    Row ``i`` is the log-probability being differentiated, column ``j`` the
    perturbed logit.
    """
    z = as_logits(z)
    step = _check_step(step)
    shift = step * np.eye(z.size)
    plus = log_softmax(z + shift)
    minus = log_softmax(z - shift)
    # row j of plus/minus holds all log-probs with logit j perturbed
    return ((plus - minus) / (2.0 * step)).T


def finite_diff_score(z: ArrayLike, i: int, step: float = DEFAULT_STEP) -> NDArray[np.float64]:
    """Central-difference gradient of ``log pi(a_i)`` with respect to every logit."""
    z = as_logits(z)
    i = _check_index(i, z.size)
    return finite_diff_jacobian(z, step)[i]


def gradient_check(z: ArrayLike, step: float = DEFAULT_STEP) -> GradCheckReport:
    """Compare the analytic score ``delta_ij - P_j`` against central differences for all ``(i, j)``."""
    z = as_logits(z)
    numeric = finite_diff_jacobian(z, step)
    p = softmax(z)
    analytic = np.eye(z.size) - p[None, :]
    err = np.abs(numeric - analytic)
    i, j = np.unravel_index(int(np.argmax(err)), err.shape)
    return GradCheckReport(max_abs_err=float(err[i, j]), worst_indices=(int(i), int(j)), step_size=float(step))


def brute_force_magnitude(p: ArrayLike, e: Experience) -> float:
    """L2 norm of the update vector from its entries (scaled sum of squares)."""
    return math.hypot(*update_vector(p, e))


def _sample(cdf: NDArray[np.float64], u: NDArray[np.float64]) -> NDArray[np.intp]:
    return np.searchsorted(cdf, u, side="right")


def mc_collision_estimate(p: ArrayLike, pairs: int, seed: int) -> float:
    """Fraction of equal pairs among ``pairs`` i.i.d. draws from ``p``.

    Draws are made by inverting the CDF of ``p`` with uniforms from a
    generator seeded by ``seed``; equal seeds give equal estimates.
    """
    p = as_prob(p)
    if int(pairs) != pairs or pairs < 1:
        raise InvalidParameterError(f"pairs must be a positive integer, got {pairs!r}")
    pairs = int(pairs)
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(p)
    cdf[-1] = 1.0
    hits = 0
    remaining = pairs
    while remaining:
        k = min(remaining, _MC_CHUNK)
        a = _sample(cdf, rng.random(k))
        b = _sample(cdf, rng.random(k))
        hits += int(np.count_nonzero(a == b))
        remaining -= k
    return hits / pairs


def mc_standard_error(collision: float, pairs: int) -> float:
    """Binomial standard error ``sqrt(C (1 - C) / pairs)`` of the pair estimator."""
    return math.sqrt(collision * (1.0 - collision) / pairs)


def renyi_limit_check(p: ArrayLike, alphas: Iterable[float]) -> list[float]:
    """Distance ``|H_alpha(p) - H(p)|`` for each ``alpha``; shrinks as ``alpha -> 1``."""
    p = as_prob(p)
    h = shannon_entropy(p)
    return [abs(renyi_entropy(p, a) - h) for a in alphas]


def entropy_ordering_check(p: ArrayLike) -> bool:
    """True iff ``H_2(p) <= H(p)`` and ``C(p) >= exp(-H(p))`` up to ``1e-12``."""
    p = as_prob(p)
    c = collision_probability(p)
    h = shannon_entropy(p)
    return -math.log(c) <= h + ORDERING_ATOL and c >= math.exp(-h) - ORDERING_ATOL
