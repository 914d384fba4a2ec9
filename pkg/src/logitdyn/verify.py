"""Seeded verification suites behind ``logitdyn verify``.

Each suite returns a list of :class:`CheckResult`; a failing check carries the
offending instance as plain JSON-serializable data so it can be replayed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .oracle import (
    brute_force_magnitude,
    entropy_ordering_check,
    gradient_check,
    mc_collision_estimate,
    mc_standard_error,
    renyi_limit_check,
)
from .simplex import collision_probability, random_simplex, renyi_entropy, shannon_entropy, softmax, uniform
from .update import Experience, sensitivity_factor, update_magnitude, update_vector

SEED = 20240601
GRAD_SIZES = (2, 3, 10, 100)
GRAD_TOL = 1e-6
CONSERVATION_RTOL = 1e-12
MAGNITUDE_RTOL = 1e-10
ENTROPY_ATOL = 1e-12
MC_TOL = 0.002
RENYI_ALPHAS = (1.5, 1.1, 1.01, 1.001)
RENYI_FINAL_TOL = 1e-3


@dataclass
class CheckResult:
    name: str
    max_error: float
    threshold: float
    passed: bool
    instance: dict | None = field(default=None)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34} max_err={self.max_error:.3e}  threshold={self.threshold:.1e}"


def random_update_instances(rng: np.random.Generator, count: int, n_max: int = 20):
    """Random ``(P, Experience)`` pairs.

    Half the distributions are flat-Dirichlet draws; the other half are
    softmaxes of wide Gaussian logits, which puts many chosen actions near
    probability 0 or 1.
    """
    for k in range(count):
        n = int(rng.integers(2, n_max + 1))
        if k % 2:
            p = random_simplex(rng, n)
        else:
            p = softmax(rng.normal(0.0, 6.0, n))
        e = Experience(
            chosen=int(rng.integers(n)),
            advantage=float(rng.normal(0.0, 2.0)),
            learning_rate=float(rng.uniform(1e-3, 1.0)),
        )
        yield p, e


def random_simplex_points(rng: np.random.Generator, count: int, n_max: int = 1000):
    """Flat-Dirichlet points with ``n`` log-uniform in ``[2, n_max]``."""
    for _ in range(count):
        n = int(round(math.exp(rng.uniform(math.log(2), math.log(n_max)))))
        yield random_simplex(rng, n)


def rel_err(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def suite_gradients(seed: int = SEED, vectors: int = 100) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for n in GRAD_SIZES:
        worst, worst_z = 0.0, None
        for _ in range(vectors):
            z = rng.normal(0.0, 2.0, n)
            rep = gradient_check(z)
            if rep.max_abs_err > worst or worst_z is None:
                worst, worst_z = rep.max_abs_err, z
        ok = worst <= GRAD_TOL
        results.append(CheckResult(f"score gradient n={n}", worst, GRAD_TOL, ok,
                                   None if ok else {"z": worst_z.tolist(), "step": 1e-5}))
    return results


def suite_magnitude(seed: int = SEED, count: int = 10_000) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 1)
    cons_worst = mag_worst = 0.0
    cons_bad = mag_bad = range_bad = None
    sens_max = 0.0
    for p, e in random_update_instances(rng, count):
        d = update_vector(p, e)
        cons = abs(float(d.sum())) / max(1.0, float(np.abs(d).max()))
        mag = rel_err(update_magnitude(p, e), brute_force_magnitude(p, e))
        sens = sensitivity_factor(p, e.chosen)
        instance = {"p": p.tolist(), "chosen": e.chosen, "advantage": e.advantage, "eta": e.learning_rate}
        if cons > cons_worst:
            cons_worst = cons
            cons_bad = instance
        if mag > mag_worst:
            mag_worst = mag
            mag_bad = instance
        if sens > sens_max:
            sens_max = sens
            range_bad = instance
    sqrt2 = math.sqrt(2.0)
    return [
        CheckResult("conservation (sum of deltas)", cons_worst, CONSERVATION_RTOL,
                    cons_worst <= CONSERVATION_RTOL, None if cons_worst <= CONSERVATION_RTOL else cons_bad),
        CheckResult("closed-form vs direct norm", mag_worst, MAGNITUDE_RTOL,
                    mag_worst <= MAGNITUDE_RTOL, None if mag_worst <= MAGNITUDE_RTOL else mag_bad),
        CheckResult("sensitivity factor <= sqrt(2)", max(0.0, sens_max - sqrt2), 0.0,
                    sens_max <= sqrt2, None if sens_max <= sqrt2 else range_bad),
    ]


def suite_entropy(seed: int = SEED, count: int = 10_000) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 2)
    bound_err = order_err = 0.0
    bound_bad = order_bad = None
    for p in random_simplex_points(rng, count):
        n = p.size
        c = collision_probability(p)
        h = shannon_entropy(p)
        b = max(1.0 / n - c, c - 1.0, 0.0)
        o = max(-math.log(c) - h, math.exp(-h) - c, 0.0)
        if b > bound_err:
            bound_err, bound_bad = b, {"p": p.tolist()}
        order_err = max(order_err, o)
        if order_bad is None and not entropy_ordering_check(p):
            order_bad = {"p": p.tolist()}
    eq_err = 0.0
    for n in (2, 3, 5, 10, 100, 1000):
        u = uniform(n)
        c, h, h2 = collision_probability(u), shannon_entropy(u), renyi_entropy(u, 2)
        eq_err = max(eq_err, abs(c - 1.0 / n), abs(h2 - h), abs(h - math.log(n)), abs(c - math.exp(-h)))
    gaps = renyi_limit_check([0.5, 0.25, 0.25], RENYI_ALPHAS)
    decreasing = all(a > b for a, b in zip(gaps, gaps[1:]))
    return [
        CheckResult("collision bounds 1/n <= C <= 1", bound_err, ENTROPY_ATOL, bound_err <= ENTROPY_ATOL,
                    None if bound_err <= ENTROPY_ATOL else bound_bad),
        CheckResult("entropy ordering H2 <= H", order_err, ENTROPY_ATOL, order_bad is None, order_bad),
        CheckResult("equality at uniform", eq_err, ENTROPY_ATOL, eq_err <= ENTROPY_ATOL),
        CheckResult("renyi -> shannon limit", gaps[-1], RENYI_FINAL_TOL,
                    decreasing and gaps[-1] <= RENYI_FINAL_TOL,
                    None if decreasing else {"p": [0.5, 0.25, 0.25], "alphas": list(RENYI_ALPHAS), "gaps": gaps}),
    ]


def suite_mc(seed: int = SEED, pairs: int = 1_000_000) -> list[CheckResult]:
    results = []
    for p in ([0.9, 0.1], [0.5, 0.5], [0.5, 0.25, 0.25]):
        exact = collision_probability(p)
        est = mc_collision_estimate(p, pairs, seed)
        err = abs(est - exact)
        tol = max(MC_TOL, 4.0 * mc_standard_error(exact, pairs))
        results.append(CheckResult(f"MC collision p={p}", err, tol, err <= tol,
                                   None if err <= tol else {"p": p, "pairs": pairs, "seed": seed}))
    again = mc_collision_estimate([0.9, 0.1], pairs, seed)
    first = mc_collision_estimate([0.9, 0.1], pairs, seed)
    results.append(CheckResult("MC determinism", abs(again - first), 0.0, again == first))
    return results


SUITES = {
    "gradients": suite_gradients,
    "magnitude": suite_magnitude,
    "entropy": suite_entropy,
    "mc": suite_mc,
}


def run_suites(name: str) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for n in names:
        results.extend(SUITES[n]())
    return results
