"""Multi-armed bandit simulator driven by exact softmax logit updates.

Each step samples one action from the current softmax policy, forms an
advantage, applies the logit update for that single experience and records
the quantities that govern the update size.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .exceptions import InvalidParameterError, ShapeError
from .simplex import as_logits, collision_probability, shannon_entropy, softmax
from .update import Experience, apply_update, sensitivity_from_stats, update_magnitude, update_vector

EXACT = "exact-advantage"
SAMPLED = "sampled-reward"
MODES = (EXACT, SAMPLED)
BASELINES = ("none", "running-mean")


@dataclass(frozen=True)
class BanditEnv:
    """Stateless K-armed bandit.

    In ``exact-advantage`` mode the advantage of arm ``c`` is
    ``arm_means[c] - mean(arm_means)`` and no reward is sampled. In
    ``sampled-reward`` mode the reward is ``arm_means[c]`` plus Gaussian noise
    and the advantage is taken relative to the configured baseline.
    """

    arm_means: tuple[float, ...]
    reward_noise_std: float = 0.0
    mode: str = EXACT

    def __post_init__(self):
        means = tuple(float(m) for m in self.arm_means)
        object.__setattr__(self, "arm_means", means)
        if len(means) < 2:
            raise InvalidParameterError("a bandit needs at least 2 arms")
        if not all(math.isfinite(m) for m in means):
            raise InvalidParameterError("arm means must be finite")
        if not (self.reward_noise_std >= 0 and math.isfinite(self.reward_noise_std)):
            raise InvalidParameterError(f"reward_noise_std must be >= 0, got {self.reward_noise_std!r}")
        if self.mode not in MODES:
            raise InvalidParameterError(f"mode must be one of {MODES}, got {self.mode!r}")

    @property
    def n_arms(self) -> int:
        return len(self.arm_means)

    @property
    def best_arm(self) -> int:
        return int(np.argmax(self.arm_means))


@dataclass(frozen=True)
class SimConfig:
    steps: int
    learning_rate: float
    seed: int = 0
    initial_logits: tuple[float, ...] | None = None  # None means all zeros
    baseline: str = "none"
    snapshot_logits: bool = False

    def __post_init__(self):
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 1:
            raise InvalidParameterError(f"steps must be a positive integer, got {self.steps!r}")
        if not (self.learning_rate > 0 and math.isfinite(self.learning_rate)):
            raise InvalidParameterError(f"learning_rate must be positive, got {self.learning_rate!r}")
        if self.baseline not in BASELINES:
            raise InvalidParameterError(f"baseline must be one of {BASELINES}, got {self.baseline!r}")
        if self.initial_logits is not None:
            object.__setattr__(self, "initial_logits", tuple(as_logits(self.initial_logits).tolist()))

    def start_logits(self, n: int) -> NDArray[np.float64]:
        if self.initial_logits is None:
            return np.zeros(n)
        z = as_logits(self.initial_logits)
        if z.size != n:
            raise ShapeError(f"initial_logits has {z.size} entries but the bandit has {n} arms")
        return z


@dataclass(frozen=True)
class TrajectoryRecord:
    """Snapshot of one update; probabilities refer to the policy before it."""

    step: int
    chosen: int
    advantage: float
    p_chosen: float
    collision: float
    shannon: float
    renyi2: float
    update_norm: float
    logits_snapshot: tuple[float, ...] | None = None


@dataclass
class RunningMean:
    count: int = 0
    mean: float = 0.0

    def update(self, x: float) -> None:
        self.count += 1
        self.mean += (x - self.mean) / self.count


def sample_action(p: NDArray[np.float64], rng: np.random.Generator) -> int:
    c = int(np.searchsorted(np.cumsum(p), rng.random(), side="right"))
    return min(c, p.size - 1)


def _advantage(env: BanditEnv, cfg: SimConfig, c: int, rng: np.random.Generator,
               baseline: RunningMean | None) -> float:
    if env.mode == EXACT:
        return env.arm_means[c] - math.fsum(env.arm_means) / env.n_arms
    reward = env.arm_means[c]
    if env.reward_noise_std > 0:
        reward += env.reward_noise_std * float(rng.standard_normal())
    if cfg.baseline == "none":
        return reward
    if baseline is None:
        raise InvalidParameterError("running-mean baseline requires a RunningMean state")
    advantage = reward - baseline.mean
    baseline.update(reward)
    return advantage


def step(env: BanditEnv, z, cfg: SimConfig, rng: np.random.Generator,
         baseline: RunningMean | None = None, index: int = 0) -> tuple[NDArray[np.float64], TrajectoryRecord]:
    """Sample one action from ``softmax(z)`` and apply its logit update.

    Returns the new logits and the record for this step. ``baseline`` carries
    the running reward mean between calls in sampled mode.
    """
    z = as_logits(z)
    if z.size != env.n_arms:
        raise ShapeError(f"{z.size} logits for a {env.n_arms}-armed bandit")
    p = softmax(z)
    c = sample_action(p, rng)
    e = Experience(chosen=c, advantage=_advantage(env, cfg, c, rng, baseline), learning_rate=cfg.learning_rate)
    new_z = apply_update(z, update_vector(p, e))
    collision = collision_probability(p)
    record = TrajectoryRecord(
        step=index,
        chosen=c,
        advantage=e.advantage,
        p_chosen=float(p[c]),
        collision=collision,
        shannon=shannon_entropy(p),
        renyi2=-math.log(collision),
        update_norm=update_magnitude(p, e),
        logits_snapshot=tuple(new_z.tolist()) if cfg.snapshot_logits else None,
    )
    return new_z, record


@dataclass
class SimResult:
    env: BanditEnv
    config: SimConfig
    records: list[TrajectoryRecord]
    final_logits: NDArray[np.float64] = field(repr=False)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def final_probs(self) -> NDArray[np.float64]:
        return softmax(self.final_logits)

    @property
    def final_collision(self) -> float:
        return collision_probability(self.final_probs)


def run(env: BanditEnv, cfg: SimConfig) -> SimResult:
    """Run ``cfg.steps`` single-experience updates from ``cfg``'s initial logits.

    The run is a pure function of ``(env, cfg)``: the generator is seeded
    from ``cfg.seed`` and owned by this call.
    """
    rng = np.random.default_rng(cfg.seed)
    baseline = RunningMean() if cfg.baseline == "running-mean" else None
    z = cfg.start_logits(env.n_arms)
    records = []
    for t in range(cfg.steps):
        z, rec = step(env, z, cfg, rng, baseline, index=t)
        records.append(rec)
    return SimResult(env=env, config=cfg, records=records, final_logits=z)


@dataclass(frozen=True)
class SweepCell:
    p_chosen: float
    collision: float
    sensitivity: float | None  # None marks an infeasible (p_chosen, collision) pair


def collision_range(p_chosen: float, n: int | None = None) -> tuple[float, float]:
    """Attainable ``C(P)`` for a distribution whose chosen action has ``p_chosen``.

    The remaining mass ``1 - p_chosen`` contributes least when spread evenly
    over the other ``n - 1`` actions (``n=None`` takes the infimum over all
    ``n``) and most when it sits on a single action.
    """
    rest = 1.0 - p_chosen
    lo = p_chosen**2 + (0.0 if n is None else rest**2 / (n - 1))
    return lo, p_chosen**2 + rest**2


def sweep_sensitivity(p_values: Sequence[float], collision_values: Sequence[float],
                      n: int | None = None, tol: float = 1e-12) -> list[SweepCell]:
    """Sensitivity factor ``sqrt(1 - 2 p_c + C)`` over a grid, skipping infeasible cells."""
    if n is not None and n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    cells = []
    for pc in p_values:
        for c in collision_values:
            pc, c = float(pc), float(c)
            value = None
            if 0.0 <= pc <= 1.0 and 0.0 <= c <= 1.0:
                lo, hi = collision_range(pc, n)
                if lo - tol <= c <= hi + tol:
                    value = sensitivity_from_stats(pc, c)
            cells.append(SweepCell(pc, c, value))
    return cells
