"""Exact logit-space dynamics of softmax policy gradients.

The update vector for one experience, its zero-sum structure, the closed-form
norm in terms of the collision probability, plus a bandit simulator and
independent numerical checks.
"""
__version__ = "0.1.0"

from .exceptions import InvalidInputError, InvalidParameterError, LogitDynError, ShapeError
from .simplex import (
    EntropyReport,
    as_logits,
    as_prob,
    collision_probability,
    entropy_report,
    log_softmax,
    random_simplex,
    renyi_entropy,
    shannon_entropy,
    softmax,
    uniform,
)
from .update import (
    Experience,
    apply_update,
    score_vector,
    sensitivity_factor,
    sensitivity_from_stats,
    update_magnitude,
    update_vector,
)
from .oracle import (
    GradCheckReport,
    brute_force_magnitude,
    entropy_ordering_check,
    finite_diff_jacobian,
    finite_diff_score,
    gradient_check,
    mc_collision_estimate,
    renyi_limit_check,
)
from .bandit import BanditEnv, SimConfig, SimResult, TrajectoryRecord, run, step, sweep_sensitivity
