"""Independent checks of the closed forms: finite differences, direct norms, sampling.

Run with ``python demos/04_numerical_checks.py``.
"""
# %%
import numpy as np

from logitdyn import (
    Experience,
    brute_force_magnitude,
    collision_probability,
    finite_diff_score,
    gradient_check,
    mc_collision_estimate,
    renyi_limit_check,
    score_vector,
    softmax,
    update_magnitude,
)

rng = np.random.default_rng(0)
z = rng.normal(0, 2, 5)

# %% Central differences of log softmax agree with onehot - p.
print("finite diff:", np.round(finite_diff_score(z, 3), 8))
print("analytic   :", np.round(score_vector(softmax(z), 3), 8))
print("full Jacobian check:", gradient_check(z))

# %% Closed-form norm vs summing squares, including a near-certain choice.
for p in (softmax(z), np.array([1 - 1e-7, 1e-7])):
    e = Experience(0, 1.0, 1.0)
    print(f"closed {update_magnitude(p, e):.15e}   direct {brute_force_magnitude(p, e):.15e}")

# %% Collision probability as the chance two draws coincide.
p = [0.9, 0.1]
print("exact C:", collision_probability(p), " MC (1e6 pairs):", mc_collision_estimate(p, 1_000_000, seed=1))

# %% |H_alpha - H| shrinks as alpha approaches 1.
print(renyi_limit_check([0.5, 0.25, 0.25], [1.5, 1.1, 1.01, 1.001]))
