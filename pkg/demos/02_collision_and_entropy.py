"""Collision probability, Rényi and Shannon entropy, and the update norm.

Run with ``python demos/02_collision_and_entropy.py``.
"""
# %%
import math

import numpy as np

from logitdyn import (
    Experience,
    entropy_report,
    renyi_entropy,
    sensitivity_factor,
    shannon_entropy,
    update_magnitude,
    update_vector,
)

# %% Spread-out and concentrated policies.
for name, p in [("uniform(4)", np.full(4, 0.25)), ("[0.7,0.2,0.1]", [0.7, 0.2, 0.1]), ("[0.99,0.01]", [0.99, 0.01])]:
    r = entropy_report(p)
    print(f"{name:>14}: C={r.collision:.4f}  H2={r.renyi2:.4f}  H={r.shannon:.4f}  exp(-H)={math.exp(-r.shannon):.4f}")

# %% H_alpha is non-increasing in alpha and tends to H as alpha -> 1.
p = [0.5, 0.25, 0.25]
for a in (0.5, 0.9, 0.99, 1.01, 1.1, 2.0, 5.0):
    print(f"alpha={a:<5} H_alpha={renyi_entropy(p, a):.6f}")
print(f"Shannon       H      ={shannon_entropy(p):.6f}")

# %% The update norm only depends on P_c and C(P).
p = np.array([0.05, 0.9, 0.05])
e = Experience(chosen=0, advantage=1.0, learning_rate=1.0)
print("closed form :", update_magnitude(p, e))
print("direct norm :", np.linalg.norm(update_vector(p, e)))

# %% Choosing the dominant action barely moves anything; choosing a rare one
# while the policy is concentrated elsewhere approaches sqrt(2).
print("sensitivity, chosen = dominant:", sensitivity_factor(p, 1))
print("sensitivity, chosen = rare    :", sensitivity_factor(p, 0))
print("sensitivity, [1e-9, 1-1e-9]   :", sensitivity_factor([1e-9, 1 - 1e-9], 0), "vs sqrt(2) =", math.sqrt(2))
