"""Exploration to exploitation on a two-armed bandit.

Run with ``python demos/03_bandit_trajectory.py``.
"""
# %%
import numpy as np

from logitdyn import BanditEnv, SimConfig, run

env = BanditEnv(arm_means=(1.0, 0.0), mode="exact-advantage")
res = run(env, SimConfig(steps=2000, learning_rate=0.1, seed=2))

# %% Snapshots every 250 steps: the best arm's probability and C(P) climb,
# entropy falls, and updates on the best arm shrink.
print(" step  chosen  p_chosen  C(P)     H        |dz|")
for r in res.records[::250] + [res[-1]]:
    print(f"{r.step:5d}  {r.chosen:6d}  {r.p_chosen:.4f}    {r.collision:.4f}   {r.shannon:.4f}   {r.update_norm:.2e}")

print("final policy:", np.round(res.final_probs, 5), " final C(P):", round(res.final_collision, 5))

# %% Rare picks of the bad arm late in training produce the largest updates:
# P_c is small while C(P) is near 1.
late_bad = [r.update_norm for r in res.records[1000:] if r.chosen == 1]
late_good = [r.update_norm for r in res.records[1000:] if r.chosen == 0]
print(f"late updates: best arm mean {np.mean(late_good):.2e}, other arm mean {np.mean(late_bad) if late_bad else float('nan'):.2e}")

# %% Noisy rewards with a running-mean baseline.
env = BanditEnv(arm_means=(0.2, 0.5, 0.9, 0.4, 0.1), reward_noise_std=0.3, mode="sampled-reward")
res = run(env, SimConfig(steps=5000, learning_rate=0.05, seed=7, baseline="running-mean"))
print("5-arm final policy:", np.round(res.final_probs, 3))
