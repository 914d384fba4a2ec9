"""How one policy-gradient step moves the logits of a softmax policy.

Run with ``python demos/01_logit_update_rules.py``.
"""
# %%
import numpy as np

from logitdyn import Experience, apply_update, score_vector, softmax, update_vector

z = np.array([1.0, 0.0, -1.0, 0.5])
p = softmax(z)
print("policy:", np.round(p, 4))

# %% The score of action 2 is onehot(2) - p: positive at the chosen index,
# minus the probability everywhere else.
print("score for action 2:", np.round(score_vector(p, 2), 4))

# %% A positive advantage pushes the chosen logit up by eta*(1-P_c)*A and
# every other logit down by eta*P_o*A. The increments sum to zero.
e = Experience(chosen=2, advantage=1.5, learning_rate=0.2)
d = update_vector(p, e)
print("update:", np.round(d, 4), " sum =", d.sum())

new_p = softmax(apply_update(z, d))
print("P(action 2): %.4f -> %.4f" % (p[2], new_p[2]))

# %% Rare actions get large chosen-logit updates, likely ones small ones.
for pc in (0.1, 0.5, 0.9):
    dc = update_vector([pc, 1 - pc], Experience(0, 1.0, 1.0))[0]
    print(f"P_c = {pc:.1f}: chosen delta = {dc:+.2f}")

# %% A negative advantage reverses every sign.
print("A = -1.5:", np.round(update_vector(p, Experience(2, -1.5, 0.2)), 4))
