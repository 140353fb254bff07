# %% [markdown]
# # Jost solutions of a finitely supported Jacobi matrix
#
# The Volterra equations terminate for finite support, so the Jost
# solutions come out exact up to rounding.  We solve them for a small
# complex perturbation and check the three-term recurrences and the
# a-priori bounds.

# %%
import numpy as np

from jacobi_lt import JacobiOperator
from jacobi_lt.jost import (
    apriori_bound,
    reconstruct_u,
    recurrence_residual,
    solve_volterra_left,
    solve_volterra_right,
)

op = JacobiOperator(-1, a=[1.1 + 0.2j, 0.9], b=[0.3 - 0.4j, 0.6], c=[1.0, 1.05 - 0.1j])
z = 0.45 + 0.3j
print(op.matrix(-3, 3).round(3))

# %% [markdown]
# `v_plus` tends to `z**n` to the right, `w_minus` to `z**-n` to the left.

# %%
v = solve_volterra_right(op, z)
w = solve_volterra_left(op, z)
for n in v.indices:
    print(f"{n:3d}  v+ = {v[n]:.6f}   w- = {w[n]:.6f}")

# %% [markdown]
# Residuals of the modified recurrences, and of the original recurrence
# after undoing the transition factors.

# %%
print("der :", recurrence_residual(op, v, z, "der"))
print("del :", recurrence_residual(op, w, z, "del"))
print("main:", recurrence_residual(op, reconstruct_u(op, v), z, "main"))

# %%
lhs, rhs = apriori_bound(op, v)
print("bound slack (min rhs - lhs):", np.min(rhs - lhs))
