# %% [markdown]
# # Lieb-Thirring sums and enclosure ovals
#
# For each eigenvalue we form `d(lam) / |lam**2 - 4|**((1 - eps)/2)` and
# `d(lam)**(1 + eps) / |lam**2 - 4|**((1 + eps)/2)` with `d` the distance
# to `[-2, 2]`, sum over the spectrum and divide by `Delta` or by the
# trace-norm proxy.  The constants in the inequalities are not checked;
# only the ratios are tabulated.

# %%
from jacobi_lt import JacobiOperator
from jacobi_lt.inequalities import (
    family_sweep,
    gauge_family,
    inequality_report,
    kappa,
    random_family,
    single_site_family,
)

print("kappa =", kappa())
rep = inequality_report(JacobiOperator.single_site(1.5), 0.5)
print(rep.to_row())

# %% [markdown]
# The single-site family sits on the boundary of the sharp oval.

# %%
sweep = family_sweep(single_site_family((1 + 1j) / 2**0.5, [0.5, 1, 2, 4]), [0.1, 0.5, 0.9])
for r in sweep.reports:
    for m in r.memberships:
        print(f"{r.label:18s} eps {r.epsilon}  |lam^2-4| {m['abs_lam2_minus_4']:.6f}  sharp {m['sharp']}")
print("max ratios:", sweep.max_ratios())

# %%
res = family_sweep(random_family(30, 5, 0.5, seed=1, potential=2.0), [0.25, 0.5])
print("violations:", res.violations, "errors:", res.errors)
print("max ratios:", res.max_ratios())

# %% [markdown]
# Gauge transforms change the proxy but not the sums.

# %%
base = JacobiOperator(-1, b=[1.2, -0.5j, 0.8 + 0.3j])
for r in family_sweep(gauge_family(base, 5, seed=3), [0.5]).reports:
    print(f"proxy {r.trace_norm_proxy:8.4f}  lt_main {r.lt_main:.12f}  lt_hk {r.lt_hk:.12f}")
