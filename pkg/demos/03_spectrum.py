# %% [markdown]
# # Locating the discrete spectrum
#
# Zeros of `U` in the unit disk are eigenvalues `lam = z + 1/z`.  The
# finder counts zeros with the argument principle on polar boxes and
# polishes simple ones with Newton.  Finite sections give an independent
# check.

# %%
import cmath

from jacobi_lt import JacobiOperator
from jacobi_lt.spectrum import find_zeros, find_zeros_oracle, finite_section_eigenvalues, similarity_check

for b in (1.5, 1 + 1j, 0.4j):
    res = find_zeros(JacobiOperator.single_site(b))
    print(b, [p.lam for p in res], "closed form:", cmath.sqrt(b * b + 4))

# %% [markdown]
# A purely imaginary potential puts the root on the unit circle, so there
# is no eigenvalue (the list above is empty for `0.4j`).

# %%
op = JacobiOperator(-2, b=[1.5, -0.5j, 0.8 + 0.6j, 1.2, -1])
res = find_zeros(op)
print("winding:", res.total_winding, "found:", res.multiplicity_sum)
for p in res:
    print(f"lam = {p.lam:.10f}  mult {p.multiplicity}  |U| {p.residual:.1e}")

# %% [markdown]
# Section eigenvalues closer than 0.1 to the band are dropped: there the
# cut-off matrix also has its own spurious eigenvalues.

# %%
fs = finite_section_eigenvalues(op, 200, list(res))
for ev, j, d in fs.matched:
    print(f"section {ev:.8f}  distance {d:.1e}")
print("oracle route:", [f"{p.lam:.10f}" for p in find_zeros_oracle(op)])

# %% [markdown]
# Diagonal similarity leaves the spectrum unchanged.

# %%
print(similarity_check(op, [2, 0.5j, 3, 1, -1, 0.7]).max_distance)
