"""Eigenvalues of the matching derangement graph from the exact character table."""

# %%
from matchscheme import character_table, derangement_union, spectrum, zonal_n_sphere
from matchscheme.derangement import check_alternating_sign, check_least_eigenvalue_conjecture

# %% full eigenvalue table at n = 4: rows are relations, columns irreducibles
t = character_table(4)
print("      ", t.partitions)
for lam, row in zip(t.partitions, t.P):
    print(f"{str(lam):>14}", row)
print("multiplicities", t.multiplicities)

# %% derangement graph: union of relations with no part 1
for n in range(3, 8):
    rec = spectrum(derangement_union(n))
    print(n, rec.least(), max(rec.eigenvalues.values()))

# %% sign pattern and least eigenvalue
for n in range(3, 8):
    print(check_least_eigenvalue_conjecture(n).line())
    print(check_alternating_sign(n).line())

# %% zonal values on the (n)-sphere straight from the shape
for lam in [(8,), (7, 1), (6, 2), (5, 2, 1), (4, 4), (3, 3, 2)]:
    print(lam, zonal_n_sphere(lam))
