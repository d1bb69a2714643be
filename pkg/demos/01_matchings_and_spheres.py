"""Walk through perfect matchings of K_2n and the spheres around the identity matching."""

# %%
from collections import Counter

import numpy as np

from matchscheme import count_matchings, cycle_type, enumerate_matchings, identity_matching, rank, sphere_size, unrank
from matchscheme.combinatorics import partitions_of
from matchscheme.scheme import sphere_labels

# %% the 15 matchings of K_6 in rank order
for m in enumerate_matchings(3):
    print(rank(m), m)

# %% rank/unrank are inverse; the last rank at n = 7
last = unrank(7, count_matchings(7) - 1)
print(last, rank(last))

# %% union of a matching with the identity is a set of even cycles; halve the lengths
print(Counter(cycle_type(m, identity_matching(4)) for m in enumerate_matchings(4)))

# %% sphere sizes from the closed form vs the vectorised labelling
n = 6
labels = np.bincount(sphere_labels(n))
for lam, got in zip(partitions_of(n), labels):
    print(lam, sphere_size(lam), got)
