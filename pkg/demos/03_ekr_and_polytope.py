"""Independent sets of the derangement graph and the face structure of the matching polytope."""

# %%
from fractions import Fraction

from matchscheme import derangement_union, edmonds_membership, lucas_clique, max_independent_set, trivial_family
from matchscheme.ekr import extremal_uniqueness_check, module_method_check
from matchscheme.polytope import incidence_matrix, parallel_faces, rank_check

# %% a clique of size 2n-1: a 1-factorisation of K_2n
c = lucas_clique(4)
print(c.method, c.verify())
for m in c.matchings:
    print(" ", m)

# %% exact independence number; every maximum family fixes one edge
res = max_independent_set(derangement_union(4), "enumerate")
print(res.size, len(res.families), res.complete)
print(extremal_uniqueness_check(4).line())

# %% only the trivial and standard modules survive on a trivial family
for n in range(2, 7):
    print(module_method_check(n).line())

# %% the incidence matrix and its rank
M = incidence_matrix(4)
print(M.shape, M.sum())
for n in range(2, 7):
    print(rank_check(n).line())

# %% the uniform point lies in the polytope, the all-zero point does not
print(bool(edmonds_membership([Fraction(1, 7)] * 28, 4)), edmonds_membership([0] * 28, 4))

# %% F_12 is a face: the solved weight vector picks out exactly its 15 matchings
split = parallel_faces(trivial_family(4, 1, 2), 4)
print(split.consistent, split.face_max)
