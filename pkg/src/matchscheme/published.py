"""Published spectra of the matching derangement graph, for regression checks.

Keys are partitions in canonical form; values are the eigenvalues.
"""

GAMMA_SPECTRA = {
    3: {(1, 1, 1): 2, (2, 1): -2, (3,): 8},
    4: {(1, 1, 1, 1): -3, (2, 1, 1): 2, (2, 2): 5, (3, 1): -10, (4,): 60},
    5: {
        (1, 1, 1, 1, 1): 4,
        (2, 1, 1, 1): -3,
        (2, 2, 1): -6,
        (3, 1, 1): 12,
        (3, 2): 12,
        (4, 1): -68,
        (5,): 544,
    },
    6: {
        (1, 1, 1, 1, 1, 1): -29,
        (2, 1, 1, 1, 1): 2,
        (2, 2, 1, 1): 70,
        (2, 2, 2): 10,
        (3, 1, 1, 1): -14,
        (3, 2, 1): -14,
        (3, 3): -5,
        (4, 1, 1): 76,
        (4, 2): 82,
        (5, 1): -604,
        (6,): 6040,
    },
}
