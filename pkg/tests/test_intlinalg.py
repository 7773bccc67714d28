import random
from fractions import Fraction
from itertools import permutations

import pytest

from tauseq.intlinalg import (det_bareiss, det_exact, det_fraction, hnf_2rows,
                              kernel_basis, rank, snf_invariants_2rows,
                              solve_2unknowns)


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def test_det_against_leibniz():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(1, 5)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert det_bareiss(m) == leibniz_det(m)
        assert det_fraction(m) == leibniz_det(m)


def test_det_exact_dispatch():
    assert det_exact([[2, 1], [1, 1]]) == 1
    assert det_exact([[Fraction(1, 2), 0], [0, 4]]) == 2


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0, 3], [0, 1, 1]]) == 2
    assert rank([]) == 0


def test_hnf_same_lattice():
    m = [[5, -2, -2, -1], [1, 1, -1, -1]]
    h, u = hnf_2rows(m)
    # U unimodular and H = U @ M
    assert abs(u[0][0] * u[1][1] - u[0][1] * u[1][0]) == 1
    for r in range(2):
        for c in range(4):
            assert h[r][c] == u[r][0] * m[0][c] + u[r][1] * m[1][c]


def test_kernel_contains_and_spans():
    m = [[5, -2, -2, -1], [1, 1, -1, -1]]
    basis = kernel_basis(m)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(m[r][i] * v[i] for i in range(4)) == 0 for r in range(2))
    # the all-ones vector is an integer combination of the basis
    assert solve_2unknowns(basis[0], basis[1], (1, 1, 1, 1)) is not None


def test_snf_invariants():
    assert snf_invariants_2rows([[5, 3, 1], [1, 2, 1]]) == (1, 1)
    assert snf_invariants_2rows([[2, 0, 0], [0, 0, 1]]) == (1, 2)
    with pytest.raises(ValueError):
        snf_invariants_2rows([[1, 2], [2, 4]])


def test_solve_2unknowns():
    a, b = (3, -4, 0, 1), (-4, 3, 1, 0)
    x = tuple(2 * a[i] - 3 * b[i] for i in range(4))
    assert solve_2unknowns(a, b, x) == (2, -3)
    assert solve_2unknowns(a, b, (1, 0, 0, -1)) is None
