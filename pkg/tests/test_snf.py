"""Exact linear algebra: Smith form, cokernels, subgroup bases."""

import random
from fractions import Fraction
from math import prod

import pytest

from homok.snf import (
    cokernel_invariants,
    determinant,
    identity_matrix,
    invert_unimodular,
    matmul,
    smith_diagonal,
    smith_normal_form,
    subgroup_basis,
    subgroup_invariants,
)


def fraction_det(mat):
    """Reference determinant by straight Gaussian elimination over Q."""
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(col + 1, n):
            if a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    assert det.denominator == 1
    return int(det)


def closure(rows, moduli):
    """Brute-force subgroup of Z/m1 x ... x Z/mq spanned by the rows."""
    zero = (0,) * len(moduli)
    seen = {zero}
    frontier = [zero]
    gens = [tuple(x % m for x, m in zip(r, moduli)) for r in rows]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = tuple((a + b) % m for a, b, m in zip(cur, g, moduli))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def test_smith_normal_form_worked_example():
    m = [[4, 6], [2, 8]]
    u, s, v = smith_normal_form(m)
    assert [s[0][0], s[1][1]] == [2, 10]
    assert s[0][1] == s[1][0] == 0
    assert matmul(matmul(u, m), v) == s
    assert abs(determinant(u)) == 1
    assert abs(determinant(v)) == 1


def test_smith_zero_and_identity():
    assert smith_diagonal([[0, 0], [0, 0]]) == [0, 0]
    assert smith_diagonal(identity_matrix(3)) == [1, 1, 1]


@pytest.mark.parametrize("seed", range(8))
def test_smith_properties_random(seed):
    rng = random.Random(0xABE1 + seed)
    rows = rng.randint(1, 5)
    cols = rng.randint(1, 5)
    m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
    u, s, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == s
    assert abs(determinant(u)) == 1
    assert abs(determinant(v)) == 1
    diag = [s[i][i] for i in range(min(rows, cols))]
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert s[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        assert a >= 0
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    assert smith_diagonal(m) == diag


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_determinant_against_fraction_elimination(n):
    rng = random.Random(100 + n)
    for _ in range(25):
        m = [[rng.randint(-7, 7) for _ in range(n)] for _ in range(n)]
        assert determinant(m) == fraction_det(m)


def test_invert_unimodular():
    m = [[2, 3], [1, 2]]  # det 1
    inv = invert_unimodular(m)
    assert matmul(m, inv) == identity_matrix(2)
    with pytest.raises(ValueError):
        invert_unimodular([[2, 0], [0, 2]])


def test_cokernel_worked_example():
    # (Z/3 x Z/9) / <(0,3)> has invariant factors (3, 3)
    assert cokernel_invariants([[0, 3]], [3, 9]) == (3, 3)


def test_cokernel_trivial_cases():
    assert cokernel_invariants([], [3, 9]) == (3, 9)
    assert cokernel_invariants([[1, 0], [0, 1]], [3, 9]) == ()
    assert cokernel_invariants([], [1]) == ()
    assert cokernel_invariants([], [2, 3]) == (6,)


def test_subgroup_worked_example():
    assert subgroup_invariants([[0, 3]], [3, 9]) == (3,)
    basis = subgroup_basis([[0, 3]], [3, 9])
    assert basis == [((0, 3), 3)]


def test_input_validation():
    with pytest.raises(ValueError):
        cokernel_invariants([[1]], [2, 2])
    with pytest.raises(ValueError):
        cokernel_invariants([], [0, 2])


@pytest.mark.parametrize("seed", range(10))
def test_quotient_and_subgroup_orders_multiply(seed):
    rng = random.Random(0xC0C0 + seed)
    q = rng.randint(1, 3)
    moduli = [rng.choice([1, 2, 3, 4, 6, 9]) for _ in range(q)]
    rows = [[rng.randint(0, 30) for _ in range(q)] for _ in range(rng.randint(0, 3))]
    sub = closure(rows, moduli)
    quot = cokernel_invariants(rows, moduli)
    subinv = subgroup_invariants(rows, moduli)
    assert prod(quot) * len(sub) == prod(moduli)
    assert prod(subinv) == len(sub)
    # the returned basis spans exactly the same subgroup
    basis = subgroup_basis(rows, moduli)
    assert closure([list(vec) for vec, _ in basis], moduli) == sub
    assert tuple(order for _, order in basis) == subinv
    for vec, order in basis:
        assert len(closure([list(vec)], moduli)) == order
