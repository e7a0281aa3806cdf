import itertools
import math

import pytest
from hypothesis import given, strategies as st

from raagkit.errors import DomainError
from raagkit.intlinalg import (
    Lattice,
    det,
    hermite_normal_form,
    identity,
    intersect_lattices,
    inverse_unimodular,
    is_partial_basis,
    left_kernel,
    matmul,
    matvec,
    reduce_to_standard,
    smith_normal_form,
)


def test_snf_examples():
    assert smith_normal_form(identity(2))[0] == [1, 1]
    assert smith_normal_form([[2, 0], [0, 3]])[0] == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]])[0] == []


def test_partial_basis_examples():
    assert is_partial_basis([[1, 0], [0, 1]])
    assert not is_partial_basis([[2, 0]])
    assert is_partial_basis([[2, 1], [1, 1]])
    with pytest.raises(DomainError):
        is_partial_basis([[1, 0], [0, 1], [1, 1]])


def test_reduce_to_standard_examples():
    m = reduce_to_standard([[2, 1], [1, 1]])
    assert matmul(m, [[2, 1], [1, 1]]) == identity(2)
    assert reduce_to_standard(identity(3)) == identity(3)
    m = reduce_to_standard([[1, 0, 0]])
    assert matvec(m, [1, 0, 0]) == [0, 0, 1] and abs(det(m)) == 1
    with pytest.raises(DomainError):
        reduce_to_standard([[2, 0]])


def test_intersection_examples():
    a = Lattice.span([(2, 0), (0, 1)], 2)
    b = Lattice.span([(1, 0), (0, 3)], 2)
    assert intersect_lattices(a, b) == Lattice.span([(2, 0), (0, 3)], 2)
    assert intersect_lattices(a, a) == a
    assert intersect_lattices(Lattice.span([(1, 0)], 2), Lattice.span([(0, 1)], 2)).rank == 0


def test_lattice_reduce_picks_coset_representative():
    lat = Lattice.span([(2, 0), (0, 3)], 2)
    assert lat.reduce((5, -1)) == lat.reduce((1, 2))
    assert lat.contains((4, 6)) and not lat.contains((1, 0))


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _det_divisors(m):
    """gcd of k x k minors, the determinantal divisors."""
    r, c = len(m), len(m[0])
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                g = math.gcd(g, det([[m[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


@given(matrices)
def test_snf_reconstruction_and_oracle(m):
    divs, left, right = smith_normal_form(m)
    assert abs(det(left)) == 1 and abs(det(right)) == 1
    prod = matmul(matmul(left, m), right)
    for i, row in enumerate(prod):
        for j, x in enumerate(row):
            assert x == (divs[i] if i == j and i < len(divs) else 0)
    for a, b in zip(divs, divs[1:]):
        assert b % a == 0
    dd = _det_divisors(m)
    assert [math.prod(divs[: k + 1]) for k in range(len(divs))] == dd


@given(matrices)
def test_hnf_is_row_equivalent(m):
    h, u = hermite_normal_form(m)
    assert abs(det(u)) == 1
    zeros = [[0] * len(m[0])] * (len(m) - len(h))
    assert matmul(u, m) == h + zeros
    pivots = [next(j for j, x in enumerate(row) if x) for row in h]
    assert pivots == sorted(set(pivots))
    for r, c in enumerate(pivots):
        assert h[r][c] > 0 and all(0 <= h[i][c] < h[r][c] for i in range(r))


@given(matrices)
def test_left_kernel_annihilates(m):
    for row in left_kernel(m):
        assert all(sum(row[i] * m[i][j] for i in range(len(m))) == 0 for j in range(len(m[0])))


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=3))
def test_partial_basis_witness(vs):
    if not is_partial_basis(vs):
        with pytest.raises(DomainError):
            reduce_to_standard(vs)
        return
    m = reduce_to_standard(vs)
    assert abs(det(m)) == 1
    k = len(vs)
    for i, v in enumerate(vs):
        assert matvec(m, v) == [int(j == 3 - k + i) for j in range(3)]


vec2 = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=3)


@given(vec2, vec2)
def test_intersection_against_bounded_search(a, b):
    la, lb = Lattice.span(a, 2), Lattice.span(b, 2)
    meet = intersect_lattices(la, lb)
    for v in itertools.product(range(-12, 13), repeat=2):
        assert meet.contains(v) == (la.contains(v) and lb.contains(v))


@given(matrices)
def test_unimodular_inverse(m):
    sq = [row + [0] * (len(m) - len(row)) for row in m] if len(m[0]) < len(m) else [row[: len(m)] for row in m]
    _, left, _ = smith_normal_form(sq)
    assert matmul(left, inverse_unimodular(left)) == identity(len(left))
