import pytest
from hypothesis import given, settings, strategies as st

from facfold.lattice import (
    IntegerLattice,
    hnf,
    identity,
    lattice_contains,
    lattice_equal,
    lattice_intersect,
    matmul,
    snf,
)

import oracles

small = st.integers(-9, 9)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


def test_hnf_of_coprime_scalars():
    lat, u = hnf([(2,), (3,)])
    assert lat.basis == ((1,),)
    assert oracles.det(u) in (1, -1)


def test_hnf_basis_shape():
    lat, _ = hnf([(4, 6), (2, 2), (0, 4)])
    # pivots positive, strictly increasing, entries above a pivot reduced
    assert lat.basis == ((2, 0), (0, 2))


def test_snf_small_cases():
    d, left, right = snf([[2, 0], [0, 3]])
    assert d == [[1, 0], [0, 6]]
    assert matmul(matmul(left, d), right) == [[2, 0], [0, 3]]
    assert snf([[4, 6]])[0] == [[2, 0]]


def test_snf_zero_matrix():
    d, left, right = snf([[0, 0], [0, 0]])
    assert d == [[0, 0], [0, 0]]


def test_intersection_examples():
    two = IntegerLattice.from_generators([(2,)])
    three = IntegerLattice.from_generators([(3,)])
    assert lattice_intersect(two, three) == IntegerLattice.from_generators([(6,)])
    x = IntegerLattice.from_generators([(1, 0)])
    y = IntegerLattice.from_generators([(0, 1)])
    assert lattice_intersect(x, y).rank == 0


def test_reduce_and_membership():
    lat = IntegerLattice.from_generators([(0, 1)])
    assert lat.reduce((3, 5)) == (3, 0)
    assert IntegerLattice.from_generators([(2,)]).reduce((5,)) == (1,)
    assert lattice_contains(lat, (0, -7))
    assert (1, 0) not in lat


def test_order_of():
    lat = IntegerLattice.from_generators([(4, 0), (0, 6)])
    assert lat.order_of((1, 0)) == 4
    assert lat.order_of((2, 3)) == 2
    assert lat.order_of((0, 0)) == 1
    assert IntegerLattice.from_generators([(1, 0)]).order_of((0, 1)) is None


def test_coset_representatives_and_index():
    big = IntegerLattice.full(2)
    sub = IntegerLattice.from_generators([(2, 0), (0, 3)])
    reps = big.coset_representatives(sub)
    assert len(reps) == 6 == sub.index_in(big)
    assert len({sub.reduce(r) for r in reps}) == 6
    with pytest.raises(ValueError):
        big.coset_representatives(IntegerLattice.from_generators([(1, 0)]))


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        IntegerLattice.full(2).reduce((1,))


def test_coordinates_reject_nonmembers():
    lat = IntegerLattice.from_generators([(2, 1)])
    assert lat.coordinates((-4, -2)) == (-2,)
    with pytest.raises(ValueError):
        lat.coordinates((1, 0))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_snf_reconstructs_and_matches_minors(a):
    d, left, right = snf(a)
    assert matmul(matmul(left, d), right) == a
    assert oracles.det(left) in (1, -1) and oracles.det(right) in (1, -1)
    diag = [d[i][i] for i in range(min(len(a), len(a[0])))]
    nonzero = [x for x in diag if x]
    assert all(x > 0 for x in nonzero)
    assert all(nonzero[i + 1] % nonzero[i] == 0 for i in range(len(nonzero) - 1))
    assert nonzero == oracles.invariant_factors(a)
    off = [d[i][j] for i in range(len(a)) for j in range(len(a[0])) if i != j]
    assert not any(off)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_hnf_transform_reconstructs(a):
    lat, u = hnf(a)
    assert oracles.det(u) in (1, -1)
    top = matmul(u, a)
    assert [tuple(r) for r in top[: lat.rank]] == list(lat.basis)
    assert not any(any(r) for r in top[lat.rank:])
    assert lat.rank == oracles.rank(a)
    for row, p in zip(lat.basis, lat.pivots):
        assert row[p] > 0
    for i, p in enumerate(lat.pivots):
        for k in range(i):
            assert 0 <= lat.basis[k][p] < lat.basis[i][p]


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_membership_matches_minor_oracle(a, v):
    a = [row + [0] * (3 - len(row)) for row in a]
    lat = IntegerLattice.from_generators(a, 3)
    assert lat.contains(v) == oracles.in_row_span(a, v)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 2), matrices(3, 2))
def test_intersection_is_largest_common_sublattice(a, b):
    a = [row + [0] * (2 - len(row)) for row in a]
    b = [row + [0] * (2 - len(row)) for row in b]
    la = IntegerLattice.from_generators(a, 2)
    lb = IntegerLattice.from_generators(b, 2)
    meet = lattice_intersect(la, lb)
    assert meet.is_sublattice_of(la) and meet.is_sublattice_of(lb)
    for x in range(-6, 7):
        for y in range(-6, 7):
            assert meet.contains((x, y)) == (la.contains((x, y)) and lb.contains((x, y)))
    assert lattice_equal(meet, lattice_intersect(lb, la))


def test_identity_helper():
    assert identity(2) == [[1, 0], [0, 1]]
