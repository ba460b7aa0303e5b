import random
import time

import pytest

from facfold.factorization import (
    classify_window,
    enumerate_Z_ell,
    enumerate_Z_window,
    lengths,
    verify_lift,
    window_threshold,
)
from facfold.monoid import GradedMonoid

import oracles


def test_twelve_in_two_three():
    m = GradedMonoid.numerical(2, 3)
    start = time.perf_counter()
    zs = enumerate_Z_window(m, (12,), 10)
    assert time.perf_counter() - start < 1.0
    assert len(zs) == 3
    assert sorted(lengths(m, (12,), 10)) == [4, 5, 6]
    assert all(verify_lift(m, (12,), z) for z in zs)


@pytest.mark.parametrize("d,count", [(4, 2), (10, 5), (20, 10)])
def test_scaled_pairs(d, count):
    h = GradedMonoid.numerical(*range(d, 2 * d))
    assert len(enumerate_Z_ell(h, (3 * d,), 2)) == count == oracles.pair_count(d) == d // 2


def test_zero_has_the_empty_factorization():
    m = GradedMonoid.numerical(2, 3)
    zs = enumerate_Z_window(m, (0,), 5)
    assert len(zs) == 1 and next(iter(zs)).length == 0
    assert enumerate_Z_ell(m, (0,), 1) == set()


def test_nonmember_is_an_error():
    with pytest.raises(ValueError):
        enumerate_Z_ell(GradedMonoid.numerical(2, 3), (1,), 1)


def test_window_threshold_and_completeness():
    m = GradedMonoid.numerical(2, 3)
    assert window_threshold(m, (12,)) == 6
    rep = classify_window(m, (12,), 5)
    assert rep.fibers == {4: 1, 5: 1}
    assert not rep.complete
    assert classify_window(m, (12,), 6).complete


def test_units_are_factored_out():
    # N0 x Z: atoms are classes (1, *), so (3, 7) has one factorization
    m = GradedMonoid.create([(1, 0), (1, 1)], [(0, 1)])
    zs = enumerate_Z_window(m, (3, 7), 5)
    assert len(zs) == 1
    assert next(iter(zs)).length == 3


def test_two_dimensional_fibers():
    # (3, 3) = (3, 0) + (0, 3) = 3 * (1, 1)
    m = GradedMonoid.create([(3, 0), (0, 3), (1, 1)], [])
    assert classify_window(m, (3, 3), 6).fibers == {2: 1, 3: 1}
    # (1, 1) is not an atom of the orthant
    orthant = GradedMonoid.create([(1, 0), (0, 1), (1, 1)], [])
    assert classify_window(orthant, (2, 2), 4).fibers == {4: 1}


def test_fiber_counts_match_dp_oracle():
    rng = random.Random(11)
    for _ in range(100):
        gens = sorted(rng.sample(range(2, 12), rng.randint(1, 4)))
        m = GradedMonoid.numerical(*gens)
        b = rng.randint(0, 40)
        expected = oracles.factorization_counts(gens, b)
        if not m.contains((b,)):
            assert not expected
            continue
        rep = classify_window(m, (b,), window_threshold(m, (b,)))
        assert rep.fibers == expected
