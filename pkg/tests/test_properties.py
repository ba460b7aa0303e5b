import random

import pytest
from hypothesis import given, settings, strategies as st

from facfold.constructions import condition_i, condition_ii, enlarge_nongroup, verify_ideal_properties
from facfold.monoid import GradedMonoid

import property_suites as suites


@pytest.mark.parametrize("name,suite", suites.SUITES, ids=[n for n, _ in suites.SUITES])
def test_property_suite(name, suite):
    tally = suite()
    assert tally["instances"] == 100


def test_suites_reach_the_interesting_branches():
    assert suites.persistence_injectivity()["admissible"] >= 30
    assert suites.survival_transitivity()["chains"] >= 10
    assert suites.soundness_sentinel()["guarded"] >= 30


def test_soundness_sentinel():
    tally = suites.soundness_sentinel()
    assert tally["nn_fails"] == 0 and tally["ns_fails"] == 0


def test_forcing_dichotomy_on_the_line():
    # some positive multiple of v lies in S exactly when (ii) fails for -v
    rng = random.Random(9)
    for _ in range(100):
        gens = sorted(rng.sample(range(2, 12), rng.randint(1, 3)))
        s = GradedMonoid.create([(g,) for g in gens], [], dim=1)
        v = (rng.randint(-15, 15),)
        has_multiple = condition_i(s, v).holds
        assert has_multiple == condition_ii(s, (-v[0],)).fails


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 12), min_size=1, max_size=3), st.integers(1, 20))
def test_ideal_properties_at_window_scale(gens, k):
    n = GradedMonoid.numerical(*sorted(set(gens)))
    members = [x for x in range(1, 40) if n.contains((x,))]
    b = (members[k % len(members)],)
    report = verify_ideal_properties(GradedMonoid.numerical(1), b, n, 16)
    assert report.all_hold
    w = enlarge_nongroup(n, GradedMonoid.numerical(1), b)
    assert not w.in_ideal((0,))
