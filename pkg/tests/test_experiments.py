"""Reversal and product experiment drivers (small runs; acceptance runs full scale)."""

import pytest

from aperiodic.automata import is_minimal, transition_semigroup
from aperiodic.experiments import (
    TWO_STATE_VARIANTS,
    family_products,
    random_aperiodic_dfa,
    reversal_experiment,
    two_state_dfa,
)
from aperiodic.rng import SplitMix64
from aperiodic.semigroups import is_aperiodic


def test_splitmix_is_deterministic():
    a = SplitMix64(42)
    b = SplitMix64(42)
    assert [a.next64() for _ in range(5)] == [b.next64() for _ in range(5)]
    # first outputs of the reference stream for seed 0
    c = SplitMix64(0)
    assert c.next64() == 0xE220A8397B1DCDAF
    assert c.next64() == 0x6E789E6AA1B965F4


def test_splitmix_below_bounds():
    rng = SplitMix64(9)
    draws = [rng.below(10) for _ in range(1000)]
    assert set(draws) <= set(range(10))
    assert len(set(draws)) == 10
    with pytest.raises(ValueError):
        rng.below(0)


def test_random_aperiodic_dfa():
    rng = SplitMix64(5)
    for n in (2, 4, 6):
        d = random_aperiodic_dfa(n, rng)
        assert d.n == n
        assert 0 < len(d.finals) < n
        assert is_aperiodic(transition_semigroup(d))
    # same seed, same stream, same DFA
    assert random_aperiodic_dfa(4, SplitMix64(5)) == random_aperiodic_dfa(4, SplitMix64(5))


def test_reversal_experiment_small():
    records = reversal_experiment(seed=1, count=15, ns=(2, 3, 4), words=30)
    assert len(records) == 15
    for rec in records:
        assert rec.within_bound
        assert rec.complement_ok
        assert rec.complement_unreached


def test_two_state_variants_are_minimal():
    for variant in TWO_STATE_VARIANTS:
        for final_state in (0, 1):
            d = two_state_dfa(variant, final_state)
            assert is_minimal(d).minimal
            assert is_aperiodic(transition_semigroup(d))


def test_family_products_small():
    records = family_products(ms=(2, 3), final_states=(0, 1))
    assert records, "no instances generated"
    for rec in records:
        assert rec.within_bound, rec
    # both bound regimes exercised
    assert {rec.final_state for rec in records} == {0, 1}
