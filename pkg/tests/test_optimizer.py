"""Maximization DPs against the brute-force oracle and known values."""

import pytest

from aperiodic.combinatorics import (
    monotonic_size,
    nearly_monotonic_size,
    partially_monotonic_size,
    sctree_size,
    unitary_even_lower_bound,
    unitary_family_size,
)
from aperiodic.families import Distribution, leaf, parse_structure
from aperiodic.optimizer import (
    SctiDpTable,
    UiDpTable,
    exhaustive_max,
    max_sctree,
    max_unitary,
)

from reference_tables import COMP_UNITARY, SC_TREE, SCTI_WITNESS_100, UI_WITNESS_100


def test_max_unitary_small():
    assert max_unitary(1) == (1, Distribution((1,)))
    value, witness = max_unitary(4)
    assert value == 45 and witness == Distribution((2, 2))
    assert max_unitary(8)[0] == 121500


def test_max_unitary_known_range():
    table = UiDpTable.compute(13)
    for n in range(1, 14):
        assert table.values[n] == COMP_UNITARY[n]
        assert unitary_family_size(table.witness(n)) == table.values[n]


def test_max_unitary_witness_never_has_adjacent_singletons():
    table = UiDpTable.compute(40)
    for n in range(2, 41):
        assert not table.witness(n).has_adjacent_singletons()


def test_max_unitary_suffix_maximality():
    table = UiDpTable.compute(30)
    for n in range(2, 31):
        parts = table.witness(n).parts
        suffix = sum(parts[1:])
        if suffix:
            assert unitary_family_size(Distribution(parts[1:])) == table.values[suffix]


def test_max_sctree_small():
    value, witness = max_sctree(4)
    assert value == 47 and str(witness) == "(2,2)"
    value, witness = max_sctree(6)
    assert value == 1849 and str(witness) == "((2,2),2)"
    assert max_sctree(10)[0] == SC_TREE[10]


def test_max_sctree_known_range():
    table = SctiDpTable.compute(13)
    for n in range(1, 14):
        assert table.value(n) == SC_TREE[n]
        assert sctree_size(table.witness(n)) == table.value(n)


def test_sctree_tie_breaking_prefers_leaf():
    # the 2-state split ties with the bipath; the leaf must win
    assert max_sctree(2)[1] == leaf(2)
    table = SctiDpTable.compute(4)
    assert table.witness(2, 1) == leaf(2)


def test_dp_matches_exhaustive():
    for n in range(1, 10):
        value, witness = exhaustive_max("ui", n)
        assert value == max_unitary(n)[0]
        assert witness == max_unitary(n)[1]
        value, tree = exhaustive_max("scti", n)
        assert value == max_sctree(n)[0]
        assert sctree_size(tree) == value


def test_exhaustive_examples():
    assert exhaustive_max("ui", 5)[0] == 270
    assert exhaustive_max("scti", 5)[0] == 273
    assert exhaustive_max("ui", 1) == (1, Distribution((1,)))
    with pytest.raises(ValueError):
        exhaustive_max("ui", 13)
    with pytest.raises(ValueError):
        exhaustive_max("mixed", 4)


def test_witness_100():
    value, witness = max_unitary(100)
    assert witness.parts == UI_WITNESS_100
    assert value > 21 * 10**159
    assert unitary_family_size(witness) == value


def test_sctree_witness_100():
    value, witness = max_sctree(100)
    assert str(witness) == SCTI_WITNESS_100
    assert value > 33 * 10**159
    assert sctree_size(parse_structure(SCTI_WITNESS_100)) == value


def test_domination_chain():
    for n in range(4, 14):
        m_scti = max_sctree(n)[0]
        m_ui = max_unitary(n)[0]
        assert m_scti >= m_ui >= nearly_monotonic_size(n) >= \
            partially_monotonic_size(n) >= monotonic_size(n)


def test_even_lower_bound_floor():
    for n in range(2, 21, 2):
        assert max_unitary(n)[0] >= unitary_even_lower_bound(n)
    assert max_unitary(4)[0] == unitary_even_lower_bound(4) == 45


def test_max_sctree_closure_witness():
    from aperiodic.automata import transition_semigroup
    from aperiodic.families import build_family

    for n in range(1, 8):
        value, tree = max_sctree(n)
        assert len(transition_semigroup(build_family("scti", tree))) == value
        value, dist = max_unitary(n)
        assert len(transition_semigroup(build_family("ui", dist))) == value
