from __future__ import annotations

import pytest

from spinflat.parahoric import (
    burnside_count,
    conjugacy_classes,
    element_order,
    maximal_classes,
    normalize_index,
    xi_group,
)


def test_xi_group_n4():
    xi = xi_group(4)
    assert xi.order == 4
    assert xi.exponent() == 2
    assert not xi.is_cyclic()


def test_xi_group_n5_cyclic():
    xi = xi_group(5)
    assert xi.order == 4
    assert xi.is_cyclic()
    assert element_order(xi.labels, xi.tau2) == 4


@pytest.mark.parametrize("n", range(4, 13))
def test_action_shape(n):
    xi = xi_group(n)
    tau1 = dict(zip(xi.labels, xi.tau1))
    tau2 = dict(zip(xi.labels, xi.tau2))
    for i in range(2, n - 1):
        assert tau2[i] == n - i
        assert tau1[i] == i
    assert tau1[0] == "0'" and tau1[n] == f"{n}'"
    assert tau2[0] == n
    assert xi.order == 4
    assert xi.is_cyclic() == (n % 2 == 1)


@pytest.mark.parametrize("n", range(4, 11))
def test_orbit_counts(n):
    assert burnside_count(n) == len(conjugacy_classes(n))
    assert maximal_classes(n) == [0] + list(range(2, n // 2 + 1))


def test_examples():
    assert maximal_classes(5) == [0, 2]
    assert maximal_classes(6) == [0, 2, 3]
    assert normalize_index({3}, 4) == (1,)
    assert normalize_index({0}, 4) == (0,)
    assert normalize_index({1, 3}, 4) == (1, 3)


def test_subset_limit():
    with pytest.raises(ValueError):
        conjugacy_classes(13)
