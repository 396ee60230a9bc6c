from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kmx.affine import untwisted_basis
from kmx.errors import NotDominantIntegral
from kmx.rootdata import all_entries, cartan_from_roots, catalog
from kmx.weights import (
    WeightFunctional,
    colevel_coefficients,
    fundamental_weights,
    integrable_spec,
    level,
    mu_by_solve,
)

ENTRIES = list(all_entries(8))


def test_mu_examples():
    assert fundamental_weights(catalog("A_1^{(1)}", 1)).mu == (1,)
    assert fundamental_weights(catalog("A_2^{(1)}", 2)).mu == (1, 1)


@pytest.mark.parametrize("R", ENTRIES, ids=lambda R: R.label)
def test_mu_two_routes_and_table(R):
    W = fundamental_weights(R)
    assert W.mu == mu_by_solve(R)
    n = R.rank + 1
    assert W.table == tuple(tuple(int(j == k) for k in range(n)) for j in range(n))
    assert all(w.d_value == 0 for w in W.weights)


def test_integrable_spec():
    lam = integrable_spec([1, 0])
    assert lam.values == (1, 0)
    assert integrable_spec([0, 0, 0]).values == (0, 0, 0)
    for bad in ([0, -1], [Fraction(1, 2), 0], [True, 0], []):
        with pytest.raises(NotDominantIntegral):
            integrable_spec(bad)


def test_level_examples():
    C = untwisted_basis(catalog("A_1^{(1)}", 1))
    A = cartan_from_roots(catalog("A_1^{(1)}", 1))
    for m, want in (((1, 0), 1), ((1, 1), 2), ((0, 0), 0), ((2, 0), 2)):
        lam = integrable_spec(m)
        assert level(lam, C) == want
        assert level(lam, A) == want


@pytest.mark.parametrize("R", [R for R in ENTRIES if R.twist == 1], ids=lambda R: R.label)
def test_level_routes_agree_untwisted(R):
    C = untwisted_basis(R)
    A = cartan_from_roots(R)
    for j in range(R.rank + 1):
        lam = WeightFunctional(tuple(Fraction(int(i == j)) for i in range(R.rank + 1)))
        assert level(lam, C) == level(lam, A)


@pytest.mark.parametrize("R", ENTRIES, ids=lambda R: R.label)
def test_lambda0_has_level_one(R):
    A = cartan_from_roots(R)
    a = colevel_coefficients(A)
    n = A.size
    assert all(sum(a[i] * A[i, j] for i in range(n)) == 0 for j in range(n))
    lam0 = WeightFunctional(tuple(Fraction(int(i == 0)) for i in range(n)))
    assert level(lam0, A) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=3, max_size=3), st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_level_additive(m1, m2):
    C = untwisted_basis(catalog("C_2^{(1)}", 2))
    a, b = integrable_spec(m1), integrable_spec(m2)
    assert level(a + b, C) == level(a, C) + level(b, C)
    assert level(3 * a, C) == 3 * level(a, C)
