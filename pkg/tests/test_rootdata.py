from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kmx.cartan import classify
from kmx.errors import DimensionMismatch, RankOutOfRange, UnknownFamily
from kmx.rootdata import (
    AmbientForm,
    all_entries,
    cartan_from_roots,
    catalog,
    enumerate_roots,
    lambda0,
    null_coefficients,
    pairing,
    real_roots_by_reflection,
)

from oracles import ambient_pairing

Q = Fraction
ENTRIES = list(all_entries(8))


def e(n, i):
    return tuple(Q(int(k == i)) for k in range(1, n + 1))


def test_pairing_examples():
    F = AmbientForm(4)
    assert pairing(e(4, 1), e(4, 1), F) == 1
    assert pairing(e(4, 4), e(4, 4), F) == 0
    assert pairing(e(4, 3), e(4, 4), F) == 1
    with pytest.raises(DimensionMismatch):
        pairing(e(4, 1), e(3, 1), F)
    with pytest.raises(DimensionMismatch):
        pairing(e(3, 1), e(3, 1), F)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 10).flatmap(lambda n: st.tuples(*[st.lists(st.fractions(max_denominator=6), min_size=n, max_size=n)] * 2)))
def test_pairing_matches_oracle_and_is_symmetric(vw):
    v, w = vw
    assert pairing(v, w) == ambient_pairing(v, w) == pairing(w, v)


def test_catalog_examples():
    R = catalog("A_1^{(1)}", 1)
    assert R.simple_roots[0] == (-1, 1, 0, 1)
    assert R.simple_roots[1] == (1, -1, 0, 0)
    assert R.delta == (0, 0, 0, 1)
    assert catalog("D_4^{(3)}", 2).delta == (0, 0, 0, 0, 0, Q(1, 3))
    assert catalog("E_6^{(2)}", 4).simple_roots[4] == (1, 1, 0, 0, 0, 0, 0, 0, 0, 0)


def test_catalog_lookup_forms():
    assert catalog("A", 1, 1).label == "A_1^{(1)}"
    assert catalog("A_1^{(1)}").label == "A_1^{(1)}"
    assert catalog("A_{2l}^{(2)}", 2).label == "A_4^{(2)}"
    with pytest.raises(UnknownFamily):
        catalog("Q", 1, 1)
    with pytest.raises(RankOutOfRange):
        catalog("B", 2, 1)
    with pytest.raises(RankOutOfRange):
        catalog("E_6^{(1)}", 7)


def test_cartan_examples():
    assert cartan_from_roots(catalog("A_1^{(1)}", 1)).rows() == [[2, -2], [-2, 2]]
    assert cartan_from_roots(catalog("A_2^{(2)}", 1)).rows() == [[2, -1], [-4, 2]]
    R = catalog("C_2^{(1)}", 2)
    rows = cartan_from_roots(R).rows()
    a = R.simple_roots
    for j in range(3):
        for k in range(3):
            assert rows[j][k] == 2 * ambient_pairing(a[k], a[j]) / ambient_pairing(a[j], a[j])
    assert rows == [[2, -1, 0], [-2, 2, -2], [0, -1, 2]]


def test_every_entry_is_affine_and_identified():
    for R in ENTRIES:
        c = classify(cartan_from_roots(R))
        assert c.kind == "Affine" and c.det == 0
        assert c.family == R.label


def test_delta_isotropy():
    for R in ENTRIES:
        F = R.ambient
        assert pairing(R.delta, R.delta, F) == 0
        assert all(pairing(R.delta, a, F) == 0 for a in R.simple_roots)


def test_delta_in_root_span():
    for R in ENTRIES:
        a = null_coefficients(R)
        combo = tuple(sum(c * r[i] for c, r in zip(a, R.simple_roots)) for i in range(R.ambient.dim))
        assert combo == tuple(R.twist * x for x in R.delta) or combo == R.delta
        assert all(x > 0 and Q(x).denominator == 1 for x in a)


def test_lambda0():
    assert lambda0(catalog("A_1^{(1)}", 1)) == (0, 0, 1, 0)
    for R in ENTRIES:
        L = lambda0(R)
        F = R.ambient
        a0 = R.simple_roots[0]
        assert pairing(L, a0, F) == pairing(a0, a0, F) / 2
        assert pairing(L, R.delta, F) == pairing(a0, a0, F) / 2
        assert pairing(L, L, F) == 0
        assert all(pairing(L, a, F) == 0 for a in R.simple_roots[1:])


def _split(roots):
    real = {r.coords for r in roots if not r.is_imaginary}
    imag = {r.coords: r.multiplicity for r in roots if r.is_imaginary}
    return real, imag


def test_enumerate_a1():
    R = catalog("A_1^{(1)}", 1)
    a1, d = R.simple_roots[1], R.delta
    neg = lambda v: tuple(-x for x in v)
    plus = lambda v, w: tuple(x + y for x, y in zip(v, w))
    real, imag = _split(enumerate_roots(R, 0))
    assert real == {a1, neg(a1)} and not imag
    real, imag = _split(enumerate_roots(R, 1))
    want = {a1, neg(a1)}
    for j in (1, -1):
        jd = tuple(j * x for x in d)
        want |= {plus(jd, a1), plus(jd, neg(a1))}
    assert real == want
    assert imag == {d: 1, neg(d): 1}


def test_enumerate_a2_counts():
    real, imag = _split(enumerate_roots(catalog("A_2^{(1)}", 2), 1))
    assert len(real) == 18
    assert sorted(imag.values()) == [2, 2]


def test_roots_negation_symmetric_and_signed():
    for R in ENTRIES:
        if R.rank > 4:
            continue
        roots = enumerate_roots(R, 2)
        coords = {r.coords for r in roots}
        for r in roots:
            assert tuple(-x for x in r.coords) in coords
            n = pairing(r.coords, r.coords, R.ambient)
            if r.is_imaginary:
                assert n == 0
            else:
                assert n > 0 and r.multiplicity == 1


def test_untwisted_enumeration_two_routes():
    for R in ENTRIES:
        if R.twist != 1 or R.rank > 4:
            continue
        roots = enumerate_roots(R, 2)
        real = {r.coefficients for r in roots if not r.is_imaginary and sum(r.coefficients) > 0}
        assert real == set(real_roots_by_reflection(R, 2))


def test_untwisted_imaginary_multiplicity_is_rank():
    for R in ENTRIES:
        if R.twist == 1:
            assert {r.multiplicity for r in enumerate_roots(R, 1) if r.is_imaginary} == {R.rank}
