import itertools
import random
from fractions import Fraction

import pytest

from kmx.affine import untwisted_basis
from kmx.cartan import validate_gcm
from kmx.chevalley import add, chevalley_basis, finite_roots, invariant_form, structure_constants
from kmx.errors import NotFiniteType
from kmx.rootdata import all_entries, catalog, null_coefficients

UNTWISTED = [R for R in all_entries(4) if R.twist == 1]


def basis(letter, l):
    return untwisted_basis(catalog(letter, l, 1))


def jacobi_defects(C, triples):
    for x, y, z in triples:
        acc: dict = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for k, v in C.bracket_basis(a, b).items():
                add(acc, C.bracket_basis(k, c), v)
        if acc:
            yield (x, y, z)


def test_finite_roots_examples():
    A1 = finite_roots(validate_gcm([[2]]))
    assert A1.positive == ((1,),) and A1.highest == (1,)
    A2 = finite_roots(validate_gcm([[2, -1], [-1, 2]]))
    assert len(A2.roots) == 6 and A2.highest == (1, 1)
    G2 = finite_roots(validate_gcm([[2, -1], [-3, 2]]))
    assert len(G2.roots) == 12
    # alpha_2 is the short root here, so the highest root is 2 alpha_1 + 3 alpha_2
    assert G2.highest == (2, 3)


def test_highest_root_extends_alpha0():
    # delta = alpha_0 + theta in every untwisted catalog entry
    for R in UNTWISTED:
        C = untwisted_basis(R)
        assert tuple(null_coefficients(R)[1:]) == C.highest_root
        assert null_coefficients(R)[0] == 1
    assert basis("G", 2).highest_root in ((3, 2), (2, 3))


def test_not_finite():
    with pytest.raises(NotFiniteType):
        finite_roots(validate_gcm([[2, -2], [-2, 2]]))
    with pytest.raises(NotFiniteType):
        finite_roots(validate_gcm([[2, 0], [0, 2]]))


@pytest.mark.parametrize("letter, l, dim", [("A", 2, 8), ("G", 2, 14), ("D", 4, 28), ("B", 3, 21), ("C", 2, 10), ("F", 4, 52)])
def test_dimensions(letter, l, dim):
    assert basis(letter, l).dim == dim


def test_root_counts():
    for l in range(1, 6):
        assert 2 * basis("A", l).npos == l * (l + 1)
    assert 2 * basis("C", 2).npos == 8


def test_a1_relations():
    C = chevalley_basis(validate_gcm([[2]]))
    H, E, F = C.h(1), C.e(1), C.f(1)
    assert C.bracket_basis(E, F) == {H: 1}
    assert C.bracket_basis(H, E) == {E: 2}
    assert C.bracket_basis(H, F) == {F: -2}


def test_a2_extraspecial():
    C = basis("A", 2)
    out = C.bracket_basis(C.e(1), C.e(2))
    assert list(out) == [C.root_vector((1, 1))]
    assert abs(next(iter(out.values()))) == 1


@pytest.mark.parametrize("R", UNTWISTED, ids=lambda R: R.label)
def test_structure_constants_are_root_string_lengths(R):
    C = untwisted_basis(R)
    roots = C.roots.roots
    for a, b in itertools.product(sorted(roots), repeat=2):
        s = tuple(x + y for x, y in zip(a, b))
        if s not in roots:
            continue
        p = 0
        while tuple(y - (p + 1) * x for x, y in zip(a, b)) in roots:
            p += 1
        n = C.N[(a, b)]
        assert abs(n) == p + 1
        assert C.N[(b, a)] == -n


@pytest.mark.parametrize("R", UNTWISTED, ids=lambda R: R.label)
def test_simple_generator_relations(R):
    C = untwisted_basis(R)
    A = C.roots.cartan
    for j in range(1, C.l + 1):
        for k in range(1, C.l + 1):
            a = A[j - 1, k - 1]
            assert C.bracket_basis(C.h(j), C.e(k)) == ({C.e(k): a} if a else {})
            want = {C.h(j): 1} if j == k else {}
            assert C.bracket_basis(C.e(j), C.f(k)) == want


@pytest.mark.parametrize("R", UNTWISTED, ids=lambda R: R.label)
def test_jacobi_exhaustive(R):
    C = untwisted_basis(R)
    triples = itertools.combinations(range(C.dim), 3)
    assert next(jacobi_defects(C, triples), None) is None


@pytest.mark.parametrize("letter, l", [("A", 4), ("B", 4), ("C", 4), ("D", 4), ("F", 4), ("E", 6)])
def test_jacobi_sampled(letter, l):
    C = basis(letter, l)
    rng = random.Random(7)
    triples = [tuple(rng.randrange(C.dim) for _ in range(3)) for _ in range(3000)]
    assert next(jacobi_defects(C, triples), None) is None


def test_form_examples():
    C = chevalley_basis(validate_gcm([[2]]))
    assert C.form_basis(C.e(1), C.f(1)) == 1
    assert C.form_basis(C.h(1), C.h(1)) == 2
    assert C.form_basis(C.e(1), C.e(1)) == 0
    assert C.roots.form(C.highest_root, C.highest_root) == 2


@pytest.mark.parametrize("R", UNTWISTED, ids=lambda R: R.label)
def test_form_normalization_and_orthogonality(R):
    C = untwisted_basis(R)
    fin = C.roots
    assert fin.form(C.highest_root, C.highest_root) == 2
    for k, beta in enumerate(fin.positive, start=1):
        assert C.form_basis(C.e(k), C.f(k)) == Fraction(2) / fin.form(beta, beta)
        assert C.form_basis(C.e(k), C.e(k)) == 0
    B = invariant_form(C)
    for (a, b), v in B.items():
        assert B.get((b, a)) == v


@pytest.mark.parametrize("letter, l", [("A", 2), ("B", 3), ("C", 2), ("G", 2), ("D", 4)])
def test_form_invariance(letter, l):
    C = basis(letter, l)
    rng = random.Random(3)
    for _ in range(400):
        x, y, z = (rng.randrange(C.dim) for _ in range(3))
        lhs = C.form(C.bracket({x: 1}, {y: 1}), {z: 1})
        rhs = C.form({x: 1}, C.bracket({y: 1}, {z: 1}))
        assert lhs == rhs


def test_structure_constants_entry_point():
    R = finite_roots(validate_gcm([[2, -1], [-1, 2]]))
    assert structure_constants(R).dim == 8


def test_export_is_json():
    import json

    doc = json.loads(basis("A", 1).to_json())
    assert doc
