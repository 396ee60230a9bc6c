from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kmx.affine import LoopElement, bracket
from kmx.errors import AlgebraMismatch, MomentOutOfRange, NotInParabolic
from kmx.scalars import I, conj, root_of_unity
from kmx.unitary import (
    ElementarySpec,
    ExceptionalSpec,
    HermitianSymmetricData,
    LoopMatrix,
    LoopParabolicSpec,
    NaturalParabolicSpec,
    elementary_functional,
    exceptional_functional,
    finite_algebra,
    gram_exceptional,
    omega_elementary,
    omega_exceptional,
    toeplitz,
)
from kmx.verma import (
    apply_omega,
    check_unitarizable,
    consistency_failures,
    gram,
    hermitian_form,
    module_action,
    spanning_check,
    weight_spaces,
)

Q = Fraction
A1 = finite_algebra("A", 1)
A2 = finite_algebra("A", 2)
D_A2 = HermitianSymmetricData(A2)


def lebesgue(K):
    return {k: int(k == 0) for k in range(K + 1)}


# ----------------------------------------------------------------------
# hermitian-symmetric data


@pytest.mark.parametrize("letter, l, node", [("A", 1, 1), ("A", 3, 1), ("A", 3, 2), ("B", 3, 1), ("C", 3, 3), ("D", 4, 1), ("D", 5, 5), ("E", 6, 1)])
def test_hermitian_symmetric_decomposition(letter, l, node):
    C = finite_algebra(letter, l)
    D = HermitianSymmetricData(C, node)
    assert D.check() == []
    assert len(D.p_plus) + len(D.k_plus) == C.npos
    assert C.e(node) in D.p_plus
    assert all(C.e(i) in D.k_plus for i in range(1, l + 1) if i != node)
    A = C.roots.cartan
    x = D.center
    for i in range(l):
        assert sum(x[j] * A[j, i] for j in range(l)) == int(i == node - 1)


def test_non_hermitian_node_rejected():
    with pytest.raises(AlgebraMismatch):
        HermitianSymmetricData(finite_algebra("G", 2), 1)


# ----------------------------------------------------------------------
# elementary class


def test_omega_elementary_examples():
    C = A2
    x = LoopElement.basis(C, 2, C.h(1))
    assert omega_elementary(D_A2, x) == LoopElement.basis(C, -2, C.h(1))
    y = LoopElement.basis(C, 1, C.e(1))
    assert omega_elementary(D_A2, y) == LoopElement.basis(C, -1, C.f(1), -1)
    z = LoopElement.basis(C, 3, C.e(2), I)
    assert omega_elementary(D_A2, z) == LoopElement.basis(C, -3, C.f(2), -I)


def test_omega_elementary_involution():
    C = A2
    for j in (-2, 0, 1):
        for idx in range(C.dim):
            x = LoopElement.basis(C, j, idx)
            assert omega_elementary(D_A2, omega_elementary(D_A2, x)) == x


def loop_elements(C):
    term = st.tuples(st.integers(-2, 2), st.integers(0, C.dim - 1))
    coef = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.builds(lambda t, c: LoopElement.make(C, dict(t), c), st.lists(st.tuples(term, coef), max_size=3), coef)


@settings(max_examples=60, deadline=None)
@given(loop_elements(A2), loop_elements(A2))
def test_omega_elementary_anti_homomorphism(x, y):
    w = lambda v: omega_elementary(D_A2, v)
    assert w(bracket(x, y)) == bracket(w(y), w(x))


def test_elementary_functional_examples():
    C = A1
    h = LoopElement.basis(C, 3, C.h(1))
    S = ElementarySpec(((Q(5),),), (Q(0),))
    assert elementary_functional(S, h) == 5
    S = ElementarySpec(((Q(5),),), (Q(1, 2),))
    assert elementary_functional(S, LoopElement.basis(C, 1, C.h(1))) == -5
    assert elementary_functional(S, LoopElement.basis(C, 2, C.e(1))) == 0
    with pytest.raises(NotInParabolic):
        elementary_functional(S, LoopElement.basis(C, 0, C.f(1)))


def test_elementary_phases():
    S = ElementarySpec(((Q(1),), (Q(2),)), (Q(1, 4), Q(1, 3)))
    assert S.phase(0, 1) == I
    assert S.phase(1, 3) == 1
    assert S.phase(1, 1) * conj(S.phase(1, 1)) == 1
    with pytest.raises(ValueError):
        ElementarySpec(((Q(1),),), (Q(1, 5),))
    with pytest.raises(ValueError):
        ElementarySpec(((Q(1),),), ())


def elementary(weights, turns, window=2, algebra=A1):
    D = HermitianSymmetricData(algebra)
    S = ElementarySpec(tuple(tuple(Q(x) for x in w) for w in weights), tuple(Q(t) for t in turns))
    return NaturalParabolicSpec(algebra, D, S, window)


def test_elementary_all_ones():
    spec = elementary([[-1]], [0], window=2)
    G = gram(spec, (1,), 1)
    assert G.matrix == [[1] * 5 for _ in range(5)]
    assert G.signature == (1, 0, 4)


def test_elementary_unitarizable_and_not():
    assert check_unitarizable(elementary([[-1], [-2]], [0, Q(1, 4)], window=1), 2).psd
    assert not check_unitarizable(elementary([[1]], [Q(1, 3)], window=1), 2).psd


@pytest.mark.parametrize("turns", [[0], [Q(1, 2)], [Q(1, 6), Q(3, 4)]])
def test_elementary_consistency_and_spanning(turns):
    spec = elementary([[-1]] * len(turns), turns, window=1)
    assert consistency_failures(spec) == []
    assert spanning_check(spec, 2)


# ----------------------------------------------------------------------
# exceptional class


def test_omega_exceptional_examples():
    M = LoopMatrix.unit(1, 1, 0, 2)
    assert omega_exceptional(M) == LoopMatrix.unit(1, 0, 1, -2, -1)
    N = LoopMatrix.unit(2, 1, 1, 3, I)
    assert omega_exceptional(N) == LoopMatrix.unit(2, 1, 1, -3, -I)
    P = LoopMatrix(2, {(0, 2): {1: Q(2)}, (2, 1): {-1: I}, (0, 0): {0: Q(1)}})
    assert omega_exceptional(omega_exceptional(P)) == P


def test_exceptional_functional_examples():
    S = ExceptionalSpec.make(1, {0: 2, 1: Q(1, 2) * I, 2: 0})
    assert exceptional_functional(S, LoopMatrix.unit(1, 0, 0, 0)) == -2
    assert exceptional_functional(S, LoopMatrix.unit(1, 0, 0, 1)) == -Q(1, 2) * I
    L = ExceptionalSpec.make(1, lebesgue(2))
    M = LoopMatrix(1, {(0, 0): {0: Q(3), 1: Q(2)}, (0, 1): {4: Q(7)}, (1, 1): {0: Q(5)}})
    assert exceptional_functional(L, M) == -3
    with pytest.raises(MomentOutOfRange):
        exceptional_functional(L, LoopMatrix.unit(1, 0, 0, 3))
    with pytest.raises(NotInParabolic):
        exceptional_functional(L, LoopMatrix.unit(1, 1, 0, 0))


def test_moment_validation():
    with pytest.raises(ValueError):
        ExceptionalSpec.make(1, {0: -1})
    with pytest.raises(ValueError):
        ExceptionalSpec.make(1, {0: 1, 1: 2})  # Toeplitz [[1,2],[2,1]] is indefinite
    ExceptionalSpec.make(1, {0: 1, 1: 2}, check_toeplitz=False)
    with pytest.raises(ValueError):
        ExceptionalSpec.make(1, {0: 1, 1: I, -1: I})
    S = ExceptionalSpec.make(1, {0: 1, 1: Q(1, 2) * I})
    assert S.moments[-1] == -Q(1, 2) * I
    assert ExceptionalSpec.make(1, lebesgue(3)).infinitely_supported()
    assert not ExceptionalSpec.make(1, {k: 1 for k in range(4)}).infinitely_supported()


def _toeplitz_case(moments, W=3):
    S = ExceptionalSpec.make(1, moments)
    spec = LoopParabolicSpec(S, W)
    G = gram(spec, (1,), 1)
    degrees = [m[0][0] for m in G.basis]
    assert all(m[0][1] == 2 for m in G.basis)  # E[1,0]
    return S, G, degrees


def test_toeplitz_law_complex_moments():
    # mu = atom at 1 + 2 * atom at i
    moments = {k: 1 + 2 * root_of_unity(Q(k, 4)) for k in range(7)}
    S, G, degrees = _toeplitz_case(moments)
    assert degrees == sorted(degrees) == list(range(-3, 4))
    for a, ka in enumerate(degrees):
        for b, kb in enumerate(degrees):
            assert G.matrix[a][b] == S.moments[ka - kb]
    assert G.signature == (2, 0, 5)


def test_toeplitz_law_lebesgue_and_atom():
    _, G, _ = _toeplitz_case(lebesgue(6))
    assert G.matrix == [[int(a == b) for b in range(7)] for a in range(7)]
    _, G, _ = _toeplitz_case({k: 1 for k in range(7)})
    assert G.signature == (1, 0, 6) and G.radical_dim == 6


def test_gram_exceptional_and_radical():
    certs = gram_exceptional(ExceptionalSpec.make(1, {k: 1 + (-1) ** k for k in range(7)}), 1, 3)
    sigs = {c.weight: c.signature for c in certs}
    assert sigs[(1,)] == (2, 0, 5)
    tp = toeplitz({k: 1 + (-1) ** abs(k) for k in range(-6, 7)}, 7)
    assert sum(1 for i in range(7) for j in range(7) if tp[i][j]) > 0


def test_exceptional_consistency_spanning_psd():
    for n in (1, 2):
        S = ExceptionalSpec.make(n, {0: 3, 1: 1, 2: Q(1, 2) * I, 3: 0, 4: 0})
        spec = LoopParabolicSpec(S, 1)
        assert consistency_failures(spec) == []
        assert spanning_check(spec, 1)
    assert check_unitarizable(LoopParabolicSpec(ExceptionalSpec.make(2, lebesgue(4)), 1), 2).psd


EXC = LoopParabolicSpec(ExceptionalSpec.make(1, {0: 3, 1: 1 + I, 2: Q(1, 2), 3: -I, 4: 0, 5: 0, 6: 0, 7: 0, 8: 0}, check_toeplitz=False), 2)
EXC_MONOS = [m for ms in weight_spaces(EXC, 1).values() for m in ms]
COEF = st.builds(lambda a, b: a + b * I, st.fractions(-3, 3, max_denominator=2), st.fractions(-3, 3, max_denominator=2))


def vectors(monos):
    return st.dictionaries(st.sampled_from(monos), COEF, min_size=1, max_size=3)


@settings(max_examples=50, deadline=None, derandomize=True)
@given(st.sampled_from(EXC.window_symbols(1)), vectors(EXC_MONOS), vectors(EXC_MONOS))
def test_contravariance_exceptional(x, u, v):
    xu = module_action(EXC, {x: 1}, u)
    wv = module_action(EXC, apply_omega(EXC, {x: 1}), v)
    assert hermitian_form(EXC, xu, v) == hermitian_form(EXC, u, wv)


@settings(max_examples=50, deadline=None, derandomize=True)
@given(vectors(EXC_MONOS), vectors(EXC_MONOS))
def test_hermitian_symmetry_exceptional(u, v):
    assert hermitian_form(EXC, u, v) == conj(hermitian_form(EXC, v, u))


def test_loop_matrix_symbols_round_trip():
    M = LoopMatrix(2, {(0, 0): {1: Q(2)}, (1, 1): {1: Q(-3)}, (2, 2): {1: Q(1)}, (2, 0): {-1: I}})
    sym = M.to_symbols()
    assert LoopMatrix.from_symbols(2, sym) == M
    with pytest.raises(ValueError):
        LoopMatrix.unit(1, 0, 0, 0).to_symbols()
