"""The three unitarizable classes: integrable, elementary and exceptional.

Integrable weights use the standard Borel with the compact anti-involution
(see verma.StandardBorelSpec).  Elementary representations live on the loop
algebra of a hermitian-symmetric g with the natural parabolic
p = sum_n z^n (x) b and a phase-twisted functional.  Exceptional ones live on
loop sl(n+1) with the upper-triangular loop parabolic and a functional given
by the moments of a measure on the circle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .affine import LoopElement
from .cartan import delete_index
from .chevalley import ChevalleyBasis, chevalley_basis, add
from .errors import AlgebraMismatch, MomentOutOfRange, NotInParabolic
from .linalg import inertia, inverse, transpose
from .scalars import as_scalar, conj, is_real, real_sign, root_of_unity
from .rootdata import cartan_from_roots, catalog
from .verma import C_SYM, D_SYM, HighestWeightSpec, LoopSpecBase, gram, weight_spaces

__all__ = [
    "finite_algebra",
    "HermitianSymmetricData",
    "ElementarySpec",
    "ExceptionalSpec",
    "LoopMatrix",
    "NaturalParabolicSpec",
    "LoopParabolicSpec",
    "omega_elementary",
    "elementary_functional",
    "omega_exceptional",
    "exceptional_functional",
    "gram_exceptional",
    "toeplitz",
]


def finite_algebra(letter: str, rank: int) -> ChevalleyBasis:
    """Chevalley basis of the finite algebra of type letter_rank, labelled
    as the finite part of the untwisted affine catalog entry."""
    R = catalog(letter, rank, 1)
    return chevalley_basis(delete_index(cartan_from_roots(R), 0))


# ----------------------------------------------------------------------
# hermitian-symmetric data


@dataclass(frozen=True, eq=False)
class HermitianSymmetricData:
    algebra: ChevalleyBasis = field(repr=False)
    noncompact: int = 1

    def __post_init__(self):
        C = self.algebra
        if not 1 <= self.noncompact <= C.l:
            raise AlgebraMismatch(f"node {self.noncompact} out of range")
        if C.highest_root[self.noncompact - 1] != 1:
            raise AlgebraMismatch(
                f"node {self.noncompact} has mark {C.highest_root[self.noncompact - 1]} in the highest root; "
                "no hermitian-symmetric grading"
            )

    def _coef(self, k: int) -> int:
        return self.algebra.roots.positive[k - 1][self.noncompact - 1]

    @cached_property
    def p_plus(self) -> tuple[int, ...]:
        C = self.algebra
        return tuple(C.e(k) for k in range(1, C.npos + 1) if self._coef(k) >= 1)

    @cached_property
    def p_minus(self) -> tuple[int, ...]:
        C = self.algebra
        return tuple(C.f(k) for k in range(1, C.npos + 1) if self._coef(k) >= 1)

    @cached_property
    def k_plus(self) -> tuple[int, ...]:
        C = self.algebra
        return tuple(C.e(k) for k in range(1, C.npos + 1) if self._coef(k) == 0)

    @cached_property
    def k_minus(self) -> tuple[int, ...]:
        C = self.algebra
        return tuple(C.f(k) for k in range(1, C.npos + 1) if self._coef(k) == 0)

    @cached_property
    def cartan(self) -> tuple[int, ...]:
        return tuple(range(self.algebra.l))

    @cached_property
    def k(self) -> tuple[int, ...]:
        return self.k_minus + self.cartan + self.k_plus

    @cached_property
    def center(self) -> tuple[Fraction, ...]:
        """h_c = sum x_j H_j with alpha_i(h_c) = delta_{i, noncompact}."""
        A = self.algebra.roots.cartan.rows()
        inv_t = inverse(transpose(A))
        e = self.noncompact - 1
        return tuple(inv_t[j][e] for j in range(len(A)))

    def sign(self, idx: int) -> int:
        """-1 on root vectors of p+ and p-, +1 on k."""
        w = self.algebra.weight(idx)
        return -1 if w[self.noncompact - 1] % 2 else 1

    def check(self) -> list[str]:
        """Violations of [p+, p+] = 0 and [k, p+-] in p+-."""
        C = self.algebra
        bad = []
        for a in self.p_plus:
            for b in self.p_plus:
                if C.bracket_basis(a, b):
                    bad.append(f"[{C.symbol(a)}, {C.symbol(b)}] != 0")
        for part in (self.p_plus, self.p_minus):
            ps = set(part)
            for x in self.k:
                for y in part:
                    for z in C.bracket_basis(x, y):
                        if z not in ps:
                            bad.append(f"[{C.symbol(x)}, {C.symbol(y)}] leaves its part")
        return bad


# ----------------------------------------------------------------------
# elementary class


@dataclass(frozen=True)
class ElementarySpec:
    """Weights Lambda_1..Lambda_N (values on H_1..H_l) and phases
    C_i^k = a_i^k with a_i = exp(2 pi i turn_i)."""

    weights: tuple[tuple[Fraction, ...], ...]
    turns: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.turns):
            raise ValueError("one phase per weight is required")
        for t in self.turns:
            root_of_unity(t)  # validates the order

    def phase(self, i: int, k: int):
        return root_of_unity(self.turns[i] * k)


@dataclass(frozen=True, eq=False)
class NaturalParabolicSpec(LoopSpecBase):
    """Loop algebra of g with c (no d), p = sum_n z^n (x) b, twisted omega."""

    data: HermitianSymmetricData = None
    spec: ElementarySpec = None
    window: int = 2
    order: str = "default"

    def __post_init__(self):
        l = self.algebra.l
        for w in self.spec.weights:
            if len(w) != l:
                raise ValueError(f"weights need {l} values")

    def in_n(self, s) -> bool:
        return s != C_SYM and s != D_SYM and self.kind(s) == "F"

    def functional(self, s):
        if s == D_SYM:
            raise NotInParabolic("d is not part of this algebra")
        if s == C_SYM:
            return Fraction(0)
        k, idx = s
        if self.kind(s) != "H":
            return Fraction(0)
        tot = Fraction(0)
        for i, w in enumerate(self.spec.weights):
            if w[idx]:
                tot = tot + self.spec.phase(i, k) * w[idx]
        return as_scalar(tot)

    def omega(self, s) -> dict:
        if s == C_SYM:
            return {C_SYM: Fraction(1)}
        if s == D_SYM:
            return {D_SYM: Fraction(1)}
        j, idx = s
        C = self.algebra
        kd = self.kind(s)
        if kd == "H":
            return {(-j, idx): Fraction(1)}
        sign = self.data.sign(idx)
        other = idx + C.npos if kd == "E" else idx - C.npos
        return {(-j, other): Fraction(sign)}

    def grade(self, s) -> tuple:
        if s in (C_SYM, D_SYM):
            return (0,) * self.algebra.l
        return self.algebra.weight(s[1])

    def order_key(self, s):
        j, idx = s
        h = -sum(self.algebra.weight(idx))
        if self.order == "default":
            return (h, j, idx)
        return (-h, -j, -idx)

    def negative_symbols(self, depth: int) -> list:
        C = self.algebra
        out = []
        for j in range(-self.window, self.window + 1):
            for k in range(1, C.npos + 1):
                if sum(C.roots.positive[k - 1]) <= depth:
                    out.append((j, C.f(k)))
        return out

    def within(self, gamma, depth) -> bool:
        return all(g >= 0 for g in gamma) and sum(gamma) <= depth

    def generators(self) -> list:
        C = self.algebra
        out = [C_SYM]
        for j in (-1, 0, 1):
            for i in range(1, C.l + 1):
                out += [(j, C.e(i)), (j, C.f(i)), (j, C.h(i))]
        return out

    def window_symbols(self, depth: int) -> list:
        C = self.algebra
        return [C_SYM] + [(j, i) for j in range(-depth, depth + 1) for i in range(C.dim)]


def omega_elementary(D: HermitianSymmetricData, x: LoopElement) -> LoopElement:
    C = D.algebra
    if x.algebra is not C:
        raise AlgebraMismatch("element and data use different algebras")
    out: dict = {}
    for (j, idx), v in x.terms:
        if idx < C.l:
            add(out, {(-j, idx): conj(v)})
        else:
            other = idx + C.npos if idx < C.l + C.npos else idx - C.npos
            add(out, {(-j, other): D.sign(idx) * conj(v)})
    return LoopElement.make(C, out, conj(x.c), conj(x.d))


def elementary_functional(S: ElementarySpec, x: LoopElement):
    C = x.algebra
    if x.d:
        raise NotInParabolic("d is not in the natural parabolic")
    tot = Fraction(0)
    for (k, idx), v in x.terms:
        if idx >= C.l + C.npos:
            raise NotInParabolic(f"{C.symbol(idx)} at degree {k} is not in the natural parabolic")
        if idx < C.l:
            for i, w in enumerate(S.weights):
                if w[idx]:
                    tot = tot + v * S.phase(i, k) * w[idx]
    return as_scalar(tot)


# ----------------------------------------------------------------------
# exceptional class


def toeplitz(moments: dict, size: int) -> list:
    return [[moments[j - k] for k in range(size)] for j in range(size)]


@dataclass(frozen=True)
class ExceptionalSpec:
    n: int
    moments: dict  # k -> m_k for |k| <= K, negative indices filled by conjugation
    K: int

    @staticmethod
    def make(n: int, moments: dict, K: int | None = None, check_toeplitz: bool = True) -> "ExceptionalSpec":
        if n < 1:
            raise ValueError("n must be positive")
        m = {int(k): as_scalar(v) for k, v in moments.items()}
        if K is None:
            K = max(abs(k) for k in m)
        if 0 not in m:
            raise ValueError("m_0 is required")
        if not is_real(m[0]) or real_sign(m[0]) < 0:
            raise ValueError("m_0 must be real and non-negative")
        full = {}
        for k in range(-K, K + 1):
            if k in m:
                v = m[k]
            elif -k in m:
                v = conj(m[-k])
            else:
                raise ValueError(f"moment m_{k} missing below K = {K}")
            if -k in m and k in m and m[k] != conj(m[-k]):
                raise ValueError(f"m_{-k} must be the conjugate of m_{k}")
            full[k] = as_scalar(v)
        spec = ExceptionalSpec(n, full, K)
        if check_toeplitz and spec.toeplitz_inertia()[1]:
            raise ValueError("moment Toeplitz matrix is not positive semidefinite")
        return spec

    def moment(self, k: int):
        if abs(k) > self.K:
            raise MomentOutOfRange(f"moment m_{k} needed but data stops at K = {self.K}")
        return self.moments[k]

    def toeplitz_inertia(self) -> tuple[int, int, int]:
        return inertia(toeplitz(self.moments, self.K + 1))

    def infinitely_supported(self) -> bool:
        """Every leading Toeplitz matrix up to size K+1 is positive definite."""
        return all(inertia(toeplitz(self.moments, s))[0] == s for s in range(1, self.K + 2))


@dataclass
class LoopMatrix:
    """(n+1) x (n+1) matrix of Laurent polynomials: {(i, j): {k: coef}}."""

    n: int
    entries: dict = field(default_factory=dict)

    @staticmethod
    def unit(n: int, i: int, j: int, k: int = 0, coef=1) -> "LoopMatrix":
        return LoopMatrix(n, {(i, j): {k: as_scalar(coef)}})

    def clean(self) -> "LoopMatrix":
        ent = {}
        for key, poly in self.entries.items():
            p = {k: as_scalar(v) for k, v in poly.items() if v}
            if p:
                ent[key] = p
        return LoopMatrix(self.n, ent)

    def __eq__(self, other):
        return isinstance(other, LoopMatrix) and self.n == other.n and self.clean().entries == other.clean().entries

    def __add__(self, other):
        ent = {key: dict(p) for key, p in self.entries.items()}
        for key, p in other.entries.items():
            tgt = ent.setdefault(key, {})
            for k, v in p.items():
                tgt[k] = tgt.get(k, 0) + v
        return LoopMatrix(self.n, ent).clean()

    def trace(self) -> dict:
        out: dict = {}
        for i in range(self.n + 1):
            for k, v in self.entries.get((i, i), {}).items():
                out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v}

    def is_upper(self) -> bool:
        return all(i <= j for (i, j), p in self.clean().entries.items())

    def to_symbols(self) -> dict:
        """Expand a traceless loop matrix in the z^k E_ij, z^k D_i basis."""
        if self.trace():
            raise ValueError("loop matrix is not traceless")
        size = self.n + 1
        out: dict = {}
        for (i, j), p in self.clean().entries.items():
            for k, v in p.items():
                if i != j:
                    add(out, {(k, i * size + j): v})
                elif i >= 1:
                    # diag(x_0..x_n) = sum_i (-x_i) D_i when traceless
                    add(out, {(k, -i): -v})
        return out

    @staticmethod
    def from_symbols(n: int, elem: dict) -> "LoopMatrix":
        size = n + 1
        ent: dict = {}
        for (k, code), v in elem.items():
            if code >= 0:
                i, j = divmod(code, size)
                terms = [((i, j), v)]
            else:
                i = -code
                terms = [((0, 0), v), ((i, i), -v)]
            for key, x in terms:
                p = ent.setdefault(key, {})
                p[k] = p.get(k, 0) + x
        return LoopMatrix(n, ent).clean()


def omega_exceptional(M: LoopMatrix) -> LoopMatrix:
    """J M^dagger(z^-1) J with J = diag(1, -1, ..., -1)."""
    ent: dict = {}
    for (i, j), p in M.entries.items():
        sign = -1 if (i == 0) != (j == 0) else 1
        ent[(j, i)] = {-k: sign * conj(v) for k, v in p.items()}
    return LoopMatrix(M.n, ent).clean()


def exceptional_functional(S: ExceptionalSpec, M: LoopMatrix):
    """Lambda(M) = -phi(a_00) = -sum_k (a_00)_k m_k on upper-triangular M."""
    if M.n != S.n:
        raise AlgebraMismatch(f"matrix size {M.n + 1} does not match n = {S.n}")
    if not M.is_upper():
        raise NotInParabolic("loop matrix has entries below the diagonal")
    tot = Fraction(0)
    for k, v in M.clean().entries.get((0, 0), {}).items():
        tot = tot - v * S.moment(k)
    return as_scalar(tot)


@dataclass(frozen=True, eq=False)
class LoopParabolicSpec(HighestWeightSpec):
    """Loop sl(n+1) without central term, p = upper-triangular loops.

    Symbols (k, code): code = i*(n+1) + j >= 0 for z^k E_ij (i != j) and
    code = -i for z^k D_i with D_i = E_00 - E_ii.
    """

    data: ExceptionalSpec = None
    window: int = 3
    order: str = "default"

    @property
    def n(self) -> int:
        return self.data.n

    def _unit(self, code):
        size = self.n + 1
        if code >= 0:
            i, j = divmod(code, size)
            return {(i, j): Fraction(1)}
        i = -code
        return {(0, 0): Fraction(1), (i, i): Fraction(-1)}

    def bracket(self, s, t) -> dict:
        (a, x), (b, y) = s, t
        X, Y = self._unit(x), self._unit(y)
        prod: dict = {}
        for (i, j), u in X.items():
            for (jj, k), v in Y.items():
                if j == jj:
                    prod[(i, k)] = prod.get((i, k), 0) + u * v
        for (i, j), u in Y.items():
            for (jj, k), v in X.items():
                if j == jj:
                    prod[(i, k)] = prod.get((i, k), 0) - u * v
        size = self.n + 1
        out: dict = {}
        deg = a + b
        for (i, k), v in prod.items():
            if not v:
                continue
            if i != k:
                add(out, {(deg, i * size + k): v})
            elif i >= 1:
                add(out, {(deg, -i): -v})
        return out

    def _ij(self, code):
        return divmod(code, self.n + 1)

    def in_n(self, s) -> bool:
        code = s[1]
        if code < 0:
            return False
        i, j = self._ij(code)
        return i > j

    def functional(self, s):
        k, code = s
        if code < 0:
            return as_scalar(-self.data.moment(k))
        return Fraction(0)

    def omega(self, s) -> dict:
        k, code = s
        if code < 0:
            return {(-k, code): Fraction(1)}
        i, j = self._ij(code)
        sign = -1 if (i == 0) != (j == 0) else 1
        return {(-k, j * (self.n + 1) + i): Fraction(sign)}

    def grade(self, s) -> tuple:
        code = s[1]
        n = self.n
        if code < 0:
            return (0,) * n
        i, j = self._ij(code)
        # eps_i - eps_j over alpha_k = eps_{k-1} - eps_k
        out = [0] * n
        if i < j:
            for k in range(i + 1, j + 1):
                out[k - 1] = 1
        else:
            for k in range(j + 1, i + 1):
                out[k - 1] = -1
        return tuple(out)

    def order_key(self, s):
        k, code = s
        h = -sum(self.grade(s))
        if self.order == "default":
            return (h, k, code)
        return (-h, -k, -code)

    def symbol_name(self, s) -> str:
        k, code = s
        if code < 0:
            base = f"D[{-code}]"
        else:
            i, j = self._ij(code)
            base = f"E[{i},{j}]"
        return base if k == 0 else f"z^{k}*{base}"

    def negative_symbols(self, depth: int) -> list:
        size = self.n + 1
        out = []
        for k in range(-self.window, self.window + 1):
            for i in range(size):
                for j in range(i):
                    if i - j <= depth:
                        out.append((k, i * size + j))
        return out

    def within(self, gamma, depth) -> bool:
        return all(g >= 0 for g in gamma) and sum(gamma) <= depth

    def all_codes(self) -> list:
        size = self.n + 1
        return [i * size + j for i in range(size) for j in range(size) if i != j] + [-i for i in range(1, size)]

    def generators(self) -> list:
        return [(k, code) for k in (-1, 0, 1) for code in self.all_codes()]

    def window_symbols(self, depth: int) -> list:
        return [(k, code) for k in range(-depth, depth + 1) for code in self.all_codes()]


def gram_exceptional(S: ExceptionalSpec, depth: int, degree_window: int) -> list:
    spec = LoopParabolicSpec(S, degree_window)
    spaces = weight_spaces(spec, depth)
    return [gram(spec, w, depth, spaces) for w in spaces]
