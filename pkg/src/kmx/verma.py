"""Generalized Verma modules and their contravariant Hermitian forms.

A module M(Lambda) = U(g) (x)_{U(p)} C_Lambda has the PBW basis of ordered
monomials y_1 ... y_k theta in the negative symbols (n-symbols).  The
algebra acts by straightening: x y R = y (x R) + [x, y] R, and on theta a
p-symbol acts by the scalar Lambda(x).  The form is computed through
contravariance, H(u, y v') = H(omega(y) u, v'), starting from
H(theta, theta) = 1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

from .chevalley import ChevalleyBasis, add
from .errors import CutoffTooLarge, DepthOverflow, NotDominantIntegral
from .linalg import inertia, inertia_witness, is_hermitian
from .rootdata import RealizedRootSystem
from .scalars import as_scalar, conj, format_scalar
from .weights import WeightFunctional, level

__all__ = [
    "HighestWeightSpec",
    "LoopSpecBase",
    "StandardBorelSpec",
    "GramCertificate",
    "Verdict",
    "weight_spaces",
    "apply_omega",
    "beta_project",
    "evaluate_p",
    "gram",
    "signature",
    "quotient_dims",
    "check_unitarizable",
    "module_action",
    "hermitian_form",
    "form_by_projection",
    "consistency_failures",
    "spanning_check",
    "max_terms",
    "C_SYM",
    "D_SYM",
]

DEFAULT_MAX_TERMS = 10**6
DEFAULT_MAX_BASIS = 20000

C_SYM = (0, -1)
D_SYM = (0, -2)


def max_terms() -> int:
    env = os.environ.get("KMX_MAX_TERMS")
    return int(env) if env else DEFAULT_MAX_TERMS


class HighestWeightSpec:
    """Algebra + parabolic + anti-involution + functional, seen through
    basis symbols.  Subclasses define the symbol calculus."""

    order: str = "default"

    # -- algebra ---------------------------------------------------------
    def bracket(self, s, t) -> dict:
        raise NotImplementedError

    def in_n(self, s) -> bool:
        raise NotImplementedError

    def omega(self, s) -> dict:
        """omega on a basis symbol (the antilinear extension is applied by callers)."""
        raise NotImplementedError

    def functional(self, s):
        """Lambda on a p-symbol."""
        raise NotImplementedError

    def grade(self, s) -> tuple:
        """Root-lattice weight of a symbol."""
        raise NotImplementedError

    def order_key(self, s):
        raise NotImplementedError

    def symbol_name(self, s) -> str:
        return str(s)

    # -- truncation -------------------------------------------------------
    def negative_symbols(self, depth: int) -> list:
        raise NotImplementedError

    def within(self, gamma: tuple, depth: int) -> bool:
        raise NotImplementedError

    def generators(self) -> list:
        """Symbols used for spot checks (Chevalley generators and friends)."""
        raise NotImplementedError

    def window_symbols(self, depth: int) -> list:
        """All symbols of g inside a truncation, for span checks."""
        raise NotImplementedError

    def with_order(self, order: str) -> "HighestWeightSpec":
        return replace(self, order=order)

    @cached_property
    def module(self) -> "_Module":
        return _Module(self)


# ----------------------------------------------------------------------
# loop algebra over a finite Chevalley basis, symbols (deg, idx);
# c and d are (0, -1) and (0, -2)


@dataclass(frozen=True, eq=False)
class LoopSpecBase(HighestWeightSpec):
    algebra: ChevalleyBasis = field(repr=False)

    @cached_property
    def _kinds(self):
        C = self.algebra
        return ["H"] * C.l + ["E"] * C.npos + ["F"] * C.npos

    def kind(self, s) -> str:
        if s == C_SYM:
            return "c"
        if s == D_SYM:
            return "d"
        return self._kinds[s[1]]

    def bracket(self, s, t) -> dict:
        C = self.algebra
        if s == C_SYM or t == C_SYM:
            return {}
        if s == D_SYM:
            return {} if t == D_SYM or not t[0] else {t: Fraction(t[0])}
        if t == D_SYM:
            return {} if not s[0] else {s: Fraction(-s[0])}
        j, a = s
        k, b = t
        out = {}
        for idx, v in C.bracket_basis(a, b).items():
            out[(j + k, idx)] = v
        if j and j == -k:
            f = C.form_basis(a, b)
            if f:
                out[C_SYM] = as_scalar(j * f)
        return out

    def symbol_name(self, s) -> str:
        if s == C_SYM:
            return "c"
        if s == D_SYM:
            return "d"
        j, idx = s
        base = self.algebra.symbol(idx)
        return base if j == 0 else f"z^{j}*{base}"

    def parse_symbol(self, name: str):
        name = name.strip()
        if name == "c":
            return C_SYM
        if name == "d":
            return D_SYM
        if name.startswith("z^"):
            deg, base = name[2:].split("*", 1)
            return (int(deg), self.algebra.parse_symbol(base))
        return (0, self.algebra.parse_symbol(name))

    def finite_weight(self, idx: int) -> tuple:
        return self.algebra.weight(idx)


@dataclass(frozen=True, eq=False)
class StandardBorelSpec(LoopSpecBase):
    """Standard Borel subalgebra with the compact anti-involution.

    affine=True: the untwisted affine algebra, weights over alpha_0..alpha_l,
    truncation by delta-degree (k_i <= depth * a_i).  affine=False: the
    finite algebra alone, weights over alpha_1..alpha_l, truncation by height.
    """

    weight: WeightFunctional = None
    affine: bool = True
    order: str = "default"

    @staticmethod
    def for_family(R: RealizedRootSystem, m, d_value=0, order="default") -> "StandardBorelSpec":
        from .affine import untwisted_basis

        C = untwisted_basis(R)
        lam = WeightFunctional(tuple(Fraction(x) for x in m), Fraction(d_value))
        if len(lam.values) != C.l + 1:
            raise NotDominantIntegral(f"{R.label} needs {C.l + 1} weight values, got {len(lam.values)}")
        return StandardBorelSpec(C, lam, True, order)

    @staticmethod
    def finite(C: ChevalleyBasis, m, order="default") -> "StandardBorelSpec":
        vals = tuple(Fraction(x) for x in m)
        if len(vals) != C.l:
            raise NotDominantIntegral(f"need {C.l} weight values, got {len(vals)}")
        return StandardBorelSpec(C, WeightFunctional((Fraction(0),) + vals), False, order)

    @cached_property
    def delta(self) -> tuple:
        return (1,) + tuple(self.algebra.highest_root)

    @cached_property
    def level(self) -> Fraction:
        return level(self.weight, self.algebra)

    def in_n(self, s) -> bool:
        if s in (C_SYM, D_SYM):
            return False
        j, idx = s
        return j < 0 or (j == 0 and self.kind(s) == "F")

    def functional(self, s):
        if s == C_SYM:
            return self.level
        if s == D_SYM:
            return self.weight.d_value
        j, idx = s
        if j == 0 and idx < self.algebra.l:
            return self.weight.values[idx + 1]
        return Fraction(0)

    def omega(self, s) -> dict:
        if s in (C_SYM, D_SYM):
            return {s: Fraction(1)}
        j, idx = s
        C = self.algebra
        k = self.kind(s)
        if k == "E":
            idx = idx + C.npos
        elif k == "F":
            idx = idx - C.npos
        return {(-j, idx): Fraction(1)}

    def grade(self, s) -> tuple:
        if s in (C_SYM, D_SYM):
            return (0,) * (len(self.delta) if self.affine else self.algebra.l)
        j, idx = s
        w = self.algebra.weight(idx)
        if not self.affine:
            return w
        return tuple(j * a + b for a, b in zip(self.delta, (0,) + w))

    def order_key(self, s):
        j, idx = s
        k = self.kind(s)
        h = sum(self.algebra.weight(idx))
        if self.order == "default":
            # imaginary-layer symbols first, then delta-degree, height, index
            return (0 if k == "H" else 1, -j, h, idx)
        return (1 if k == "H" else 0, j, -h, -idx)

    def symbols_of_degree(self, j: int) -> list:
        C = self.algebra
        return [(j, idx) for idx in range(C.dim)]

    def negative_symbols(self, depth: int) -> list:
        out = []
        lo = -depth if self.affine else 0
        for j in range(lo, 1):
            for s in self.symbols_of_degree(j):
                if self.in_n(s) and self.within(tuple(-x for x in self.grade(s)), depth):
                    out.append(s)
        return out

    def within(self, gamma, depth) -> bool:
        if self.affine:
            return all(0 <= g <= depth * a for g, a in zip(gamma, self.delta))
        return all(g >= 0 for g in gamma) and sum(gamma) <= depth

    def generators(self) -> list:
        C = self.algebra
        theta = C.roots.index[C.highest_root] + 1
        out = []
        if self.affine:
            out += [(1, C.f(theta)), (-1, C.e(theta)), C_SYM, D_SYM]
        for i in range(1, C.l + 1):
            out += [(0, C.e(i)), (0, C.f(i)), (0, C.h(i))]
        return out

    def window_symbols(self, depth: int) -> list:
        if not self.affine:
            return self.symbols_of_degree(0)
        out = [C_SYM, D_SYM]
        for j in range(-depth, depth + 1):
            out += self.symbols_of_degree(j)
        return out

    def weight_label(self, gamma) -> list:
        return list(gamma)


# ----------------------------------------------------------------------
# the module engine


class _Module:
    def __init__(self, spec: HighestWeightSpec):
        self.spec = spec
        self._act: dict = {}
        self._form: dict = {}
        self._bracket: dict = {}
        self._omega: dict = {}
        self._beta: dict = {}
        self.work = 0
        self.limit = max_terms()

    def _tick(self, n=1):
        self.work += n
        if self.work > self.limit:
            raise DepthOverflow(f"rewriting exceeded {self.limit} terms (set KMX_MAX_TERMS to raise)")

    def bracket(self, s, t) -> dict:
        key = (s, t)
        v = self._bracket.get(key)
        if v is None:
            v = self.spec.bracket(s, t)
            self._bracket[key] = v
        return v

    def omega(self, s) -> dict:
        v = self._omega.get(s)
        if v is None:
            v = self.spec.omega(s)
            self._omega[s] = v
        return v

    def key(self, s):
        return self.spec.order_key(s)

    def act(self, x, mono: tuple) -> dict:
        """x . (mono theta) as a combination of ordered monomials."""
        ck = (x, mono)
        hit = self._act.get(ck)
        if hit is not None:
            return hit
        spec = self.spec
        if not mono:
            if spec.in_n(x):
                res = {(x,): Fraction(1)}
            else:
                lam = spec.functional(x)
                res = {(): lam} if lam else {}
        elif spec.in_n(x) and self.key(x) <= self.key(mono[0]):
            res = {(x,) + mono: Fraction(1)}
        else:
            y, rest = mono[0], mono[1:]
            inner = self.act(x, rest)
            res = self.act_vec(y, inner)
            for s, c in self.bracket(x, y).items():
                add(res, self.act(s, rest), c)
        self._tick(len(res) + 1)
        self._act[ck] = res
        return res

    def act_vec(self, x, vec: dict) -> dict:
        out: dict = {}
        for m, c in vec.items():
            add(out, self.act(x, m), c)
        return out

    def act_element(self, elem: dict, vec: dict) -> dict:
        out: dict = {}
        for s, c in elem.items():
            add(out, self.act_vec(s, vec), c)
        return out

    def weight_of(self, mono) -> tuple:
        g = None
        for s in mono:
            w = self.spec.grade(s)
            g = w if g is None else tuple(a + b for a, b in zip(g, w))
        return g

    def form(self, u: tuple, v: tuple):
        """H(u theta, v theta) on ordered monomials."""
        if not v:
            return Fraction(1) if not u else Fraction(0)
        ck = (u, v)
        hit = self._form.get(ck)
        if hit is not None:
            return hit
        if self.weight_of(u) != self.weight_of(v):
            self._form[ck] = Fraction(0)
            return Fraction(0)
        y, rest = v[0], v[1:]
        w: dict = {}
        for s, c in self.omega(y).items():
            add(w, self.act(s, u), c)
        tot = Fraction(0)
        for m, c in w.items():
            h = self.form(m, rest)
            if h:
                tot = tot + c * h
        tot = as_scalar(tot)
        self._form[ck] = tot
        return tot

    # -- projection route -------------------------------------------------
    def beta_word(self, w: tuple) -> dict:
        """beta(w) in U(p), as words in p-symbols (the order is kept)."""
        hit = self._beta.get(w)
        if hit is not None:
            return hit
        spec = self.spec
        if not w:
            res = {(): Fraction(1)}
        elif spec.in_n(w[0]):
            res = {}
        else:
            x, R = w[0], w[1:]
            res = {}
            # x R = R x + sum_i R_1 .. [x, R_i] .. R_k and beta(R x) = beta(R) x
            for pw, c in self.beta_word(R).items():
                add(res, {pw + (x,): c})
            for i in range(len(R)):
                for s, cs in self.bracket(x, R[i]).items():
                    add(res, self.beta_word(R[:i] + (s,) + R[i + 1:]), cs)
        self._tick(len(res) + 1)
        self._beta[w] = res
        return res


# ----------------------------------------------------------------------
# public operations


def _monomial_vec(mono) -> dict:
    return {tuple(mono): Fraction(1)}


def weight_spaces(spec: HighestWeightSpec, depth_cutoff: int, max_basis: int = DEFAULT_MAX_BASIS) -> dict:
    """{gamma: [monomials]} where the weight is Lambda - gamma."""
    if depth_cutoff < 0:
        raise CutoffTooLarge("depth cutoff must be non-negative")
    syms = sorted(spec.negative_symbols(depth_cutoff), key=spec.order_key)
    grades = [tuple(-x for x in spec.grade(s)) for s in syms]
    zero = tuple(0 for _ in spec.grade(syms[0])) if syms else ()
    out: dict = {zero: [()]}
    count = 1

    def rec(start, mono, gamma):
        nonlocal count
        for i in range(start, len(syms)):
            g2 = tuple(a + b for a, b in zip(gamma, grades[i]))
            if not spec.within(g2, depth_cutoff):
                continue
            m2 = mono + (syms[i],)
            out.setdefault(g2, []).append(m2)
            count += 1
            if count > max_basis:
                raise CutoffTooLarge(f"more than {max_basis} monomials below depth {depth_cutoff}")
            rec(i, m2, g2)

    rec(0, (), zero)
    return dict(sorted(out.items(), key=lambda kv: (sum(kv[0]), kv[0])))


def apply_omega(spec: HighestWeightSpec, x) -> dict:
    """omega of an element {symbol: coef} (antilinear) or of a word
    (tuple of symbols, anti-multiplicative); words come back as {word: coef}."""
    if isinstance(x, tuple) and (not x or isinstance(x[0], tuple)):
        out = {(): Fraction(1)}
        for s in reversed(x):
            img = spec.omega(s)
            nxt: dict = {}
            for w, c in out.items():
                for t, ct in img.items():
                    add(nxt, {w + (t,): c * ct})
            out = nxt
        return out
    out: dict = {}
    for s, c in x.items():
        add(out, spec.omega(s), conj(c))
    return out


def beta_project(spec: HighestWeightSpec, u: dict) -> dict:
    """U(g) -> U(p) along U(g) = nU(g) + U(p); u is {word: coef}."""
    mod = spec.module
    out: dict = {}
    for w, c in u.items():
        add(out, mod.beta_word(tuple(w)), c)
    return out


def evaluate_p(spec: HighestWeightSpec, elem: dict):
    """Lambda extended multiplicatively to U(p)."""
    tot = Fraction(0)
    for w, c in elem.items():
        v = c
        for s in w:
            v = v * spec.functional(s)
            if not v:
                break
        tot = tot + v
    return as_scalar(tot)


def form_by_projection(spec: HighestWeightSpec, u: tuple, v: tuple):
    """H(u, v) = Lambda(beta(omega(v) u)) on monomials, via explicit words."""
    word: dict = {}
    for w, c in apply_omega(spec, tuple(v)).items():
        add(word, {w + tuple(u): c})
    return evaluate_p(spec, beta_project(spec, word))


def module_action(spec: HighestWeightSpec, x: dict, vec: dict) -> dict:
    return spec.module.act_element(x, vec)


def hermitian_form(spec: HighestWeightSpec, u: dict, v: dict):
    """H on module vectors {monomial: coef}: linear in u, antilinear in v."""
    mod = spec.module
    tot = Fraction(0)
    for a, ca in u.items():
        for b, cb in v.items():
            h = mod.form(tuple(a), tuple(b))
            if h:
                tot = tot + ca * conj(cb) * h
    return as_scalar(tot)


@dataclass
class GramCertificate:
    weight: tuple
    basis: list
    matrix: list
    signature: tuple
    names: list = field(default_factory=list)

    @property
    def radical_dim(self) -> int:
        return self.signature[2]

    def to_dict(self) -> dict:
        return {
            "weight": list(self.weight),
            "basis": list(self.names),
            "matrix": [[format_scalar(x) for x in row] for row in self.matrix],
            "signature": list(self.signature),
        }


def monomial_name(spec: HighestWeightSpec, mono) -> str:
    return ".".join(spec.symbol_name(s) for s in mono) if mono else "1"


def gram(spec: HighestWeightSpec, weight, cutoff: int, spaces: dict | None = None) -> GramCertificate:
    weight = tuple(weight)
    if spaces is None:
        spaces = weight_spaces(spec, cutoff)
    if weight not in spaces:
        if not spec.within(weight, cutoff):
            raise CutoffTooLarge(f"weight {list(weight)} lies outside depth {cutoff}")
        basis = []
    else:
        basis = spaces[weight]
    mod = spec.module
    mat = [[mod.form(u, v) for v in basis] for u in basis]
    if not is_hermitian(mat):
        raise ArithmeticError("Gram matrix is not Hermitian")
    return GramCertificate(weight, basis, mat, inertia(mat), [monomial_name(spec, m) for m in basis])


def signature(G) -> tuple[int, int, int]:
    mat = G.matrix if isinstance(G, GramCertificate) else G
    return inertia(mat)


def quotient_dims(spec: HighestWeightSpec, cutoff: int) -> dict:
    spaces = weight_spaces(spec, cutoff)
    out = {}
    for w in spaces:
        G = gram(spec, w, cutoff, spaces)
        out[w] = len(G.basis) - G.radical_dim
    return out


@dataclass
class Verdict:
    psd: bool
    depth: int
    weight: tuple | None = None
    signature: tuple | None = None
    witness: dict | None = None  # monomial name -> coefficient
    norm: object = None

    def to_dict(self) -> dict:
        if self.psd:
            return {"verdict": "PSD", "depth": self.depth}
        return {
            "verdict": "Indefinite",
            "depth": self.depth,
            "weight": list(self.weight),
            "signature": list(self.signature),
            "witness": {k: format_scalar(v) for k, v in self.witness.items()},
            "norm": format_scalar(self.norm),
        }


def check_unitarizable(spec: HighestWeightSpec, cutoff: int) -> Verdict:
    spaces = weight_spaces(spec, cutoff)
    mod = spec.module
    for w, basis in spaces.items():
        mat = [[mod.form(u, v) for v in basis] for u in basis]
        pos, neg, zero, vec = inertia_witness(mat)
        if neg:
            from .linalg import hermitian_value

            wit = {monomial_name(spec, m): c for m, c in zip(basis, vec) if c}
            return Verdict(False, cutoff, w, (pos, neg, zero), wit, hermitian_value(mat, vec))
    return Verdict(True, cutoff)


def consistency_failures(spec: HighestWeightSpec, symbols=None) -> list:
    """Symbols x with Lambda(beta(x)) != conj(Lambda(beta(omega x)))."""
    if symbols is None:
        symbols = spec.generators()
    bad = []
    for x in symbols:
        lhs = Fraction(0) if spec.in_n(x) else spec.functional(x)
        rhs = Fraction(0)
        for s, c in spec.omega(x).items():
            if not spec.in_n(s):
                rhs = rhs + c * spec.functional(s)
        if as_scalar(lhs) != as_scalar(conj(as_scalar(rhs))):
            bad.append(x)
    return bad


def spanning_check(spec: HighestWeightSpec, depth: int) -> bool:
    """g = p + omega(p) on the symbols of a truncation window."""
    syms = spec.window_symbols(depth)
    covered = set()
    for s in syms:
        if not spec.in_n(s):
            covered.add(s)
            img = spec.omega(s)
            if len(img) == 1:
                covered.update(img)
    rest = [s for s in syms if s not in covered]
    if not rest:
        return True
    # fall back to linear algebra on the images of p
    from .linalg import rank

    index = {s: i for i, s in enumerate(syms)}
    rows = []
    for s in syms:
        if not spec.in_n(s):
            rows.append([Fraction(int(index[s] == i)) for i in range(len(syms))])
            v = [Fraction(0)] * len(syms)
            for t, c in spec.omega(s).items():
                if t in index:
                    v[index[t]] = c
            rows.append(v)
    return rank(rows) == len(syms)
