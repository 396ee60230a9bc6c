"""Loop realization of untwisted affine algebras and twisted eigenspace gradings.

g = C c + C d + sum_j z^j (x) g_fin with
    [z^j a, z^k b] = z^(j+k) [a, b] + j delta_{j,-k} B(a, b) c,
    [d, z^j a] = j z^j a, c central.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import delete_index, find_isomorphism, validate_gcm
from .chevalley import ChevalleyBasis, add, chevalley_basis, scale
from .errors import AlgebraMismatch, OrderMismatch
from .linalg import nullspace, rank
from .rootdata import (
    RealizedRootSystem,
    cartan_from_roots,
    enumerate_roots,
    lambda0,
    null_coefficients,
    pairing,
    parent_cartan,
)
from .scalars import as_scalar, format_scalar, parse_scalar, root_of_unity

__all__ = [
    "LoopElement",
    "AffineGenerators",
    "DiagramAutomorphism",
    "TwistedDecomposition",
    "bracket",
    "affine_generators",
    "twist",
    "twisted_root_check",
    "parent_twist",
    "killing_table",
    "untwisted_basis",
]


@dataclass(frozen=True)
class LoopElement:
    algebra: ChevalleyBasis = field(compare=False, repr=False)
    terms: tuple = ()  # sorted ((deg, idx), coef) pairs, no zeros
    c: object = Fraction(0)
    d: object = Fraction(0)

    @staticmethod
    def make(algebra, terms: dict | None = None, c=0, d=0) -> "LoopElement":
        clean = {k: as_scalar(v) for k, v in (terms or {}).items() if v}
        return LoopElement(algebra, tuple(sorted(clean.items())), as_scalar(c), as_scalar(d))

    @staticmethod
    def basis(algebra, deg: int, idx: int, coef=1) -> "LoopElement":
        return LoopElement.make(algebra, {(deg, idx): coef})

    @property
    def term_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms and not self.c and not self.d

    def __add__(self, other: "LoopElement") -> "LoopElement":
        _same(self, other)
        t = self.term_dict
        add(t, other.term_dict)
        return LoopElement.make(self.algebra, t, self.c + other.c, self.d + other.d)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k) -> "LoopElement":
        return LoopElement.make(self.algebra, scale(self.term_dict, k), self.c * k, self.d * k)

    def __eq__(self, other):
        if not isinstance(other, LoopElement):
            return NotImplemented
        return self.terms == other.terms and self.c == other.c and self.d == other.d

    def __hash__(self):
        return hash((self.terms, self.c, self.d))

    def degrees(self) -> set:
        return {deg for (deg, _), _ in self.terms}

    def to_dict(self) -> dict:
        C = self.algebra
        return {
            "terms": [
                {"deg": deg, "sym": C.symbol(idx), "coef": format_scalar(v)}
                for (deg, idx), v in self.terms
            ],
            "c": format_scalar(self.c),
            "d": format_scalar(self.d),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_dict(algebra, obj: dict) -> "LoopElement":
        terms: dict = {}
        for t in obj.get("terms", []):
            key = (int(t["deg"]), algebra.parse_symbol(t["sym"]))
            add(terms, {key: parse_scalar(t.get("coef", "1"))})
        return LoopElement.make(algebra, terms, parse_scalar(obj.get("c", "0")), parse_scalar(obj.get("d", "0")))


def _same(x: LoopElement, y: LoopElement):
    if x.algebra is not y.algebra:
        raise AlgebraMismatch("loop elements live over different finite algebras")


def bracket_terms(C: ChevalleyBasis, x: dict, y: dict) -> tuple[dict, object]:
    """Bracket of two loop sums {(deg, idx): coef}; returns (terms, c-coefficient)."""
    out: dict = {}
    central = Fraction(0)
    for (j, a), ca in x.items():
        for (k, b), cb in y.items():
            t = C.bracket_basis(a, b)
            if t:
                coef = ca * cb
                for idx, v in t.items():
                    key = (j + k, idx)
                    s = out.get(key, 0) + coef * v
                    if s:
                        out[key] = as_scalar(s)
                    else:
                        out.pop(key, None)
            if j and j == -k:
                f = C.form_basis(a, b)
                if f:
                    central = central + j * f * ca * cb
    return out, as_scalar(central)


def bracket(x: LoopElement, y: LoopElement) -> LoopElement:
    _same(x, y)
    C = x.algebra
    xt, yt = x.term_dict, y.term_dict
    terms, central = bracket_terms(C, xt, yt)
    # [d, z^j a] = j z^j a, antisymmetric
    if x.d:
        add(terms, {key: deg * v * x.d for key, v in yt.items() if (deg := key[0])})
    if y.d:
        add(terms, {key: -deg * v * y.d for key, v in xt.items() if (deg := key[0])})
    return LoopElement.make(C, terms, central, 0)


@dataclass(frozen=True)
class AffineGenerators:
    algebra: ChevalleyBasis = field(repr=False)
    e: tuple
    f: tuple
    h: tuple

    @property
    def rank(self) -> int:
        return len(self.e) - 1


def affine_generators(C: ChevalleyBasis) -> AffineGenerators:
    """e_0 = z F_theta, f_0 = z^-1 E_theta, h_0 = c - H_theta; e_i = E_i etc."""
    theta = C.highest_root
    t = C.roots.index[theta] + 1
    ht = C.coroot(theta)
    # (theta, theta) = 2 by normalization, so h_0 = c - H_theta
    e = [LoopElement.basis(C, 1, C.f(t))]
    f = [LoopElement.basis(C, -1, C.e(t))]
    h = [LoopElement.make(C, {(0, i): -v for i, v in ht.items()}, c=1)]
    for i in range(1, C.l + 1):
        e.append(LoopElement.basis(C, 0, C.e(i)))
        f.append(LoopElement.basis(C, 0, C.f(i)))
        h.append(LoopElement.basis(C, 0, C.h(i)))
    return AffineGenerators(C, tuple(e), tuple(f), tuple(h))


def untwisted_basis(R: RealizedRootSystem) -> ChevalleyBasis:
    """Chevalley basis of the finite part of an untwisted catalog entry,
    with nodes numbered as in the catalog."""
    if R.twist != 1:
        raise AlgebraMismatch(f"{R.label} is twisted")
    return _basis_for(delete_index(cartan_from_roots(R), 0).entries)


_BASES: dict = {}


def _basis_for(entries) -> ChevalleyBasis:
    if entries not in _BASES:
        _BASES[entries] = chevalley_basis(validate_gcm(entries))
    return _BASES[entries]


# ----------------------------------------------------------------------
# diagram automorphisms


@dataclass(frozen=True)
class DiagramAutomorphism:
    perm: tuple[int, ...]  # perm[i-1] = tau(i), 1-based nodes

    @property
    def order(self) -> int:
        q = 1
        p = list(self.perm)
        while any(p[i] != i + 1 for i in range(len(p))):
            p = [self.perm[x - 1] for x in p]
            q += 1
        return q

    def preserves(self, C: ChevalleyBasis) -> bool:
        A = C.roots.cartan
        n = len(self.perm)
        return all(A[self.perm[i] - 1, self.perm[j] - 1] == A[i, j] for i in range(n) for j in range(n))

    def orbits(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for k in range(1, len(self.perm) + 1):
            if k in seen:
                continue
            orb = [k]
            x = self.perm[k - 1]
            while x != k:
                orb.append(x)
                x = self.perm[x - 1]
            seen.update(orb)
            out.append(tuple(orb))
        return out

    def root(self, r):
        out = [0] * len(r)
        for i, k in enumerate(r):
            out[self.perm[i] - 1] += k
        return tuple(out)


@dataclass
class TwistedDecomposition:
    algebra: ChevalleyBasis = field(repr=False)
    tau: DiagramAutomorphism
    q: int
    psi: dict  # basis index -> sparse image vector
    spaces: list  # spaces[p] = list of dense vectors spanning g_p

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.spaces)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for k, v in vec.items():
            add(out, self.psi[k], v)
        return out

    def eigenvalue(self, p: int):
        return root_of_unity(Fraction(p, self.q))

    def closure_failures(self) -> list[tuple[int, int]]:
        """Pairs (p, p') for which [g_p, g_p'] is not inside g_{p+p'}."""
        bad = []
        for p in range(self.q):
            for pp in range(self.q):
                lam = self.eigenvalue((p + pp) % self.q)
                for u in self.spaces[p]:
                    for v in self.spaces[pp]:
                        w = self.algebra.bracket(_sparse(u), _sparse(v))
                        diff = self.apply(w)
                        add(diff, w, -lam)
                        if diff:
                            bad.append((p, pp))
                            break
                    else:
                        continue
                    break
        return bad


def _sparse(vec) -> dict:
    return {i: as_scalar(x) for i, x in enumerate(vec) if x}


def _psi(C: ChevalleyBasis, tau: DiagramAutomorphism) -> dict:
    """psi_tau on every basis vector, extended from the Chevalley generators
    along extraspecial brackets."""
    R = C.roots
    l = C.l
    psi: dict = {}
    for i in range(1, l + 1):
        t = tau.perm[i - 1]
        psi[C.h(i)] = {C.h(t): Fraction(1)}
        psi[C.e(i)] = {C.e(t): Fraction(1)}
        psi[C.f(i)] = {C.f(t): Fraction(1)}
    for k, xi in enumerate(R.positive, start=1):
        if sum(xi) < 2:
            continue
        # extraspecial pair: smallest simple alpha with xi - alpha a root
        for a in range(1, l + 1):
            b = tuple(x - int(i == a - 1) for i, x in enumerate(xi))
            if b in R.index:
                break
        ia, ib = a, R.index[b] + 1
        n = C.N[(R.positive[ia - 1], b)]
        # E_xi = [E_a, E_b]/N and F_xi = -[F_a, F_b]/N
        psi[C.e(k)] = scale(C.bracket(psi[C.e(ia)], psi[C.e(ib)]), Fraction(1, n))
        psi[C.f(k)] = scale(C.bracket(psi[C.f(ia)], psi[C.f(ib)]), Fraction(-1, n))
    return psi


def twist(C: ChevalleyBasis, tau: DiagramAutomorphism) -> TwistedDecomposition:
    if not tau.preserves(C):
        raise AlgebraMismatch("permutation does not preserve the Cartan matrix")
    q = tau.order
    psi = _psi(C, tau)
    # psi^q must be the identity
    for k in range(C.dim):
        v = {k: Fraction(1)}
        for _ in range(q):
            w: dict = {}
            for idx, x in v.items():
                add(w, psi[idx], x)
            v = w
        if v != {k: 1}:
            raise OrderMismatch(f"psi^{q} moves basis vector {C.symbol(k)}")
    n = C.dim
    mat = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        for idx, x in psi[k].items():
            mat[idx][k] = x
    spaces = []
    for p in range(q):
        lam = root_of_unity(Fraction(p, q))
        shifted = [[mat[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        spaces.append(nullspace(shifted))
    if sum(len(s) for s in spaces) != n:
        raise OrderMismatch("eigenspaces do not span the algebra")
    return TwistedDecomposition(C, tau, q, psi, spaces)


def parent_twist(R: RealizedRootSystem) -> TwistedDecomposition:
    letter, n = R.parent
    if R.twist == 1:
        C = untwisted_basis(R)
        return twist(C, DiagramAutomorphism(tuple(range(1, C.l + 1))))
    C = _basis_for(parent_cartan(letter, n).entries)
    return twist(C, DiagramAutomorphism(R.tau))


# ----------------------------------------------------------------------
# twisted root layers


@dataclass
class RootCheckReport:
    ok: bool
    layers: dict = field(default_factory=dict)  # p -> (expected Counter, found Counter)
    zero_weight: dict = field(default_factory=dict)  # p -> (dim, expected multiplicity)
    messages: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "messages": list(self.messages)}


def _restricted_weight(orbits, root) -> tuple[int, ...]:
    return tuple(sum(root[i - 1] for i in orb) for orb in orbits)


def twisted_root_check(T: TwistedDecomposition, R: RealizedRootSystem) -> RootCheckReport:
    """Compare the weights of each g_p under the fixed Cartan subalgebra
    with the degree-p real roots and imaginary multiplicities of R."""
    C = T.algebra
    fin = C.roots
    orbits = T.tau.orbits()
    q = T.q
    report = RootCheckReport(True)
    if q != R.twist:
        report.ok = False
        report.messages.append(f"twist order {q} differs from {R.label}'s {R.twist}")
        return report

    # group basis vectors by restricted weight; each group is psi-stable
    groups: dict = {}
    for idx in range(C.dim):
        w = _restricted_weight(orbits, C.weight(idx))
        groups.setdefault(w, []).append(idx)

    layer: dict = {p: Counter() for p in range(q)}
    for w, members in groups.items():
        for p in range(q):
            lam = T.eigenvalue(p)
            # dim of the lam-eigenspace of psi restricted to span(members)
            mat = [[Fraction(0)] * len(members) for _ in members]
            pos = {m: r for r, m in enumerate(members)}
            for col, m in enumerate(members):
                for idx, x in T.psi[m].items():
                    mat[pos[idx]][col] = x
            for r in range(len(members)):
                mat[r][r] = mat[r][r] - lam
            dim = len(members) - rank(mat)
            if dim:
                layer[p][w] = dim

    # inner products of restricted simple roots: average over each orbit
    def rinner(u, v):
        tot = Fraction(0)
        for a, oa in zip(u, orbits):
            for b, ob in zip(v, orbits):
                if a and b:
                    s = sum(fin.inner[i - 1][j - 1] for i in oa for j in ob)
                    tot += a * b * s / (len(oa) * len(ob))
        return tot

    zero = tuple(0 for _ in orbits)
    roots0 = [w for w in layer[0] if w != zero]
    pos0 = [w for w in roots0 if all(x >= 0 for x in w)]
    posset = set(pos0)
    simple = [
        w
        for w in pos0
        if not any(tuple(a - b for a, b in zip(w, v)) in posset for v in pos0)
    ]
    simple.sort(key=lambda w: tuple(-x for x in w))
    A0 = [[int(2 * rinner(sj, si) / rinner(si, si)) for sj in simple] for si in simple]
    Adot = delete_index(cartan_from_roots(R), 0)
    perm = find_isomorphism(A0, Adot.rows())
    if perm is None:
        report.ok = False
        report.messages.append(f"fixed subalgebra has Cartan matrix {A0}, not {Adot.rows()}")
        return report

    # linear map from orbit coordinates to catalog coordinates over alpha_1..alpha_l
    l = len(simple)
    from .linalg import solve

    basis_t = [[Fraction(simple[k][o]) for k in range(l)] for o in range(len(orbits))]

    def to_catalog(w):
        coeffs = solve(basis_t, [Fraction(x) for x in w])
        out = [Fraction(0)] * l
        for k, cf in enumerate(coeffs):
            out[perm[k]] += cf
        return tuple(out)

    a = null_coefficients(R)
    jmax = 2 * q
    real: dict = {}
    imag: dict = {}
    for r in enumerate_roots(R, jmax):
        if r.is_imaginary:
            imag[r.degree] = r.multiplicity
            continue
        j = r.degree
        finite_part = tuple(Fraction(r.coefficients[i]) - j * a[i] for i in range(1, l + 1))
        real.setdefault(j, Counter())[finite_part] += 1

    for p in range(q):
        found = Counter()
        for w, dim in layer[p].items():
            if w == zero:
                continue
            found[to_catalog(w)] += dim
        for j in (p, p + q) if p else (0, q):
            expected = real.get(j, Counter())
            report.layers[(p, j)] = (expected, found)
            if expected != found:
                report.ok = False
                report.messages.append(f"layer p={p}: weights differ from degree {j} real roots")
        zdim = layer[p].get(zero, 0)
        j = p if p else q
        report.zero_weight[p] = (zdim, imag.get(j, 0))
        if zdim != imag.get(j, 0):
            report.ok = False
            report.messages.append(f"layer p={p}: zero-weight dim {zdim} vs imaginary multiplicity {imag.get(j, 0)}")
    return report


# ----------------------------------------------------------------------
# Killing-form table in ambient coordinates


def killing_table(R: RealizedRootSystem) -> dict:
    """The six ambient-coordinate identities tying c, d, H_j to delta, Lambda_0, alpha_j.

    For the first identity the finite part's normalized form is compared
    with the ambient Gram matrix up to one positive scale factor.
    """
    form = R.ambient
    roots = R.simple_roots
    delta = R.delta
    L0 = lambda0(R)
    l = R.rank
    a0 = roots[0]
    checks = {}

    Adot = delete_index(cartan_from_roots(R), 0)
    fin = _basis_for(Adot.entries).roots
    gram = [[pairing(roots[j], roots[k], form) for k in range(1, l + 1)] for j in range(1, l + 1)]
    s = gram[0][0] / fin.inner[0][0]
    ok1 = s > 0 and all(gram[j][k] == s * fin.inner[j][k] for j in range(l) for k in range(l))
    if R.twist == 1:
        theta = tuple(x - y for x, y in zip(delta, a0))
        ok1 = ok1 and s == pairing(theta, theta, form) / 2
    checks["B(H_j,H_k)=(alpha_j,alpha_k)"] = ok1
    checks["(delta,alpha_k)=0"] = all(pairing(delta, r, form) == 0 for r in roots)
    checks["(delta,delta)=0"] = pairing(delta, delta, form) == 0
    checks["(Lambda_0,Lambda_0)=0"] = pairing(L0, L0, form) == 0
    checks["(Lambda_0,alpha_j)=0"] = all(pairing(L0, roots[k], form) == 0 for k in range(1, l + 1))
    aa = pairing(a0, a0, form)
    checks["2(Lambda_0,alpha_0)/(alpha_0,alpha_0)=2(Lambda_0,delta)/(alpha_0,alpha_0)=1"] = (
        2 * pairing(L0, a0, form) / aa == 1 and 2 * pairing(L0, delta, form) / aa == 1
    )
    return checks
