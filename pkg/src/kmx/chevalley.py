"""Finite simple Lie algebras from a Cartan matrix.

Roots come from root-string closure, the Chevalley basis from the
extraspecial-pair algorithm: N is fixed to +(p+1) on extraspecial pairs and
every other structure constant is forced by the Jacobi identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .cartan import GeneralizedCartanMatrix, classify, symmetrize, validate_gcm
from .errors import NotFiniteType
from .scalars import as_scalar, format_scalar

__all__ = [
    "FiniteRootSystem",
    "ChevalleyBasis",
    "finite_roots",
    "structure_constants",
    "invariant_form",
    "chevalley_basis",
    "add",
    "scale",
]

Root = tuple[int, ...]


# sparse vectors over the basis: dict index -> scalar


def add(acc: dict, other: dict, factor=1) -> dict:
    for k, v in other.items():
        x = acc.get(k, 0) + factor * v
        if x:
            acc[k] = as_scalar(x)
        else:
            acc.pop(k, None)
    return acc


def scale(vec: dict, factor) -> dict:
    if not factor:
        return {}
    return {k: as_scalar(v * factor) for k, v in vec.items()}


@dataclass(frozen=True)
class FiniteRootSystem:
    cartan: GeneralizedCartanMatrix
    positive: tuple[Root, ...]  # ordered by height, simple roots first
    inner: tuple[tuple[Fraction, ...], ...]  # (alpha_i, alpha_j), normalized (theta, theta) = 2

    @property
    def rank(self) -> int:
        return self.cartan.size

    @property
    def highest(self) -> Root:
        return self.positive[-1]

    @cached_property
    def roots(self) -> frozenset:
        return frozenset(self.positive) | frozenset(neg(r) for r in self.positive)

    @cached_property
    def index(self) -> dict:
        return {r: k for k, r in enumerate(self.positive)}

    def form(self, a: Root, b: Root) -> Fraction:
        l = self.rank
        return sum(
            (a[i] * b[j] * self.inner[i][j] for i in range(l) if a[i] for j in range(l) if b[j]),
            Fraction(0),
        )

    def coroot_pairing(self, beta: Root, i: int) -> int:
        """<beta, alpha_i^vee> = beta(H_i)."""
        return sum(beta[j] * self.cartan[i, j] for j in range(self.rank))

    def height(self, r: Root) -> int:
        return sum(r)


def neg(r: Root) -> Root:
    return tuple(-x for x in r)


def _plus(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _minus(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _order_key(r: Root):
    return (sum(r), tuple(-x for x in r))


def finite_roots(A) -> FiniteRootSystem:
    if not isinstance(A, GeneralizedCartanMatrix):
        A = validate_gcm(A)
    if classify(A, identify=False).kind != "Finite":
        raise NotFiniteType("Cartan matrix is not of finite type")
    l = A.size
    simple = [tuple(int(i == k) for i in range(l)) for k in range(l)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(l):
                # p = largest k with beta - k alpha_i a root (lower layers are complete)
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in found:
                        p += 1
                    else:
                        break
                q = p - sum(beta[j] * A[i, j] for j in range(l))
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= found
        found |= nxt
        layer = sorted(nxt)
    positive = tuple(sorted(found, key=_order_key))
    top = sum(positive[-1])
    if sum(1 for r in positive if sum(r) == top) != 1:
        raise NotFiniteType("Cartan matrix is decomposable; no unique highest root")
    d = symmetrize(A).diag
    theta = positive[-1]
    raw = [[d[i] * A[i, j] for j in range(l)] for i in range(l)]
    tt = sum((theta[i] * theta[j] * raw[i][j] for i in range(l) for j in range(l)), Fraction(0))
    inner = tuple(tuple(Fraction(2) * x / tt for x in row) for row in raw)
    return FiniteRootSystem(A, positive, inner)


class ChevalleyBasis:
    """Basis H_1..H_l, E_beta, F_beta = e_{-beta} with integral brackets.

    Indices: H_i -> i-1, E_k -> l+k-1, F_k -> l+N+k-1 where k runs over
    the ordered positive roots (1-based), so E_1..E_l are the simple ones.
    """

    def __init__(self, roots: FiniteRootSystem):
        self.roots = roots
        self.l = roots.rank
        self.npos = len(roots.positive)
        self.dim = self.l + 2 * self.npos
        self.N = _structure_constants(roots)
        self._table = self._build_table()
        self._form = self._build_form()

    # -- indexing ------------------------------------------------------
    def h(self, i: int) -> int:
        return i - 1

    def e(self, k: int) -> int:
        return self.l + k - 1

    def f(self, k: int) -> int:
        return self.l + self.npos + k - 1

    def root_vector(self, r: Root) -> int:
        """Index of e_r for a positive or negative root r."""
        k = self.roots.index.get(r)
        if k is not None:
            return self.l + k
        return self.l + self.npos + self.roots.index[neg(r)]

    def weight(self, idx: int) -> Root:
        if idx < self.l:
            return (0,) * self.l
        if idx < self.l + self.npos:
            return self.roots.positive[idx - self.l]
        return neg(self.roots.positive[idx - self.l - self.npos])

    def symbol(self, idx: int) -> str:
        if idx < self.l:
            return f"H[{idx + 1}]"
        if idx < self.l + self.npos:
            return f"E[{idx - self.l + 1}]"
        return f"F[{idx - self.l - self.npos + 1}]"

    def parse_symbol(self, s: str) -> int:
        s = s.strip()
        kind, rest = s[0], s[1:]
        if not (rest.startswith("[") and rest.endswith("]")) or kind not in "HEF":
            raise ValueError(f"bad basis symbol {s!r}")
        k = int(rest[1:-1])
        top = self.l if kind == "H" else self.npos
        if not 1 <= k <= top:
            raise ValueError(f"basis symbol {s!r} out of range")
        return {"H": self.h, "E": self.e, "F": self.f}[kind](k)

    @property
    def symbols(self) -> list[str]:
        return [self.symbol(i) for i in range(self.dim)]

    def coroot(self, r: Root) -> dict:
        """H_r = [e_r, e_{-r}] for a positive root r, in the H_i basis."""
        rr = self.roots.form(r, r)
        out = {}
        for i in range(self.l):
            if r[i]:
                c = r[i] * self.roots.inner[i][i] / rr
                out[i] = c
        return out

    # -- brackets --------------------------------------------------------
    def _bracket_basis(self, a: int, b: int) -> dict:
        l = self.l
        R = self.roots
        wa, wb = self.weight(a), self.weight(b)
        if a < l and b < l:
            return {}
        if a < l:
            return {b: Fraction(R.coroot_pairing(wb, a))} if R.coroot_pairing(wb, a) else {}
        if b < l:
            c = R.coroot_pairing(wa, b)
            return {a: Fraction(-c)} if c else {}
        s = _plus(wa, wb)
        if not any(s):
            if a < l + self.npos:
                return dict(self.coroot(wa))
            return scale(self.coroot(wb), -1)
        if s not in R.roots:
            return {}
        n = self.N[(wa, wb)]
        return {self.root_vector(s): Fraction(n)}

    def _build_table(self):
        table = {}
        for a in range(self.dim):
            for b in range(self.dim):
                v = self._bracket_basis(a, b)
                if v:
                    table[(a, b)] = v
        return table

    def bracket_basis(self, a: int, b: int) -> dict:
        return self._table.get((a, b), {})

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                t = self._table.get((a, b))
                if t:
                    add(out, t, ca * cb)
        return out

    # -- invariant form --------------------------------------------------
    def _build_form(self):
        l = self.l
        R = self.roots
        form = {}
        for i in range(l):
            for j in range(l):
                # (alpha_i^vee, alpha_j^vee)
                v = 4 * R.inner[i][j] / (R.inner[i][i] * R.inner[j][j])
                if v:
                    form[(i, j)] = v
        for k, r in enumerate(R.positive, start=1):
            v = Fraction(2) / R.form(r, r)
            form[(self.e(k), self.f(k))] = v
            form[(self.f(k), self.e(k))] = v
        return form

    def form_basis(self, a: int, b: int):
        return self._form.get((a, b), Fraction(0))

    def form(self, x: dict, y: dict):
        tot = Fraction(0)
        for a, ca in x.items():
            for b, cb in y.items():
                v = self._form.get((a, b))
                if v:
                    tot = tot + ca * cb * v
        return as_scalar(tot)

    @property
    def highest_root(self) -> Root:
        return self.roots.highest

    def to_json(self) -> str:
        rows = []
        for (a, b), v in sorted(self._table.items()):
            rows.append(
                {
                    "x": self.symbol(a),
                    "y": self.symbol(b),
                    "bracket": {self.symbol(k): format_scalar(c) for k, c in sorted(v.items())},
                }
            )
        return json.dumps(rows, sort_keys=True)


def _structure_constants(R: FiniteRootSystem) -> dict:
    """N[(a, b)] for all roots a, b with a + b a nonzero root."""
    pos = R.positive
    rank_of = R.index
    roots = R.roots
    N: dict = {}

    def sq(r):
        return R.form(r, r)

    def get(a, b):
        s = _plus(a, b)
        if not any(s) or s not in roots:
            return 0
        return N[(a, b)]

    def fill_mixed(x, y):
        # N(x, -y) for positive x, y with x - y a nonzero root
        d = _minus(x, y)
        if d in rank_of:  # x = y + z
            v = -sq(d) / sq(x) * N[(y, d)]
        else:  # y = x + z'
            z = neg(d)
            v = sq(z) / sq(y) * N[(z, x)]
        v = Fraction(v)
        assert v.denominator == 1
        v = int(v)
        N[(x, neg(y))] = v
        N[(neg(y), x)] = -v
        N[(neg(x), y)] = -v
        N[(y, neg(x))] = v

    for xi in pos:
        if sum(xi) < 2:
            continue
        pairs = []
        for a in pos:
            if rank_of[a] >= rank_of[xi]:
                break
            b = _minus(xi, a)
            if b in rank_of and rank_of[a] < rank_of[b]:
                pairs.append((a, b))
        pairs.sort(key=lambda p: rank_of[p[0]])
        a1, b1 = pairs[0]
        p = 0
        probe = _minus(b1, a1)
        while probe in roots:
            p += 1
            probe = _minus(probe, a1)
        for a, b in pairs:
            if (a, b) == (a1, b1):
                n = p + 1
            else:
                t1 = Fraction(0)
                if _minus(b1, a) in roots:
                    t1 = Fraction(get(b1, neg(a)) * get(a1, neg(b))) / sq(_minus(b1, a))
                t2 = Fraction(0)
                if _minus(a1, a) in roots:
                    t2 = Fraction(get(neg(a), a1) * get(b1, neg(b))) / sq(_minus(a1, a))
                n = sq(xi) / N[(a1, b1)] * (t1 + t2)
                assert n.denominator == 1
                n = int(n)
            N[(a, b)] = n
            N[(b, a)] = -n
            N[(neg(a), neg(b))] = -n
            N[(neg(b), neg(a))] = n
        # mixed-sign constants whose positive data is now complete: those
        # producing a root of height below xi are filled on demand below
        for a, b in pairs:
            for x, y in ((xi, a), (xi, b)):
                if (x, neg(y)) not in N:
                    fill_mixed(x, y)
    # any remaining mixed pairs (x - y a root) not reached above
    for x in pos:
        for y in pos:
            if x != y and _minus(x, y) in roots and (x, neg(y)) not in N:
                fill_mixed(x, y)
    return N


def structure_constants(R: FiniteRootSystem) -> ChevalleyBasis:
    return ChevalleyBasis(R)


def chevalley_basis(A) -> ChevalleyBasis:
    return ChevalleyBasis(finite_roots(A))


def invariant_form(C: ChevalleyBasis) -> dict:
    """Symmetric table {(a, b): B(a, b)} over basis indices (nonzero entries)."""
    return dict(C._form)
