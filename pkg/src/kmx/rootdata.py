"""Cartesian realizations of the affine root systems.

Each catalog entry gives the simple roots alpha_0..alpha_l, the null root
delta and, for twisted families, the diagram automorphism of the parent
finite diagram.  Coordinates live in an ambient space whose form is
Euclidean on the first n-2 coordinates and hyperbolic on the last two.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import GeneralizedCartanMatrix, delete_index, validate_gcm
from .errors import DimensionMismatch, RankOutOfRange, UnknownFamily, Unsolvable
from .linalg import rref

__all__ = [
    "AmbientForm",
    "RealizedRootSystem",
    "RootWithMultiplicity",
    "FAMILIES",
    "pairing",
    "catalog",
    "resolve_family",
    "concrete_label",
    "all_entries",
    "cartan_from_roots",
    "null_coefficients",
    "lambda0",
    "enumerate_roots",
    "real_roots_by_reflection",
    "parent_cartan",
    "catalog_gcms_of_size",
]

Vector = tuple[Fraction, ...]
HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class AmbientForm:
    dim: int


@dataclass(frozen=True)
class RealizedRootSystem:
    family: str  # generic label, e.g. "A_l^{(1)}"
    label: str  # concrete label, e.g. "A_3^{(1)}"
    rank: int  # l; there are l+1 simple roots
    twist: int
    simple_roots: tuple[Vector, ...]
    delta: Vector
    ambient: AmbientForm
    parent: tuple[str, int]  # finite type of the parent algebra
    tau: tuple[int, ...] | None = None  # tau[k-1] = image of parent node k (1-based)


@dataclass(frozen=True)
class RootWithMultiplicity:
    coords: Vector
    is_imaginary: bool
    multiplicity: int
    degree: int  # j in j*delta + alpha
    coefficients: tuple[int, ...]  # over alpha_0..alpha_l


def pairing(v, w, form: AmbientForm | None = None) -> Fraction:
    n = len(v)
    if len(w) != n or (form is not None and form.dim != n):
        raise DimensionMismatch(f"vectors of length {len(v)} and {len(w)} in dimension {form.dim if form else n}")
    if n < 2:
        raise DimensionMismatch("ambient dimension must be at least 2")
    s = sum((v[i] * w[i] for i in range(n - 2)), Fraction(0))
    return s + v[n - 2] * w[n - 1] + v[n - 1] * w[n - 2]


def _vec(n: int, *terms) -> Vector:
    v = [Fraction(0)] * n
    for idx, coef in terms:
        v[idx - 1] += Fraction(coef)
    return tuple(v)


# ----------------------------------------------------------------------
# family builders: l -> (dim, simple roots, delta)


def _a1(l):
    n = l + 3
    roots = [_vec(n, (1, -1), (l + 1, 1), (l + 3, 1))]
    roots += [_vec(n, (i, 1), (i + 1, -1)) for i in range(1, l + 1)]
    return n, roots, _vec(n, (l + 3, 1))


def _b1(l):
    n = l + 2
    roots = [_vec(n, (1, -1), (2, -1), (l + 2, 1))]
    roots += [_vec(n, (i, 1), (i + 1, -1)) for i in range(1, l)]
    roots += [_vec(n, (l, 1))]
    return n, roots, _vec(n, (l + 2, 1))


def _c1(l):
    n = l + 2
    roots = [_vec(n, (1, -2), (l + 2, 1))]
    roots += [_vec(n, (i, 1), (i + 1, -1)) for i in range(1, l)]
    roots += [_vec(n, (l, 2))]
    return n, roots, _vec(n, (l + 2, 1))


def _d1(l):
    n = l + 2
    roots = [_vec(n, (1, -1), (2, -1), (l + 2, 1))]
    roots += [_vec(n, (i, 1), (i + 1, -1)) for i in range(1, l)]
    roots += [_vec(n, (l - 1, 1), (l, 1))]
    return n, roots, _vec(n, (l + 2, 1))


_E_ALPHA1 = [(i, HALF * s) for i, s in zip(range(1, 9), (1, -1, -1, -1, -1, -1, -1, 1))]


def _e6(l):
    n = 10
    a0 = _vec(n, *[(i, HALF * s) for i, s in zip((1, 2, 3, 4, 5, 6, 7, 8, 10), (-1, -1, -1, -1, -1, 1, 1, -1, 2))])
    roots = [a0, _vec(n, *_E_ALPHA1)]
    roots += [_vec(n, (i - 1, -1), (i, 1)) for i in range(2, 6)]
    roots += [_vec(n, (1, 1), (2, 1))]
    return n, roots, _vec(n, (10, 1))


def _e7(l):
    n = 10
    roots = [_vec(n, (7, 1), (8, -1), (10, 1)), _vec(n, *_E_ALPHA1)]
    roots += [_vec(n, (i - 1, -1), (i, 1)) for i in range(2, 7)]
    roots += [_vec(n, (1, 1), (2, 1))]
    return n, roots, _vec(n, (10, 1))


def _e8(l):
    n = 10
    roots = [_vec(n, (7, -1), (8, -1), (10, 1)), _vec(n, *_E_ALPHA1)]
    roots += [_vec(n, (i - 1, -1), (i, 1)) for i in range(2, 8)]
    roots += [_vec(n, (1, 1), (2, 1))]
    return n, roots, _vec(n, (10, 1))


def _f4(l):
    n = 6
    roots = [
        _vec(n, (1, -1), (2, -1), (6, 1)),
        _vec(n, (2, 1), (3, -1)),
        _vec(n, (3, 1), (4, -1)),
        _vec(n, (4, 1)),
        _vec(n, (1, HALF), (2, -HALF), (3, -HALF), (4, -HALF)),
    ]
    return n, roots, _vec(n, (6, 1))


def _g2(l):
    n = 5
    roots = [
        _vec(n, (1, 1), (2, 1), (3, -2), (5, 1)),
        _vec(n, (1, -2), (2, 1), (3, 1)),
        _vec(n, (1, 1), (2, -1)),
    ]
    return n, roots, _vec(n, (5, 1))


def _a2l_2(l):
    n = 2 * l + 3
    roots = [_vec(n, (1, -1), (2 * l + 1, 1), (2 * l + 3, HALF))]
    roots += [
        _vec(n, (i, HALF), (i + 1, -HALF), (2 * l - i + 1, HALF), (2 * l - i + 2, -HALF))
        for i in range(1, l)
    ]
    roots += [_vec(n, (l, HALF), (l + 2, -HALF))]
    return n, roots, _vec(n, (2 * l + 3, HALF))


def _a2l1_2(l):
    n = 2 * l + 2
    roots = [_vec(n, (1, -HALF), (2, -HALF), (2 * l - 1, HALF), (2 * l, HALF), (2 * l + 2, HALF))]
    # the printed range i = 1..l overlaps the separate alpha_l; only 1..l-1 is consistent
    roots += [
        _vec(n, (i, HALF), (i + 1, -HALF), (2 * l - i, HALF), (2 * l - i + 1, -HALF))
        for i in range(1, l)
    ]
    roots += [_vec(n, (l, 1), (l + 1, -1))]
    return n, roots, _vec(n, (2 * l + 2, HALF))


def _d_l1_2(l):
    n = l + 3
    roots = [_vec(n, (1, -1), (l + 3, HALF))]
    roots += [_vec(n, (i, 1), (i + 1, -1)) for i in range(1, l)]
    roots += [_vec(n, (l, 1))]
    return n, roots, _vec(n, (l + 3, HALF))


def _e6_2(l):
    n = 10
    q = Fraction(1, 4)
    roots = [
        _vec(n, (5, -HALF), (6, HALF), (7, HALF), (8, -HALF), (10, HALF)),
        _vec(n, *[(i, q * s) for i, s in zip(range(1, 9), (1, -1, -1, -3, 1, -1, -1, 1))]),
        _vec(n, (1, -HALF), (2, HALF), (3, -HALF), (4, HALF)),
        _vec(n, (2, -1), (3, 1)),
        _vec(n, (1, 1), (2, 1)),
    ]
    return n, roots, _vec(n, (10, HALF))


def _d4_3(l):
    n = 6
    roots = [
        _vec(n, (1, -2 * THIRD), (2, -THIRD), (3, -THIRD), (6, THIRD)),
        _vec(n, (1, THIRD), (2, -THIRD), (3, 2 * THIRD)),
        _vec(n, (2, 1), (3, -1)),
    ]
    return n, roots, _vec(n, (6, THIRD))


@dataclass(frozen=True)
class Family:
    label: str
    letter: str
    twist: int
    min_rank: int
    fixed_rank: int | None
    builder: object
    parent_letter: str

    def parent_rank(self, l: int) -> int:
        if self.twist == 1:
            return l
        return {
            "A_{2l}^{(2)}": 2 * l,
            "A_{2l-1}^{(2)}": 2 * l - 1,
            "D_{l+1}^{(2)}": l + 1,
            "E_6^{(2)}": 6,
            "D_4^{(3)}": 4,
        }[self.label]

    def tau(self, l: int) -> tuple[int, ...] | None:
        if self.twist == 1:
            return None
        n = self.parent_rank(l)
        if self.label == "A_{2l}^{(2)}":
            return tuple(2 * l + 1 - k for k in range(1, n + 1))
        if self.label == "A_{2l-1}^{(2)}":
            return tuple(2 * l - k if k != l else l for k in range(1, n + 1))
        if self.label == "D_{l+1}^{(2)}":
            img = list(range(1, n + 1))
            img[l - 1], img[l] = l + 1, l
            return tuple(img)
        if self.label == "E_6^{(2)}":
            return (5, 4, 3, 2, 1, 6)
        if self.label == "D_4^{(3)}":
            return (3, 2, 4, 1)
        raise AssertionError(self.label)

    def ranks(self, max_rank: int) -> list[int]:
        if self.fixed_rank is not None:
            return [self.fixed_rank] if self.fixed_rank <= max_rank else []
        return list(range(self.min_rank, max_rank + 1))


FAMILIES: dict[str, Family] = {
    f.label: f
    for f in [
        Family("A_l^{(1)}", "A", 1, 1, None, _a1, "A"),
        Family("B_l^{(1)}", "B", 1, 3, None, _b1, "B"),
        Family("C_l^{(1)}", "C", 1, 2, None, _c1, "C"),
        Family("D_l^{(1)}", "D", 1, 4, None, _d1, "D"),
        Family("E_6^{(1)}", "E", 1, 6, 6, _e6, "E"),
        Family("E_7^{(1)}", "E", 1, 7, 7, _e7, "E"),
        Family("E_8^{(1)}", "E", 1, 8, 8, _e8, "E"),
        Family("F_4^{(1)}", "F", 1, 4, 4, _f4, "F"),
        Family("G_2^{(1)}", "G", 1, 2, 2, _g2, "G"),
        Family("A_{2l}^{(2)}", "A", 2, 1, None, _a2l_2, "A"),
        Family("A_{2l-1}^{(2)}", "A", 2, 3, None, _a2l1_2, "A"),
        Family("D_{l+1}^{(2)}", "D", 2, 2, None, _d_l1_2, "D"),
        Family("E_6^{(2)}", "E", 2, 4, 4, _e6_2, "E"),
        Family("D_4^{(3)}", "D", 3, 2, 2, _d4_3, "D"),
    ]
}


def _sub(n: int) -> str:
    return str(n) if n < 10 else "{" + str(n) + "}"


def concrete_label(family: str, l: int) -> str:
    fam = FAMILIES[family]
    if fam.twist == 1 or fam.fixed_rank is not None:
        if fam.fixed_rank is not None:
            return fam.label
        return f"{fam.letter}_{_sub(l)}^{{(1)}}"
    return f"{fam.letter}_{_sub(fam.parent_rank(l))}^{{({fam.twist})}}"


_LABEL_RE = re.compile(r"^([A-G])_\{?(\d+)\}?\^\{?\((\d)\)\}?$")


def resolve_family(name: str, l: int | None = None, twist: int | None = None) -> tuple[str, int]:
    """Map a generic label, a concrete label, or a letter (+twist) to (family, l).

    Accepted: "A_l^{(1)}" with l; "A_3^{(1)}" (l optional, checked when given);
    "A" with twist and l.  A letter with twist 2 is ambiguous only for A.
    """
    name = name.strip()
    if name in FAMILIES:
        fam = FAMILIES[name]
        if l is None:
            if fam.fixed_rank is None:
                raise RankOutOfRange(f"{name} needs a rank")
            l = fam.fixed_rank
        return name, l
    m = _LABEL_RE.match(name)
    if m:
        letter, num, q = m.group(1), int(m.group(2)), int(m.group(3))
        hits = []
        for fam in FAMILIES.values():
            if fam.letter != letter or fam.twist != q:
                continue
            for cand in range(1, num + 2):
                if fam.fixed_rank is not None and cand != fam.fixed_rank:
                    continue
                if fam.parent_rank(cand) == num and cand >= fam.min_rank:
                    hits.append((fam.label, cand))
        if not hits:
            if any(f.letter == letter and f.twist == q for f in FAMILIES.values()):
                raise RankOutOfRange(f"{name} is outside the catalog ranges")
            raise UnknownFamily(f"no catalog family matches {name!r}")
        fam_label, cand = hits[0]
        if l is not None and l != cand:
            raise RankOutOfRange(f"{name} has rank {cand}, not {l}")
        return fam_label, cand
    if len(name) == 1 and name in "ABCDEFG":
        q = 1 if twist is None else twist
        cands = [f for f in FAMILIES.values() if f.letter == name and f.twist == q]
        if len(cands) > 1 and l is not None:
            # E^{(1)} is split by rank into three fixed-rank families
            fixed = [f for f in cands if f.fixed_rank == l]
            if fixed and all(f.fixed_rank is not None for f in cands):
                cands = fixed
        if not cands:
            raise UnknownFamily(f"no family with letter {name} and twist {q}")
        if len(cands) > 1:
            if all(f.fixed_rank is not None for f in cands):
                raise RankOutOfRange(f"{name} with twist {q} needs one of the ranks {sorted(f.fixed_rank for f in cands)}")
            raise UnknownFamily(
                f"letter {name} with twist {q} is ambiguous; use one of {sorted(f.label for f in cands)}"
            )
        fam = cands[0]
        if l is None:
            if fam.fixed_rank is None:
                raise RankOutOfRange(f"{name} needs a rank")
            l = fam.fixed_rank
        return fam.label, l
    raise UnknownFamily(f"unknown family {name!r}")


@lru_cache(maxsize=None)
def _catalog(family: str, l: int) -> RealizedRootSystem:
    fam = FAMILIES[family]
    if fam.fixed_rank is not None and l != fam.fixed_rank:
        raise RankOutOfRange(f"{family} has fixed rank {fam.fixed_rank}")
    if l < fam.min_rank:
        raise RankOutOfRange(f"{family} requires l >= {fam.min_rank}, got {l}")
    n, roots, delta = fam.builder(l)
    return RealizedRootSystem(
        family=family,
        label=concrete_label(family, l),
        rank=l,
        twist=fam.twist,
        simple_roots=tuple(roots),
        delta=delta,
        ambient=AmbientForm(n),
        parent=(fam.parent_letter, fam.parent_rank(l)),
        tau=fam.tau(l),
    )


def catalog(family: str, l: int | None = None, twist: int | None = None) -> RealizedRootSystem:
    fam_label, rank = resolve_family(family, l, twist)
    return _catalog(fam_label, rank)


def all_entries(max_rank: int = 8):
    for fam in FAMILIES.values():
        for l in fam.ranks(max_rank):
            yield _catalog(fam.label, l)


def cartan_from_roots(R: RealizedRootSystem) -> GeneralizedCartanMatrix:
    roots = R.simple_roots
    rows = []
    for j, aj in enumerate(roots):
        njj = pairing(aj, aj, R.ambient)
        row = []
        for k, ak in enumerate(roots):
            v = 2 * pairing(ak, aj, R.ambient) / njj
            if v.denominator != 1:
                raise Unsolvable(f"non-integral Cartan entry {v} in {R.label}")
            row.append(int(v))
        rows.append(row)
    return validate_gcm(rows)


@lru_cache(maxsize=None)
def catalog_gcms_of_size(size: int):
    out = []
    for fam in FAMILIES.values():
        l = size - 1
        if fam.fixed_rank is not None and fam.fixed_rank != l:
            continue
        if l < fam.min_rank:
            continue
        R = _catalog(fam.label, l)
        out.append((R.label, cartan_from_roots(R)))
    return tuple(out)


@lru_cache(maxsize=None)
def null_coefficients(R: RealizedRootSystem) -> tuple[Fraction, ...]:
    """a_i with delta = sum a_i alpha_i in the ambient space."""
    n = R.ambient.dim
    cols = list(R.simple_roots)
    mat = [[cols[j][r] for j in range(len(cols))] + [R.delta[r]] for r in range(n)]
    red, pivots = rref(mat)
    k = len(cols)
    if k in pivots or pivots != list(range(k)):
        raise Unsolvable(f"delta is not in the span of the simple roots of {R.label}")
    return tuple(red[i][k] for i in range(k))


def lambda0(R: RealizedRootSystem) -> Vector:
    """Vector L with (L, a0) = (a0, a0)/2, (L, a_k) = 0 for k >= 1, (L, L) = 0.

    The linear conditions fix L up to the orthogonal complement of the
    simple roots; the isotropy condition is then met by adding a multiple
    of delta, which is orthogonal to every simple root.
    """
    form = R.ambient
    n = form.dim
    roots = R.simple_roots
    gram_rows = []
    rhs = []
    for k, a in enumerate(roots):
        # (L, a) as a linear functional of L's coordinates
        row = [a[i] for i in range(n - 2)] + [a[n - 1], a[n - 2]]
        gram_rows.append(row)
        rhs.append(pairing(a, a, form) / 2 if k == 0 else Fraction(0))
    aug = [r + [b] for r, b in zip(gram_rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        raise Unsolvable(f"no Lambda_0 for {R.label}")
    base = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        base[pc] = red[r][n]
    base = tuple(base)
    # among particular solutions choose the one with zero free coordinates, then fix isotropy
    dd = pairing(R.delta, base, form)
    if dd == 0:
        raise Unsolvable(f"(delta, Lambda_0) vanishes for {R.label}")
    t = -pairing(base, base, form) / (2 * dd)
    out = tuple(b + t * d for b, d in zip(base, R.delta))
    if pairing(out, out, form) != 0:
        raise Unsolvable(f"isotropy of Lambda_0 failed for {R.label}")
    return out


# ----------------------------------------------------------------------
# parent finite algebras for twisted families


def _finite_simple_roots(letter: str, n: int):
    """Simple roots of a finite type in the catalog's Cartesian conventions
    (node 0 dropped), without the affine rank restrictions."""
    if letter == "A":
        return [_vec(n + 1, (i, 1), (i + 1, -1)) for i in range(1, n + 1)]
    if letter == "D":
        return [_vec(n, (i, 1), (i + 1, -1)) for i in range(1, n)] + [_vec(n, (n - 1, 1), (n, 1))]
    if letter == "E" and n == 6:
        return [r[:8] for r in _e6(6)[1][1:]]
    raise UnknownFamily(f"no parent realization for {letter}_{n}")


@lru_cache(maxsize=None)
def parent_cartan(letter: str, n: int) -> GeneralizedCartanMatrix:
    roots = _finite_simple_roots(letter, n)
    rows = []
    for aj in roots:
        njj = sum(x * x for x in aj)
        rows.append([int(2 * sum(x * y for x, y in zip(ak, aj)) / njj) for ak in roots])
    return validate_gcm(rows)


# ----------------------------------------------------------------------
# root enumeration


def _combine(R: RealizedRootSystem, coeffs) -> Vector:
    n = R.ambient.dim
    out = [Fraction(0)] * n
    for c, a in zip(coeffs, R.simple_roots):
        if c:
            for i in range(n):
                out[i] += c * a[i]
    return tuple(out)


def _degree(R: RealizedRootSystem, coeffs) -> int:
    a = null_coefficients(R)
    j = Fraction(coeffs[0]) / a[0]
    if j.denominator != 1:
        raise Unsolvable(f"non-integral delta-degree for {coeffs} in {R.label}")
    return int(j)


def real_roots_by_reflection(R: RealizedRootSystem, jmax: int) -> list[tuple[int, ...]]:
    """Positive real roots (coefficients over alpha_0..alpha_l) with
    delta-degree at most jmax, by height-increasing simple reflections.

    Every positive real root is reached from a simple root through
    reflections that raise the height, so every intermediate root has
    coefficients bounded by the target's and the truncation is exact.
    """
    A = cartan_from_roots(R)
    a = null_coefficients(R)
    n = A.size
    bound0 = (jmax + 1) * a[0]
    start = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    seen = set(start)
    queue = list(start)
    while queue:
        g = queue.pop()
        for i in range(n):
            # <g, alpha_i^vee> = sum_j g_j A_ij
            s = sum(g[j] * A[i, j] for j in range(n))
            if s >= 0:
                continue
            h = list(g)
            h[i] -= s
            h = tuple(h)
            if h[0] >= bound0 or h in seen:
                continue
            seen.add(h)
            queue.append(h)
    out = [g for g in seen if _degree(R, g) <= jmax]
    # j = jmax + 1 roots with negative finite part can slip below bound0
    return sorted(out)


def _imaginary_multiplicity(R: RealizedRootSystem, j: int) -> int:
    if R.twist == 1:
        return R.rank
    # dimension of the eigenvalue exp(2 pi i j/q) space of tau on the parent Cartan
    q = R.twist
    p = j % q
    tau = R.tau
    seen = set()
    count = 0
    for k in range(1, len(tau) + 1):
        if k in seen:
            continue
        orbit = [k]
        seen.add(k)
        x = tau[k - 1]
        while x != k:
            orbit.append(x)
            seen.add(x)
            x = tau[x - 1]
        if (len(orbit) * p) % q == 0:
            count += 1
    return count


def enumerate_roots(R: RealizedRootSystem, jmax: int) -> list[RootWithMultiplicity]:
    """Real roots j*delta + alpha with |j| <= jmax and imaginary roots j*delta,
    1 <= |j| <= jmax, sorted by (degree, coefficients)."""
    if jmax < 0:
        raise ValueError("jmax must be non-negative")
    a = null_coefficients(R)
    if R.twist == 1:
        coeff_roots = _untwisted_real_roots(R, jmax)
    else:
        pos = real_roots_by_reflection(R, jmax)
        coeff_roots = set(pos) | {tuple(-x for x in g) for g in pos}
        coeff_roots = {g for g in coeff_roots if abs(_degree(R, g)) <= jmax}
    out = []
    for g in coeff_roots:
        out.append(RootWithMultiplicity(_combine(R, g), False, 1, _degree(R, g), g))
    for j in range(1, jmax + 1):
        for s in (1, -1):
            g = tuple(int(s * j * x) for x in a)
            mult = _imaginary_multiplicity(R, s * j)
            if mult:
                out.append(RootWithMultiplicity(_combine(R, g), True, mult, s * j, g))
    out.sort(key=lambda r: (r.degree, r.coefficients))
    return out


def _untwisted_real_roots(R: RealizedRootSystem, jmax: int) -> set[tuple[int, ...]]:
    """j*delta + alpha for every root alpha of the finite part."""
    from .chevalley import finite_roots

    A = cartan_from_roots(R)
    fin = finite_roots(delete_index(A, 0))
    a = null_coefficients(R)
    delta = tuple(int(x) for x in a)
    out = set()
    for beta in fin.positive:
        for sign in (1, -1):
            fin_part = (0,) + tuple(sign * x for x in beta)
            for j in range(-jmax, jmax + 1):
                out.add(tuple(j * d + f for d, f in zip(delta, fin_part)))
    return out
