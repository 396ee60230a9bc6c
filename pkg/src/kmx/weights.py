"""Weights of affine algebras: fundamental weights, integrable weights, level."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cartan import GeneralizedCartanMatrix, delete_index
from .chevalley import ChevalleyBasis
from .errors import NotDominantIntegral, VerificationFailed
from .linalg import inverse, nullspace, solve, transpose
from .rootdata import RealizedRootSystem, cartan_from_roots, lambda0, pairing
from .scalars import format_rational

__all__ = [
    "WeightFunctional",
    "FundamentalWeightSet",
    "fundamental_weights",
    "mu_by_solve",
    "integrable_spec",
    "colevel_coefficients",
    "level",
]


@dataclass(frozen=True)
class WeightFunctional:
    """Values m_0..m_l on h_0..h_l and the value on d."""

    values: tuple[Fraction, ...]
    d_value: Fraction = Fraction(0)

    @property
    def rank(self) -> int:
        return len(self.values) - 1

    def __add__(self, other: "WeightFunctional") -> "WeightFunctional":
        if len(self.values) != len(other.values):
            raise ValueError("weights of different rank")
        return WeightFunctional(
            tuple(a + b for a, b in zip(self.values, other.values)), self.d_value + other.d_value
        )

    def __rmul__(self, k) -> "WeightFunctional":
        return WeightFunctional(tuple(k * v for v in self.values), k * self.d_value)

    def to_dict(self) -> dict:
        return {"h": [format_rational(v) for v in self.values], "d": format_rational(self.d_value)}


@dataclass(frozen=True)
class FundamentalWeightSet:
    label: str
    mu: tuple[Fraction, ...]  # mu_1..mu_l
    weights: tuple[WeightFunctional, ...]  # Lambda_0..Lambda_l
    vectors: tuple[tuple[Fraction, ...], ...]  # ambient coordinates of Lambda_0..Lambda_l
    table: tuple[tuple[Fraction, ...], ...]  # table[j][k] = Lambda_j(H_k)

    def to_dict(self) -> dict:
        return {
            "family": self.label,
            "mu": [format_rational(m) for m in self.mu],
            "table": [[format_rational(x) for x in row] for row in self.table],
        }


def _coroot_value(R: RealizedRootSystem, vec, k: int) -> Fraction:
    ak = R.simple_roots[k]
    return 2 * pairing(vec, ak, R.ambient) / pairing(ak, ak, R.ambient)


def fundamental_weights(R: RealizedRootSystem, A: GeneralizedCartanMatrix | None = None) -> FundamentalWeightSet:
    """Lambda_j = dot-Lambda_j + mu_j Lambda_0 with mu_j = -sum_k A_0k (Adot^-1)_kj."""
    if A is None:
        A = cartan_from_roots(R)
    l = R.rank
    Adot = delete_index(A, 0).rows()
    inv = inverse(Adot)
    mu = tuple(-sum((A[0, k] * inv[k - 1][j - 1] for k in range(1, l + 1)), Fraction(0)) for j in range(1, l + 1))
    L0 = lambda0(R)
    n = R.ambient.dim
    vectors = [L0]
    for j in range(1, l + 1):
        # dot-Lambda_j = sum_k (Adot^-1)_kj alpha_k
        v = [Fraction(0)] * n
        for k in range(1, l + 1):
            c = inv[k - 1][j - 1]
            if c:
                for i in range(n):
                    v[i] += c * R.simple_roots[k][i]
        vectors.append(tuple(x + mu[j - 1] * y for x, y in zip(v, L0)))
    table = tuple(tuple(_coroot_value(R, vectors[j], k) for k in range(l + 1)) for j in range(l + 1))
    for j in range(l + 1):
        for k in range(l + 1):
            if table[j][k] != (1 if j == k else 0):
                raise VerificationFailed(f"Lambda_{j}(H_{k}) = {table[j][k]} in {R.label}")
    weights = tuple(
        WeightFunctional(tuple(Fraction(int(i == j)) for i in range(l + 1))) for j in range(l + 1)
    )
    return FundamentalWeightSet(R.label, mu, weights, tuple(vectors), table)


def mu_by_solve(R: RealizedRootSystem) -> tuple[Fraction, ...]:
    """mu_j from the linear conditions Lambda_j(H_k) = delta_jk alone.

    Writes Lambda_j = sum_{k>=1} x_k alpha_k + y Lambda_0 and solves the
    l+1 ambient-pairing equations; mu_j = y.
    """
    l = R.rank
    L0 = lambda0(R)
    cols = [R.simple_roots[k] for k in range(1, l + 1)] + [L0]
    M = [[_coroot_value(R, col, i) for col in cols] for i in range(l + 1)]
    out = []
    for j in range(1, l + 1):
        rhs = [Fraction(int(i == j)) for i in range(l + 1)]
        out.append(solve(M, rhs)[-1])
    return tuple(out)


def integrable_spec(m, d_value=0) -> WeightFunctional:
    vals = []
    for x in m:
        if isinstance(x, bool):
            raise NotDominantIntegral(f"not an integer: {x!r}")
        f = Fraction(x)
        if f.denominator != 1 or f < 0:
            shown = ", ".join(str(Fraction(y)) for y in m)
            raise NotDominantIntegral(f"m = [{shown}] is not dominant integral")
        vals.append(f)
    if not vals:
        raise NotDominantIntegral("empty weight")
    return WeightFunctional(tuple(vals), Fraction(d_value))


def colevel_coefficients(A: GeneralizedCartanMatrix) -> tuple[int, ...]:
    """Primitive positive integers a_i^vee with sum_i a_i^vee A_ij = 0, so
    that c = sum_i a_i^vee h_i."""
    null = nullspace(transpose(A.rows()))
    if len(null) != 1:
        raise VerificationFailed("left null space is not one-dimensional")
    v = null[0]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise VerificationFailed("left null vector is not positive")
    return tuple(ints)


def level(lam: WeightFunctional, C: ChevalleyBasis | GeneralizedCartanMatrix) -> Fraction:
    """Lambda(c).

    With a Chevalley basis of the finite part: m_0 + dot-Lambda(H_theta),
    read off h_0 = c - H_theta.  With an affine Cartan matrix: the same
    value through c = sum a_i^vee h_i, scaled so that Lambda_0 has level 1;
    this also covers twisted families.
    """
    m = lam.values
    if isinstance(C, ChevalleyBasis):
        if len(m) != C.l + 1:
            raise ValueError("weight rank does not match the algebra")
        ht = C.coroot(C.highest_root)
        return m[0] + sum((v * m[i + 1] for i, v in ht.items()), Fraction(0))
    a = colevel_coefficients(C)
    if len(m) != len(a):
        raise ValueError("weight rank does not match the Cartan matrix")
    return sum((Fraction(x, a[0]) * y for x, y in zip(a, m)), Fraction(0))
