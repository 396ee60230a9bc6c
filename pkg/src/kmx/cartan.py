"""Generalized Cartan matrices: validation, classification, symmetrization."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    DiagonalNotTwo,
    NotSquare,
    NotSymmetrizable,
    PositiveOffDiagonal,
    ZeroAsymmetry,
)
from .linalg import bareiss_det
from .scalars import format_rational

__all__ = [
    "GeneralizedCartanMatrix",
    "Classification",
    "Symmetrizer",
    "validate_gcm",
    "classify",
    "identify_family",
    "symmetrize",
    "principal_minors",
    "delete_index",
    "find_isomorphism",
]

FINITE = "Finite"
AFFINE = "Affine"
INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> str:
        return json.dumps(self.rows())


@dataclass(frozen=True)
class Classification:
    kind: str
    family: str | None = None
    det: Fraction = Fraction(0)
    ambiguous: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "family": self.family, "det": format_rational(self.det)}


@dataclass(frozen=True)
class Symmetrizer:
    diag: tuple[Fraction, ...] = field(default_factory=tuple)


def validate_gcm(entries) -> GeneralizedCartanMatrix:
    rows = [list(r) for r in entries]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotSquare("matrix must be square and non-empty")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                if isinstance(x, Fraction) and x.denominator == 1:
                    continue
                raise NotSquare(f"entries must be integers, got {x!r}")
    rows = [[int(x) for x in r] for r in rows]
    for i in range(n):
        if rows[i][i] != 2:
            raise DiagonalNotTwo(f"A[{i}][{i}] = {rows[i][i]}, expected 2")
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] > 0:
                raise PositiveOffDiagonal(f"A[{i}][{j}] = {rows[i][j]} > 0")
    for i in range(n):
        for j in range(n):
            if i != j and (rows[i][j] == 0) != (rows[j][i] == 0):
                raise ZeroAsymmetry(f"A[{i}][{j}] = {rows[i][j]} but A[{j}][{i}] = {rows[j][i]}")
    return GeneralizedCartanMatrix(tuple(tuple(r) for r in rows))


def delete_index(m: GeneralizedCartanMatrix, k: int) -> GeneralizedCartanMatrix:
    keep = [i for i in range(m.size) if i != k]
    return GeneralizedCartanMatrix(tuple(tuple(m.entries[i][j] for j in keep) for i in keep))


def principal_minors(m: GeneralizedCartanMatrix):
    """Yield (index subset, determinant) for every non-empty principal submatrix."""
    n = m.size
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            yield sub, bareiss_det([[m.entries[i][j] for j in sub] for i in sub])


def _positive_definite_symmetrized(rows, d) -> bool:
    # Sylvester: a symmetric matrix is positive definite iff its leading minors are positive
    n = len(rows)
    scale = 1
    for x in d:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    sym = [[int(d[i] * scale) * rows[i][j] for j in range(n)] for i in range(n)]
    return all(bareiss_det([r[:k] for r in sym[:k]]) > 0 for k in range(1, n + 1))


def classify(m: GeneralizedCartanMatrix, identify: bool = True) -> Classification:
    n = m.size
    rows = m.rows()
    full = bareiss_det(rows)
    try:
        d = symmetrize(m).diag
    except NotSymmetrizable:
        d = None
    if d is not None:
        # principal minors of A and D A share signs, so Sylvester's criterion
        # on D A settles positivity of every principal minor of A
        if full > 0 and _positive_definite_symmetrized(rows, d):
            return Classification(FINITE, None, Fraction(full))
        proper_ok = n > 1 and all(
            _positive_definite_symmetrized(delete_index(m, k).rows(), d[:k] + d[k + 1:])
            for k in range(n)
        )
    else:
        minors = {sub: v for sub, v in principal_minors(m)}
        if all(v > 0 for v in minors.values()):
            return Classification(FINITE, None, Fraction(full))
        proper_ok = n > 1 and all(v > 0 for sub, v in minors.items() if len(sub) < n)
    if full == 0 and proper_ok:
        family, ambiguous = None, ()
        if identify:
            labels = _matching_labels(m)
            if labels:
                family = labels[0]
                ambiguous = tuple(labels) if len(labels) > 1 else ()
        return Classification(AFFINE, family, Fraction(0), ambiguous)
    return Classification(INDEFINITE, None, Fraction(full))


# ----------------------------------------------------------------------
# isomorphism up to simultaneous row/column permutation


def _node_signature(rows, i):
    n = len(rows)
    return tuple(sorted((rows[i][j], rows[j][i]) for j in range(n) if j != i and rows[i][j]))


def find_isomorphism(a, b) -> list[int] | None:
    """Permutation p with a[i][j] == b[p[i]][p[j]], or None.

    Nodes are matched by their labelled-neighbourhood signature and the
    assignment is extended along edges, so Dynkin-shaped inputs (paths,
    cycles, forks) are matched with almost no backtracking.
    """
    n = len(a)
    if n != len(b):
        return None
    sig_a = [_node_signature(a, i) for i in range(n)]
    sig_b = [_node_signature(b, i) for i in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    # visit a's nodes in BFS order so each new node has an assigned neighbour
    order = []
    seen = set()
    for start in range(n):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in range(n):
                if w not in seen and a[v][w]:
                    seen.add(w)
                    queue.append(w)
    perm = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used[w] or sig_b[w] != sig_a[v]:
                continue
            if all(
                a[v][u] == b[w][perm[u]] and a[u][v] == b[perm[u]][w]
                for u in order[:k]
            ):
                perm[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                perm[v] = -1
                used[w] = False
        return False

    return perm if extend(0) else None


def _matching_labels(m: GeneralizedCartanMatrix) -> list[str]:
    from .rootdata import catalog_gcms_of_size

    rows = m.rows()
    hits = [label for label, gcm in catalog_gcms_of_size(m.size) if find_isomorphism(rows, gcm.rows())]
    return sorted(set(hits))


def identify_family(m: GeneralizedCartanMatrix) -> str | None:
    labels = _matching_labels(m)
    return labels[0] if labels else None


def symmetrize(m: GeneralizedCartanMatrix) -> Symmetrizer:
    n = m.size
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if j == i or m[i, j] == 0:
                    continue
                want = d[i] * m[i, j] / m[j, i]
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    queue.append(j)
                elif d[j] != want:
                    raise NotSymmetrizable(f"cycle condition fails at ({i}, {j})")
        # scale the component to coprime positive integers
        den = 1
        for i in comp:
            den = den * d[i].denominator // gcd(den, d[i].denominator)
        ints = [int(d[i] * den) for i in comp]
        g = 0
        for x in ints:
            g = gcd(g, x)
        for i, x in zip(comp, ints):
            d[i] = Fraction(x // g)
    return Symmetrizer(tuple(d))
