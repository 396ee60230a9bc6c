"""Exact dense linear algebra over Q and Q(i, sqrt 3).

Matrices are lists of rows.  Entries may be ints, Fractions or
ExactComplex; nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import as_scalar, conj, is_real, real_sign

__all__ = [
    "bareiss_det",
    "det",
    "rank",
    "rref",
    "nullspace",
    "solve",
    "inverse",
    "matmul",
    "transpose",
    "identity",
    "inertia",
    "inertia_witness",
    "hermitian_value",
    "is_hermitian",
]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(r) for r in zip(*m)] if m else []


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def bareiss_det(m) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rref(m):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = [[as_scalar(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [as_scalar(x * inv) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [as_scalar(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def det(m):
    """Determinant over any exact field by elimination."""
    n = len(m)
    a = [[as_scalar(x) for x in row] for row in m]
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            out = -out
        out = out * a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [as_scalar(x - f * y) for x, y in zip(a[i], a[c])]
    return as_scalar(out)


def nullspace(m, ncols: int | None = None):
    """Basis of {x : m x = 0}, one vector per free column."""
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, pivots = rref(m)
    cols = len(m[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = as_scalar(-red[r][f])
        basis.append(v)
    return basis


def solve(a, b):
    """Solve a x = b for square invertible a; b is a vector."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[i][n] for i in range(n)]


def inverse(a):
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def is_hermitian(m) -> bool:
    n = len(m)
    return all(m[i][j] == conj(m[j][i]) for i in range(n) for j in range(n))


def inertia(m) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of an exact Hermitian matrix."""
    return inertia_witness(m)[:3]


def hermitian_value(m, v):
    """v^T m conj(v), the norm of the coefficient vector v."""
    n = len(m)
    tot = Fraction(0)
    for i in range(n):
        if not v[i]:
            continue
        for j in range(n):
            if v[j] and m[i][j]:
                tot = tot + v[i] * m[i][j] * conj(v[j])
    return as_scalar(tot)


def inertia_witness(m):
    """Inertia plus, when n_minus > 0, a coefficient vector of negative norm.

    Symmetric-pivoted LDL* elimination: a nonzero diagonal entry is used as a
    1x1 pivot; when the whole remaining diagonal vanishes, an off-diagonal
    entry b gives the 2x2 pivot [[0, b], [conj b, 0]] of inertia (1, 1).
    The congruence is tracked on coefficient vectors so a negative pivot
    comes with an explicit vector.
    """
    a = [[as_scalar(x) for x in row] for row in m]
    n = len(a)
    vecs = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pos = neg = 0
    witness = None
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is not None:
            d = a[piv][piv]
            if not is_real(d):
                raise ValueError("matrix is not Hermitian")
            if real_sign(d) > 0:
                pos += 1
            else:
                neg += 1
                if witness is None:
                    witness = list(vecs[piv])
            active.remove(piv)
            inv = 1 / d
            col = {i: a[i][piv] for i in active if a[i][piv]}
            for i, aip in col.items():
                f = aip * inv
                row = a[i]
                for j, ajp in col.items():
                    row[j] = as_scalar(row[j] - f * conj(ajp))
                vecs[i] = [as_scalar(x - f * y) for x, y in zip(vecs[i], vecs[piv])]
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j]), None)
        if pair is None:
            break
        i, j = pair
        pos += 1
        neg += 1
        b = a[i][j]
        if witness is None:
            # norm of v_i - b v_j is -2|b|^2
            witness = [as_scalar(x - b * y) for x, y in zip(vecs[i], vecs[j])]
        active.remove(i)
        active.remove(j)
        # inverse of [[0, b], [bc, 0]] is [[0, 1/bc], [1/b, 0]]
        bc = conj(b)
        inv_b = 1 / b
        inv_bc = 1 / bc
        rows = {k: (a[k][i], a[k][j]) for k in active if a[k][i] or a[k][j]}
        for k, (xi, xj) in rows.items():
            yi = xj * inv_b
            yj = xi * inv_bc
            row = a[k]
            for s, (zi, zj) in rows.items():
                row[s] = as_scalar(row[s] - yi * conj(zi) - yj * conj(zj))
            vecs[k] = [as_scalar(x - yi * u - yj * w) for x, u, w in zip(vecs[k], vecs[i], vecs[j])]
    zero = n - pos - neg
    return pos, neg, zero, witness
