"""Exact scalars: rationals and elements of the field Q(i, sqrt 3).

Q(i, sqrt 3) is the 12th cyclotomic field.  It holds every phase of order
dividing 12, the cube roots of unity needed by order-3 diagram twists, and
Gaussian rationals for complex moment data.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = [
    "ExactComplex",
    "I",
    "SQRT3",
    "as_scalar",
    "conj",
    "root_of_unity",
    "is_real",
    "real_sign",
    "format_rational",
    "parse_rational",
    "format_scalar",
    "parse_scalar",
]


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _sign_q3(a: Fraction, b: Fraction) -> int:
    """Sign of a + b*sqrt(3), exactly."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs: compare a^2 with 3 b^2
    d = a * a - 3 * b * b
    if d == 0:
        return 0
    return (1 if a > 0 else -1) if d > 0 else (1 if b > 0 else -1)


class ExactComplex:
    """a + b*sqrt3 + i*(c + d*sqrt3) with rational a, b, c, d."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = _q(a)
        self.b = _q(b)
        self.c = _q(c)
        self.d = _q(d)

    @classmethod
    def _lift(cls, x) -> "ExactComplex":
        if isinstance(x, ExactComplex):
            return x
        return cls(_q(x))

    # ------------------------------------------------------------------
    def real(self) -> "ExactComplex":
        return ExactComplex(self.a, self.b)

    def imag(self) -> "ExactComplex":
        return ExactComplex(self.c, self.d)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.a, self.b, -self.c, -self.d)

    def is_real(self) -> bool:
        return self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def simplify(self):
        """Return a Fraction when the value is rational, else self."""
        if self.is_rational():
            return self.a
        return self

    def sign(self) -> int:
        if not self.is_real():
            raise ValueError("sign of a non-real number")
        return _sign_q3(self.a, self.b)

    # ------------------------------------------------------------------
    def __add__(self, other):
        try:
            o = ExactComplex._lift(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return ExactComplex(-self.a, -self.b, -self.c, -self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = ExactComplex._lift(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactComplex(self.a * other, self.b * other, self.c * other, self.d * other)
        if not isinstance(other, ExactComplex):
            try:
                other = ExactComplex._lift(other)
            except TypeError:
                return NotImplemented
        # (x + i y)(u + i v) with x, y, u, v in Q(sqrt3)
        xa, xb, ya, yb = self.a, self.b, self.c, self.d
        ua, ub, va, vb = other.a, other.b, other.c, other.d
        # products in Q(sqrt3): (p + q s)(r + t s) = pr + 3qt + (pt + qr) s
        xu_a = xa * ua + 3 * xb * ub
        xu_b = xa * ub + xb * ua
        yv_a = ya * va + 3 * yb * vb
        yv_b = ya * vb + yb * va
        xv_a = xa * va + 3 * xb * vb
        xv_b = xa * vb + xb * va
        yu_a = ya * ua + 3 * yb * ub
        yu_b = ya * ub + yb * ua
        return ExactComplex(xu_a - yv_a, xu_b - yv_b, xv_a + yu_a, xv_b + yu_b)

    __rmul__ = __mul__

    def norm(self) -> tuple[Fraction, Fraction]:
        """|z|^2 as (p, q) meaning p + q*sqrt3."""
        n = self * self.conjugate()
        return n.a, n.b

    def inverse(self) -> "ExactComplex":
        p, q = self.norm()
        den = p * p - 3 * q * q
        if den == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/(p + q s) = (p - q s)/(p^2 - 3 q^2)
        inv_norm = ExactComplex(p / den, -q / den)
        return self.conjugate() * inv_norm

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return ExactComplex(self.a / other, self.b / other, self.c / other, self.d / other)
        try:
            o = ExactComplex._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return ExactComplex._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactComplex(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = ExactComplex._lift(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.c == o.c and self.d == o.d

    def __hash__(self):
        if self.is_rational():
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def __repr__(self):
        return f"ExactComplex({format_scalar(self)})"


I = ExactComplex(0, 0, 1)
SQRT3 = ExactComplex(0, 1)


def as_scalar(x):
    """Normalize to Fraction when possible."""
    if isinstance(x, ExactComplex):
        return x.simplify()
    return _q(x)


def conj(x):
    if isinstance(x, ExactComplex):
        return x.conjugate()
    return x


def is_real(x) -> bool:
    return x.is_real() if isinstance(x, ExactComplex) else True


def real_sign(x) -> int:
    if isinstance(x, ExactComplex):
        return x.sign()
    return (x > 0) - (x < 0)


_COS = {
    # cos and sin of 2*pi*k/12, as (a, b) meaning a + b*sqrt3
    0: ((1, 0), (0, 0)),
    1: ((0, Fraction(1, 2)), (Fraction(1, 2), 0)),
    2: ((Fraction(1, 2), 0), (0, Fraction(1, 2))),
    3: ((0, 0), (1, 0)),
}


def root_of_unity(turn) -> ExactComplex | Fraction:
    """exp(2*pi*i*turn) for a rational turn whose denominator divides 12."""
    t = _q(turn)
    k12 = t * 12
    if k12.denominator != 1:
        raise ValueError(f"root of unity of order {t.denominator} is outside Q(i, sqrt3)")
    k = int(k12) % 12
    quadrant, r = divmod(k, 3)
    (ca, cb), (sa, sb) = _COS[r]
    z = ExactComplex(ca, cb, sa, sb)
    z = z * (I ** quadrant)
    return z.simplify()


# ----------------------------------------------------------------------
# serialization


def format_rational(x) -> str:
    x = _q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    s = str(s).strip()
    if "/" in s:
        p, q = s.split("/")
        return Fraction(int(p), int(q))
    return Fraction(s)


def _format_q3(a: Fraction, b: Fraction) -> str:
    if b == 0:
        return format_rational(a)
    return f"{format_rational(a)}+{format_rational(b)}*sqrt3"


def _parse_q3(s: str) -> tuple[Fraction, Fraction]:
    s = s.strip()
    if s.endswith("*sqrt3"):
        head = s[: -len("*sqrt3")]
        # split at the last '+' that is not a leading sign
        idx = head.rfind("+")
        if idx <= 0:
            raise ValueError(f"malformed scalar {s!r}")
        return parse_rational(head[:idx]), parse_rational(head[idx + 1:])
    return parse_rational(s), Fraction(0)


def format_scalar(x):
    """Rationals as "p/q"; non-real values as ["re", "im"]."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    if x.is_real():
        return _format_q3(x.a, x.b)
    return [_format_q3(x.a, x.b), _format_q3(x.c, x.d)]


def format_complex_pair(x) -> list[str]:
    """Always emit a ["re", "im"] pair."""
    x = ExactComplex._lift(as_scalar(x)) if not isinstance(x, ExactComplex) else x
    return [_format_q3(x.a, x.b), _format_q3(x.c, x.d)]


def parse_scalar(obj):
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise ValueError(f"complex scalar must be a [re, im] pair, got {obj!r}")
        a, b = _parse_q3(str(obj[0]))
        c, d = _parse_q3(str(obj[1]))
        return ExactComplex(a, b, c, d).simplify()
    a, b = _parse_q3(str(obj))
    return ExactComplex(a, b).simplify()
