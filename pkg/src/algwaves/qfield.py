"""Exact scalar arithmetic: rationals, quadratic extensions Q(sqrt(d)), rising factorials.

Every coefficient in this package is a QuadExt: an element a + b*sqrt(d) of a
real quadratic field with arbitrary-precision rational components.  d = 1
encodes plain Q; a value whose radical part is zero is normalized to d = 1 and
therefore combines freely with values from any extension.  Two values carrying
different nontrivial radicands refuse to combine.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

Rat = Fraction

RatLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "QuadExt"]


class RadicandMismatchError(ArithmeticError):
    """Combining values that live in different quadratic extensions."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s**2 * d with d squarefree; return (s, d).  Requires n >= 1."""
    if n < 1:
        raise ValueError("squarefree_decompose needs a positive integer, got %r" % (n,))
    s = 1
    d = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return s, d * m


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_decompose(n)[0] == 1


def rational_sqrt(r: RatLike) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    r = Fraction(r)
    if r < 0:
        return None
    if r == 0:
        return Fraction(0)
    pn = math.isqrt(r.numerator)
    pd = math.isqrt(r.denominator)
    if pn * pn == r.numerator and pd * pd == r.denominator:
        return Fraction(pn, pd)
    return None


class QuadExt:
    """a + b*sqrt(d) with a, b rational and d a squarefree positive integer.

    Values are immutable.  All arithmetic, equality and ordering is exact;
    ordering uses sign tests on a**2 - d*b**2, never floats.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RatLike = 0, b: RatLike = 0, d: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 1:
            raise ValueError("radicand must be a positive integer, got %r" % (d,))
        if d == 1:
            a, b = a + b, Fraction(0)
        elif b == 0:
            d = 1
        elif not is_squarefree(d):
            raise ValueError("radicand must be squarefree, got %r" % (d,))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def lift(x: ScalarLike) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadExt(x)
        raise TypeError("cannot interpret %r as a field element" % (x,))

    def _join(self, other: "QuadExt") -> int:
        if self.d == other.d:
            return self.d
        if self.d == 1:
            return other.d
        if other.d == 1:
            return self.d
        raise RadicandMismatchError(
            "cannot combine sqrt(%d) with sqrt(%d)" % (self.d, other.d)
        )

    # -- predicates -------------------------------------------------------

    @property
    def rational_part(self) -> Fraction:
        return self.a

    @property
    def radical_part(self) -> Fraction:
        return self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 with d*b^2; equality is impossible for
        # nonzero rational a, b because sqrt(d) is irrational when d > 1
        lhs = self.a * self.a
        rhs = self.d * self.b * self.b
        if self.a > 0:
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        d = self._join(o)
        return QuadExt(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        d = self._join(o)
        return QuadExt(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def inverse(self) -> "QuadExt":
        norm = self.a * self.a - self.d * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadExt(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadExt.lift(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadExt(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        return (self - QuadExt.lift(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    # -- rendering --------------------------------------------------------

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.b == 1:
            rad = "sqrt(%d)" % self.d
        elif self.b == -1:
            rad = "-sqrt(%d)" % self.d
        else:
            rad = "%s*sqrt(%d)" % (self.b, self.d)
        if self.a == 0:
            return rad
        if self.b > 0:
            return "%s + %s" % (self.a, rad)
        return "%s - %s" % (self.a, rad.lstrip("-"))

    def __repr__(self):
        return "QuadExt(%r, %r, %r)" % (str(self.a), str(self.b), self.d)


def try_sqrt(x: ScalarLike, d: Optional[int] = None) -> Optional[QuadExt]:
    """Exact square root of a nonnegative rational value, if representable.

    x must have zero radical part.  The root is searched first in Q; failing
    that, as a rational multiple of sqrt(d).  With d = None the radicand is
    inferred from the squarefree part of x itself, so a representable root is
    always found.  Returns None when x is negative or (for fixed d) when no
    exact root exists.
    """
    x = QuadExt.lift(x)
    if x.b != 0:
        raise ValueError("try_sqrt needs a radical-free value, got %s" % (x,))
    r = x.a
    if r < 0:
        return None
    if r == 0:
        return QuadExt(0)
    s = rational_sqrt(r)
    if s is not None:
        return QuadExt(s)
    if d is None:
        sq, df = squarefree_decompose(r.numerator * r.denominator)
        return QuadExt(0, Fraction(sq, r.denominator), df)
    if d < 2 or not is_squarefree(d):
        return None
    s = rational_sqrt(r / d)
    if s is not None:
        return QuadExt(0, s, d)
    return None


def field_sqrt(x: ScalarLike) -> Optional[QuadExt]:
    """Square root of x inside its own field Q(sqrt(d)), or None.

    Unlike try_sqrt this also handles values with a nonzero radical part,
    but it never enlarges the field.
    """
    x = QuadExt.lift(x)
    if x.b == 0:
        if x.a < 0:
            return None
        s = rational_sqrt(x.a)
        return None if s is None else QuadExt(s)
    # (p + q*sqrt(d))^2 = p^2 + d q^2 + 2 p q sqrt(d)
    norm = x.a * x.a - x.d * x.b * x.b
    t = rational_sqrt(norm)
    if t is None:
        return None
    for sgn in (1, -1):
        p2 = (x.a + sgn * t) / 2
        p = rational_sqrt(p2)
        if p is None or p == 0:
            continue
        q = x.b / (2 * p)
        cand = QuadExt(p, q, x.d)
        if cand * cand == x:
            return cand
        cand = QuadExt(-p, -q, x.d)
        if cand * cand == x:
            return cand
    return None


def pochhammer(x: RatLike, m: int) -> Fraction:
    """Rising factorial x (x+1) ... (x+m-1); exact, m >= 0."""
    if m < 0:
        raise ValueError("pochhammer needs m >= 0, got %r" % (m,))
    x = Fraction(x)
    out = Fraction(1)
    for i in range(m):
        out *= x + i
    return out


def gamma_ratio(x: RatLike, m: int) -> Fraction:
    """Gamma(x+m)/Gamma(x) computed as a rising factorial, never via Gamma."""
    return pochhammer(x, m)


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


# -- textual form ---------------------------------------------------------

def parse_quadext(text: str, d: Optional[int] = None) -> QuadExt:
    """Parse 'a + b*sqrt(d)' style literals: '2', '-1/3', '5/6*sqrt(6)',
    'sqrt(2)', '1/2 - 3/4*sqrt(5)'.  If d is given the literal must live in
    Q(sqrt(d))."""
    toks = _tokenize_value(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else ("eof", "")

    def take(kind=None):
        nonlocal pos
        t = peek()
        if kind is not None and t[0] != kind:
            raise ValueError("bad field literal %r: expected %s near %r" % (text, kind, t[1]))
        pos += 1
        return t

    def parse_uint() -> int:
        t = take("int")
        return int(t[1])

    def parse_rational() -> Fraction:
        num = parse_uint()
        if peek() == ("op", "/"):
            take()
            den = parse_uint()
            if den == 0:
                raise ValueError("zero denominator in %r" % (text,))
            return Fraction(num, den)
        return Fraction(num)

    def parse_sqrt() -> QuadExt:
        take("sqrt")
        take_op("(")
        n = parse_uint()
        take_op(")")
        if n < 1:
            raise ValueError("sqrt of a nonpositive integer in %r" % (text,))
        s, df = squarefree_decompose(n)
        return QuadExt(0, s, df) if df > 1 else QuadExt(s)

    def take_op(sym):
        t = take("op")
        if t[1] != sym:
            raise ValueError("bad field literal %r: expected %r" % (text, sym))

    def parse_term() -> QuadExt:
        sign = 1
        while peek()[0] == "op" and peek()[1] in "+-":
            if take()[1] == "-":
                sign = -sign
        if peek()[0] == "sqrt":
            val = parse_sqrt()
        else:
            r = parse_rational()
            val = QuadExt(r)
            if peek() == ("op", "*"):
                take()
                val = val * parse_sqrt()
        return -val if sign < 0 else val

    out = parse_term()
    while peek()[0] == "op" and peek()[1] in "+-":
        op = take()[1]
        t = parse_term()
        out = out - t if op == "-" else out + t
    if peek()[0] != "eof":
        raise ValueError("trailing input in field literal %r" % (text,))
    if d is not None and out.d not in (1, d):
        raise ValueError("literal %r lives in Q(sqrt(%d)), expected Q(sqrt(%d))" % (text, out.d, d))
    return out


def _tokenize_value(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j]))
            i = j
            continue
        if text.startswith("sqrt", i):
            toks.append(("sqrt", "sqrt"))
            i += 4
            continue
        if ch in "+-*/()":
            toks.append(("op", ch))
            i += 1
            continue
        raise ValueError("bad character %r in field literal %r" % (ch, text))
    return toks
