"""Exact scalar types used as map coordinates.

Three kinds of number flow through the map code:

* ``fractions.Fraction`` for rational slopes and coordinates;
* :class:`FieldElement`, an element of Q(t) for a real algebraic integer t
  given by its monic minimal polynomial and an isolating interval.  Post
  critically finite tent maps almost always have such slopes;
* :class:`Dyadic`, an outward rounded interval with endpoints on a 2^-p
  grid, used by the quadratic family.

All three support ``+ - *`` with ints and Fractions and the rich comparisons,
so orbit code is written once.  Comparisons between Dyadic intervals that
overlap raise :class:`~kneading.errors.Undecided`.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd
from typing import Sequence, Union

from .errors import Undecided

Exact = Union[int, Fraction, "FieldElement"]


def _poly_trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = [Fraction(c) for c in num]
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    lead = Fraction(den[-1])
    while len(_poly_trim(num)) >= len(den) and any(num):
        shift = len(num) - len(den)
        k = num[-1] / lead
        q[shift] = k
        for i, c in enumerate(den):
            num[shift + i] -= k * c
        num.pop()
    return _poly_trim(q), _poly_trim(num or [Fraction(0)])


def _poly_sub(p: list, q: list) -> list:
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    return _poly_trim([x - y for x, y in zip(p, q)])


def _poly_mul(p: list, q: list) -> list:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return _poly_trim(out)


class NumberField:
    """Q(t) for the unique root t of ``minpoly`` inside ``[lo, hi]``.

    ``minpoly`` is a monic irreducible integer polynomial, coefficients from
    the constant term upward.  The root is located on demand to whatever
    precision a sign decision needs, always by exact integer arithmetic.
    """

    def __init__(self, minpoly: Sequence[int], lo: Fraction, hi: Fraction):
        poly = tuple(int(c) for c in minpoly)
        if len(poly) < 3 or poly[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 2")
        self.poly = poly
        self.degree = len(poly) - 1
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise ValueError("empty isolating interval")
        self._lo, self._hi = lo, hi
        s_lo, s_hi = self._psign(lo), self._psign(hi)
        if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
            raise ValueError("interval does not isolate a simple root")
        self._s_lo = s_lo
        # t lies in [num / 2**bits, (num + 1) / 2**bits]
        self._bits = 0
        self._num = 0
        self._locate(64)
        d = self.degree
        # t**k reduced modulo the minimal polynomial, for d <= k <= 2d - 2
        table = {}
        cur = [-c for c in poly[:-1]]
        for k in range(d, 2 * d - 1):
            table[k] = tuple(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [x - top * c for x, c in zip(cur, poly[:-1])]
        self._reduce = table
        self._bound = max(abs(lo), abs(hi)) + 1

    def _psign(self, x: Fraction) -> int:
        v = Fraction(0)
        for c in reversed(self.poly):
            v = v * x + c
        return (v > 0) - (v < 0)

    def _below_root(self, x: Fraction) -> bool:
        if x <= self._lo:
            return True
        if x >= self._hi:
            return False
        s = self._psign(x)
        return s == self._s_lo or s == 0

    def _locate(self, bits: int) -> None:
        if bits <= self._bits:
            return
        if self._bits == 0:
            lo_n = floor(self._lo * 2**bits)
            hi_n = floor(self._hi * 2**bits) + 1
        else:
            scale = 2 ** (bits - self._bits)
            lo_n = self._num * scale
            hi_n = (self._num + 1) * scale
        den = 2**bits
        while hi_n - lo_n > 1:
            mid = (lo_n + hi_n) // 2
            if self._below_root(Fraction(mid, den)):
                lo_n = mid
            else:
                hi_n = mid
        self._bits, self._num = bits, lo_n

    def approx(self) -> Fraction:
        return Fraction(self._num, 2**self._bits)

    def root_interval(self) -> tuple[Fraction, Fraction]:
        return Fraction(self._num, 2**self._bits), Fraction(self._num + 1, 2**self._bits)

    def sign(self, coeffs: Sequence[int]) -> int:
        """Exact sign of sum(coeffs[k] * t**k)."""
        d = len(coeffs) - 1
        while d > 0 and coeffs[d] == 0:
            d -= 1
        if d == 0:
            return (coeffs[0] > 0) - (coeffs[0] < 0)
        m = self._bound
        slack = sum(k * abs(coeffs[k]) * m ** (k - 1) for k in range(1, d + 1))
        slack = slack.numerator // slack.denominator + 1 if isinstance(slack, Fraction) else slack
        while True:
            bits, n = self._bits, self._num
            scale = 1 << bits
            acc = coeffs[d]
            p = 1
            for k in range(d - 1, -1, -1):
                p *= scale
                acc = acc * n + coeffs[k] * p
            # |value - acc / 2**(bits*d)| <= slack * 2**-bits
            if abs(acc) > slack << (bits * (d - 1)):
                return 1 if acc > 0 else -1
            self._locate(bits * 2)

    def element(self, coeffs: Sequence[int], den: int = 1) -> "FieldElement":
        return FieldElement(self, tuple(coeffs), den)

    @property
    def gen(self) -> "FieldElement":
        c = [0] * self.degree
        c[1] = 1
        return FieldElement(self, tuple(c), 1)

    def coerce(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise TypeError("elements of different number fields")
            return x
        x = Fraction(x)
        c = [0] * self.degree
        c[0] = x.numerator
        return FieldElement(self, tuple(c), x.denominator)

    def describe(self) -> str:
        lo, hi = self.root_interval()
        return f"root of {poly_str(self.poly)} near {float(lo):.15g}"

    def __repr__(self) -> str:
        return f"NumberField({self.describe()})"


def poly_str(coeffs: Sequence, var: str = "t") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class FieldElement:
    __slots__ = ("field", "coeffs", "den", "_sign")

    def __init__(self, field: NumberField, coeffs: tuple, den: int = 1):
        if den < 0:
            coeffs, den = tuple(-c for c in coeffs), -den
        g = den
        for c in coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            coeffs = tuple(c // g for c in coeffs)
            den //= g
        self.field = field
        self.coeffs = coeffs
        self.den = den
        self._sign = None

    # arithmetic -------------------------------------------------------
    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise TypeError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.den == self.den:
            return FieldElement(self.field, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)), self.den)
        return FieldElement(
            self.field,
            tuple(x * o.den + y * self.den for x, y in zip(self.coeffs, o.coeffs)),
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-x for x in self.coeffs), self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, tuple(x * other for x in self.coeffs), self.den)
        if isinstance(other, Fraction):
            return FieldElement(
                self.field, tuple(x * other.numerator for x in self.coeffs), self.den * other.denominator
            )
        o = self._other(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            ck = prod[k]
            if ck:
                row = self.field._reduce[k]
                for i in range(d):
                    out[i] += ck * row[i]
        return FieldElement(self.field, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[x]: s*a + r*m = 1
        a = _poly_trim([Fraction(c) for c in self.coeffs])
        m = [Fraction(c) for c in self.field.poly]
        r0, r1 = m, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant
        inv = [c / r0[0] for c in s0]
        inv += [Fraction(0)] * (self.field.degree - len(inv))
        den = 1
        for c in inv:
            den = den * c.denominator // gcd(den, c.denominator)
        coeffs = tuple(int(c * den) for c in inv)
        # multiply by self.den to undo the denominator of self
        return FieldElement(self.field, tuple(c * self.den for c in coeffs), den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / other)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # order ------------------------------------------------------------
    def sign(self) -> int:
        if self._sign is None:
            self._sign = self.field.sign(self.coeffs)
        return self._sign

    def _cmp(self, other) -> int:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.field is self.field and other.coeffs == self.coeffs and other.den == self.den
        if isinstance(other, (int, Fraction)):
            return not any(self.coeffs[1:]) and Fraction(self.coeffs[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(Fraction(self.coeffs[0], self.den))
        return hash((self.coeffs, self.den))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __float__(self):
        t = float(self.field.approx())
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc / self.den

    def __str__(self):
        body = poly_str(self.coeffs)
        if self.den == 1:
            return body
        if sum(1 for c in self.coeffs if c) > 1:
            body = f"({body})"
        return f"{body}/{self.den}"

    def __repr__(self):
        return f"FieldElement({self})"


# ---------------------------------------------------------------------------
# dyadic intervals


def _down(x: Fraction, prec: int) -> Fraction:
    return Fraction(floor(x * (1 << prec)), 1 << prec)


def _up(x: Fraction, prec: int) -> Fraction:
    return -_down(-x, prec)


class Dyadic:
    """Closed interval [lo, hi] with endpoints rounded outward to 2^-prec."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi=None, prec: int = 64):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if hi < lo:
            raise ValueError("inverted interval")
        self.lo = _down(lo, prec)
        self.hi = _up(hi, prec)
        self.prec = prec

    @classmethod
    def hull(cls, values, prec: int) -> "Dyadic":
        vals = list(values)
        return cls(min(vals), max(vals), prec)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Dyadic):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other) -> bool:
        if isinstance(other, Dyadic):
            return self.lo <= other.hi and other.lo <= self.hi
        return self.lo <= other <= self.hi

    def _bounds(self, other):
        if isinstance(other, Dyadic):
            return other.lo, other.hi
        other = Fraction(other)
        return other, other

    def __add__(self, other):
        lo, hi = self._bounds(other)
        return Dyadic(self.lo + lo, self.hi + hi, self.prec)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.hi, -self.lo, self.prec)

    def __sub__(self, other):
        lo, hi = self._bounds(other)
        return Dyadic(self.lo - hi, self.hi - lo, self.prec)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        lo, hi = self._bounds(other)
        prods = (self.lo * lo, self.lo * hi, self.hi * lo, self.hi * hi)
        return Dyadic(min(prods), max(prods), self.prec)

    __rmul__ = __mul__

    def _cmp(self, other) -> int:
        lo, hi = self._bounds(other)
        if self.hi < lo:
            return -1
        if self.lo > hi:
            return 1
        if self.lo == self.hi == lo == hi:
            return 0
        raise Undecided(f"interval [{self.lo}, {self.hi}] overlaps [{lo}, {hi}]")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return (self.lo, self.hi) == (other.lo, other.hi)
        if isinstance(other, (int, Fraction)):
            return self.lo == self.hi == other
        return NotImplemented

    def __hash__(self):
        if self.lo == self.hi:
            return hash(self.lo)
        return hash((self.lo, self.hi))

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __str__(self):
        if self.lo == self.hi:
            return str(self.lo)
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"

    __repr__ = __str__


def lower(x, y):
    """min(x, y); for overlapping dyadic intervals the hull of possible minima."""
    if isinstance(x, Dyadic) or isinstance(y, Dyadic):
        xl, xh = (x.lo, x.hi) if isinstance(x, Dyadic) else (x, x)
        yl, yh = (y.lo, y.hi) if isinstance(y, Dyadic) else (y, y)
        prec = x.prec if isinstance(x, Dyadic) else y.prec
        return Dyadic(min(xl, yl), min(xh, yh), prec)
    return x if x <= y else y


def upper(x, y):
    if isinstance(x, Dyadic) or isinstance(y, Dyadic):
        xl, xh = (x.lo, x.hi) if isinstance(x, Dyadic) else (x, x)
        yl, yh = (y.lo, y.hi) if isinstance(y, Dyadic) else (y, y)
        prec = x.prec if isinstance(x, Dyadic) else y.prec
        return Dyadic(max(xl, yl), max(xh, yh), prec)
    return x if x >= y else y


def coincide(x, y) -> bool:
    """Exact equality, or overlap when either side is a dyadic bracket."""
    if isinstance(x, Dyadic):
        return x.overlaps(y)
    if isinstance(y, Dyadic):
        return y.overlaps(x)
    return x == y


def fmt(x) -> str:
    """Lossless text for any coordinate type."""
    if isinstance(x, Fraction):
        return str(x)
    return str(x)
