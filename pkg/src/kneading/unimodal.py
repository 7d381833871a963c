"""Concrete unimodal maps on their cores.

Two backends:

* :class:`TentMap` with slope t in (sqrt 2, 2].  The slope is a Fraction or
  an exact real algebraic number (:class:`~kneading.exact.FieldElement`), so
  every iterate is exact.  Post critically finite slopes are produced from a
  kneading sequence by :func:`tent_from_kneading`.
* :class:`QuadraticMap`, the logistic map mu*x*(1-x) with rational mu,
  iterated on outward rounded dyadic intervals.

The core is always [a, b] with c the turning point, f(c) = b, f(b) = a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, RegimeError, Undecided
from .exact import Dyadic, FieldElement, NumberField, coincide, lower
from .height import (
    HALF,
    Classification,
    Leaf,
    classify,
    late,
    rhe,
    window_top,
)
from .symbolic import BinarySeq, Ordering, Word, cmp_prefix, cmp_unimodal, is_kneading


@dataclass(frozen=True)
class TruncatedPrefix:
    """The first symbols of a kneading sequence whose orbit did not close."""

    word: Word
    undecided: bool = False

    def __str__(self):
        return self.word + "..."


Kneading = Union[BinarySeq, TruncatedPrefix]


class UnimodalMap:
    a: object
    b: object
    c: object
    exact: bool = True
    is_tent: bool = False

    def f(self, x):
        raise NotImplementedError

    def __call__(self, x):
        if not self.in_core(x):
            raise DomainError(f"{x} is outside the core [{self.a}, {self.b}]")
        return self.f(x)

    def eval(self, x):
        return self(x)

    def in_core(self, x) -> bool:
        try:
            return self.a <= x <= self.b
        except Undecided:
            # a bracket straddling an end of the core
            return True

    def iterate(self, x, n: int):
        for _ in range(n):
            x = self.f(x)
        return x

    def orbit(self, x, n: int) -> list:
        out = [x]
        for _ in range(n):
            x = self.f(x)
            out.append(x)
        return out

    @property
    def fa(self):
        return self.f(self.a)

    def hat(self, x):
        raise NotImplementedError

    @property
    def rhat(self):
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError


class TentMap(UnimodalMap):
    """f(x) = t*x on [a, 1/2] and t*(1-x) on [1/2, b]; core [t - t^2/2, t/2]."""

    is_tent = True

    def __init__(self, slope, source: Optional[BinarySeq] = None):
        if isinstance(slope, (int, str)):
            slope = Fraction(slope)
        if not isinstance(slope, (Fraction, FieldElement)):
            raise DomainError(f"unsupported slope type {type(slope).__name__}")
        if isinstance(slope, FieldElement) and slope.is_rational():
            slope = Fraction(slope.coeffs[0], slope.den)
        if not (slope * slope > 2 and slope <= 2):
            raise DomainError(f"tent slope {slope} outside (sqrt 2, 2]")
        self.t = slope
        self.c = HALF
        self.b = slope / 2
        self.a = slope - slope * slope / 2
        self._inv_t = 1 / slope if isinstance(slope, Fraction) else slope.inverse()
        self.source = source
        self._fa = self.f(self.a)
        self._rhat = 1 - self.a

    def f(self, x):
        t = self.t
        return t * x if x <= HALF else t - t * x

    @property
    def fa(self):
        return self._fa

    def left_inv(self, y):
        """Preimage of y in [a, c]."""
        return y * self._inv_t

    def right_inv(self, y):
        """Preimage of y in [c, b]."""
        return 1 - y * self._inv_t

    def hat(self, x):
        if x > self._rhat:
            raise DomainError(f"hat is defined on [a, rhat]; {x} > {self._rhat}")
        return 1 - x

    def mirror(self, x):
        """The other preimage of f(x); defined on the whole core."""
        return 1 - x

    @property
    def rhat(self):
        return self._rhat

    def slope_float(self) -> float:
        return float(self.t)

    def spec(self) -> str:
        if isinstance(self.t, Fraction):
            return f"tent:{self.t}"
        return f"tent:{self.source}" if self.source is not None else f"tent:<{self.t.field.describe()}>"

    def slope_str(self) -> str:
        if isinstance(self.t, Fraction):
            return str(self.t)
        return self.t.field.describe()

    def __repr__(self):
        return f"TentMap({self.slope_str()})"


class QuadraticMap(UnimodalMap):
    """Logistic map mu*x*(1-x) at a rational parameter, iterated on dyadic brackets."""

    exact = False

    def __init__(self, mu, precision: int = 64):
        mu = Fraction(mu)
        if not Fraction(3) < mu <= 4:
            raise DomainError(f"quadratic parameter {mu} outside (3, 4]")
        if precision < 8:
            raise DomainError("precision must be at least 8 bits")
        self.mu = mu
        self.precision = precision
        self.c = HALF
        self.b = mu / 4
        self.a = mu * self.b * (1 - self.b)

    def with_precision(self, precision: int) -> "QuadraticMap":
        return QuadraticMap(self.mu, precision)

    def _exact(self, x: Fraction) -> Fraction:
        return self.mu * x * (1 - x)

    def f(self, x):
        p = self.precision
        if isinstance(x, Dyadic):
            if x.is_point():
                return Dyadic(self._exact(x.lo), prec=p)
            lo, hi = self._exact(x.lo), self._exact(x.hi)
            if x.hi <= HALF:
                return Dyadic(lo, hi, p)
            if x.lo >= HALF:
                return Dyadic(hi, lo, p)
            return Dyadic(min(lo, hi), self.b, p)
        return Dyadic(self._exact(Fraction(x)), prec=p)

    def hat(self, x):
        return 1 - x

    def mirror(self, x):
        return 1 - x

    @property
    def rhat(self):
        return 1 - self.a

    def spec(self) -> str:
        return f"quad:{self.mu}@{self.precision}"

    def __repr__(self):
        return f"QuadraticMap({self.mu}, precision={self.precision})"


# ---------------------------------------------------------------------------
# itineraries and kneading


def symbol_of(m: UnimodalMap, x) -> Optional[str]:
    """'0' left of c, '1' right of c, None at c.  May raise Undecided."""
    if x == m.c:
        return None
    return "0" if x < m.c else "1"


def itinerary(m: UnimodalMap, x, n: int) -> tuple[Word, list[int]]:
    """First n symbols of the itinerary of x; a '0' is written where x hits c."""
    if not m.in_core(x):
        raise DomainError(f"{x} is outside the core")
    syms, amb = [], []
    for k in range(n):
        s = symbol_of(m, x)
        if s is None:
            amb.append(k)
            s = "0"
        syms.append(s)
        x = m.f(x)
    return "".join(syms), amb


def _closure_key(x):
    if isinstance(x, Dyadic):
        return x.lo if x.is_point() else None
    return x


def _kneading_once(m: UnimodalMap, limit: int) -> Kneading:
    seen: dict = {}
    syms: list[str] = []
    x = m.b
    for k in range(limit):
        try:
            s = symbol_of(m, x)
        except Undecided:
            return TruncatedPrefix("".join(syms), undecided=True)
        if s is None:
            # c is periodic: choose the minimal itinerary, an even count of ones
            w = "".join(syms)
            w += "1" if w.count("1") % 2 else "0"
            return BinarySeq("", w)
        key = _closure_key(x)
        if key is not None:
            if key in seen:
                j = seen[key]
                return BinarySeq("".join(syms[:j]), "".join(syms[j:]))
            seen[key] = k
        syms.append(s)
        x = m.f(x)
    return TruncatedPrefix("".join(syms))


def kneading(m: UnimodalMap, pre_cap: int = 1000, per_cap: int = 1000) -> Kneading:
    limit = pre_cap + per_cap
    if m.exact:
        return _kneading_once(m, limit)
    # deepen precision before giving up on an undecided symbol
    best = None
    for scale in (1, 2, 4, 8):
        res = _kneading_once(m.with_precision(m.precision * scale), limit)
        if isinstance(res, BinarySeq) or not res.undecided:
            return res
        if best is None or len(res.word) > len(best.word):
            best = res
    return best


def classify_map(m: UnimodalMap, cap: int = 1000) -> tuple[Kneading, Classification]:
    kap = kneading(m, cap, cap)
    if isinstance(kap, TruncatedPrefix):
        return kap, classify(kap.word)
    return kap, classify(kap, tent=m.is_tent, map_facts=None if m.is_tent else _quadratic_facts(m, kap))


def _quadratic_facts(m: UnimodalMap, kap: BinarySeq):
    # only needed when kap is a left endpoint; the bracket backend cannot
    # certify the count of period-n points, so the left endpoint split is
    # reported through the fn_a_fixed test alone
    from .height import MapFacts, height, lhe

    q = height(kap)
    if not isinstance(q, Fraction) or q in (0, HALF) or kap != lhe(q):
        return None
    fna = m.iterate(m.a, q.denominator)
    return MapFacts(fn_a_fixed=coincide(fna, m.a), lhe_period_n_point_count=1)


# ---------------------------------------------------------------------------
# interval images


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object
    lo_closed: bool = True
    hi_closed: bool = True

    def __str__(self):
        return f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}{']' if self.hi_closed else ')'}"

    def same(self, other: "Interval") -> bool:
        """Equality, exact or within dyadic brackets."""
        if not (coincide(self.lo, other.lo) and coincide(self.hi, other.hi)):
            return False
        bracketed = any(isinstance(v, Dyadic) for v in (self.lo, self.hi, other.lo, other.hi))
        if bracketed:
            return True
        return self.lo_closed == other.lo_closed and self.hi_closed == other.hi_closed


def image(m: UnimodalMap, J: Interval) -> Interval:
    """f(J), exactly, by splitting at the turning point."""
    c = m.c
    if J.hi <= c:
        return Interval(m.f(J.lo), m.f(J.hi), J.lo_closed, J.hi_closed)
    if J.lo >= c:
        return Interval(m.f(J.hi), m.f(J.lo), J.hi_closed, J.lo_closed)
    flo, fhi = m.f(J.lo), m.f(J.hi)
    try:
        if flo < fhi:
            return Interval(flo, m.b, J.lo_closed, True)
        if fhi < flo:
            return Interval(fhi, m.b, J.hi_closed, True)
        return Interval(flo, m.b, J.lo_closed or J.hi_closed, True)
    except Undecided:
        return Interval(lower(flo, fhi), m.b, True, True)


def image_n(m: UnimodalMap, J: Interval, n: int) -> Interval:
    for _ in range(n):
        J = image(m, J)
    return J


def core(m: UnimodalMap) -> Interval:
    return Interval(m.a, m.b)


def eventually_onto_N(m: UnimodalMap, cap: int = 10_000) -> int:
    """Least N with f^N([a, c]) = [a, b]."""
    J = Interval(m.a, m.c)
    target = core(m)
    for N in range(1, cap + 1):
        J = image(m, J)
        if J.same(target):
            return N
    raise DomainError(f"f^N([a,c]) did not cover the core within {cap} steps")


def ell_of(kap: Union[BinarySeq, Word]) -> int:
    """The l in kappa = 10(11)^l 0..."""
    word = kap if isinstance(kap, str) else kap.prefix(kap.transient_length() * 2 + 4)
    if not word.startswith("10"):
        raise DomainError("kneading sequences start with 10")
    run = 0
    for ch in word[2:]:
        if ch != "1":
            break
        run += 1
    else:
        raise DomainError("run of ones not terminated inside the known symbols")
    if run % 2:
        raise DomainError("odd run of ones after 10: not a kneading sequence")
    return run // 2


@dataclass
class TightReport:
    regime: str  # "window" or "outside_window"
    height: Fraction
    n: int
    window_empty_for_tent: Optional[bool]
    N: Optional[int] = None
    theta: object = None
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "regime": self.regime,
            "height": str(self.height),
            "n": self.n,
            "window_empty_for_tent": self.window_empty_for_tent,
            "N": self.N,
            "theta": None if self.theta is None else str(self.theta),
            "checks": dict(self.checks),
            "ok": self.ok,
        }


def _seq_cmp(kap: Kneading, other: BinarySeq) -> Ordering:
    if isinstance(kap, BinarySeq):
        return cmp_unimodal(kap, other)
    res = cmp_prefix(kap.word, other)
    if res is None:
        raise RegimeError(f"prefix {kap.word} too short to compare with {other}")
    return res


def images_of_tight_check(m: UnimodalMap, cap: int = 10_000) -> TightReport:
    kap, cls = classify_map(m)
    if not isinstance(cls.height, Fraction) or cls.height == 0:
        raise RegimeError("images-of-tight check needs a positive rational height")
    q = cls.height
    n = q.denominator
    if cls.leaf == Leaf.LATE:
        raise RegimeError("late endpoint: f^n(a) = a, so [a, f^n(a)) is empty")
    if cls.leaf not in (Leaf.GENERAL, Leaf.NBT):
        raise RegimeError(f"images-of-tight check covers interior maps, not {cls.leaf.value}")
    in_window = _seq_cmp(kap, late(q)) == Ordering.GREATER and _seq_cmp(kap, window_top(q)) != Ordering.GREATER
    report = TightReport(
        regime="window" if in_window else "outside_window",
        height=q,
        n=n,
        window_empty_for_tent=True if m.is_tent else None,
    )
    a = m.a
    fna = m.iterate(a, n)
    if in_window:
        report.theta = fna
        lhs = image_n(m, Interval(a, fna, True, False), n)
        report.checks["f^n([a,f^n(a))) = [a,f^n(a)]"] = lhs.same(Interval(a, fna))
        fa, fn1a = m.f(a), m.f(fna)
        lhs2 = image_n(m, Interval(fa, fn1a), n - 1)
        report.checks["f^(n-1)([f(a),f^(n+1)(a)]) = [a,f^n(a)]"] = lhs2.same(Interval(a, fna))
        if m.is_tent:
            report.checks["tent maps avoid the window"] = False
        return report
    if _seq_cmp(kap, rhe(q)) != Ordering.LESS:
        raise RegimeError("kappa is not below rhe(q)")
    theta = lower(fna, m.mirror(fna))
    report.theta = theta
    J = Interval(a, theta, True, False)
    target = core(m)
    for N in range(1, cap + 1):
        J = image(m, J)
        if J.same(target):
            report.N = N
            break
    report.checks["f^N([a,theta)) = [a,b] for some N"] = report.N is not None
    return report


# ---------------------------------------------------------------------------
# post critically finite tent maps


def _pcf_polynomial(kap: BinarySeq):
    import sympy

    t = sympy.Symbol("t")
    L = kap.transient_length()
    xs = [sympy.Integer(1), t]  # 2*x_k with x_0 = c, x_1 = b
    for i in range(L):
        prev = xs[-1]
        xs.append(sympy.expand(t * prev if kap[i] == 0 else t * (2 - prev)))
    if kap.is_periodic:
        expr = xs[len(kap.per)] - 1
    else:
        r, p = len(kap.pre), len(kap.per)
        expr = xs[r + 1] - xs[r + p + 1]
    return sympy.Poly(expr, t)


def tent_from_kneading(kap: BinarySeq, cap: int = 1000) -> TentMap:
    """The tent map with kneading sequence kap, with an exact algebraic slope."""
    if not is_kneading(kap):
        raise DomainError(f"{kap} is not a kneading sequence")
    poly = _pcf_polynomial(kap)
    sqrt2 = Fraction(99, 70)  # below sqrt 2; candidates are confirmed exactly
    _, factors = poly.factor_list()
    for fac, _mult in factors:
        coeffs = [int(c) for c in reversed(fac.all_coeffs())]
        if coeffs[-1] < 0:
            coeffs = [-c for c in coeffs]
        if coeffs[-1] != 1:
            continue
        for (lo, hi), _k in fac.intervals():
            lo, hi = Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))
            if hi < sqrt2 or lo > 2:
                continue
            if len(coeffs) == 2:
                slope = Fraction(-coeffs[0])
            else:
                if lo == hi:
                    continue
                field = NumberField(coeffs, lo, hi)
                slope = field.gen
            try:
                m = TentMap(slope, source=kap)
            except DomainError:
                continue
            if kneading(m, cap, cap) == kap:
                return m
    raise DomainError(f"no tent map has kneading sequence {kap}")


def tent_approximating(target: Word, bits: int = 96) -> TentMap:
    """Rational-slope tent map whose kneading sequence begins with target.

    Bisection on the slope: kneading sequences increase with the slope in
    the unimodal order.  Raises if the prefix is not matched.
    """
    lo, hi = Fraction(141422, 100000), Fraction(2)
    L = len(target)
    for _ in range(bits):
        mid = (lo + hi) / 2
        m = TentMap(mid)
        w, _ = itinerary(m, m.b, L)
        order = cmp_words_full(w, target)
        if order == 0:
            return TentMap(_short_slope(lo, hi, target))
        if order < 0:
            lo = mid
        else:
            hi = mid
    raise DomainError(f"no slope found matching prefix {target}")


def cmp_words_full(u: Word, v: Word) -> int:
    from .symbolic import cmp_words

    res = cmp_words(u, v)
    return 0 if res is None else int(res)


def _short_slope(lo: Fraction, hi: Fraction, target: Word) -> Fraction:
    # simplest fraction in (lo, hi) that still matches, for smaller numbers
    mid = (lo + hi) / 2
    for den_bits in range(8, 400, 8):
        cand = mid.limit_denominator(1 << den_bits)
        if lo < cand < hi:
            m = TentMap(cand)
            w, _ = itinerary(m, m.b, len(target))
            if w == target:
                return cand
    return mid


def irrational_kneading_prefix(q: float, length: int) -> Word:
    """Prefix of the kneading sequence of irrational height q (the infinite c_q)."""
    from .height import kappa_i

    out = "1"
    i = 1
    while len(out) < length:
        out += "0" * kappa_i(q, i) + "11"
        i += 1
    return out[:length]


# ---------------------------------------------------------------------------
# map specs


def parse_map_spec(text: str) -> UnimodalMap:
    """``tent:9/5``, ``tent:(1001110)``, ``quad:7/2@64``."""
    kind, sep, rest = text.strip().partition(":")
    if not sep or not rest:
        raise ValueError(f"map spec must look like tent:9/5 or quad:7/2@64, got {text!r}")
    kind = kind.lower()
    if kind == "tent":
        if "(" in rest:
            return tent_from_kneading(BinarySeq.parse(rest))
        try:
            slope = Fraction(rest)
        except ValueError as exc:
            raise ValueError(f"bad tent slope {rest!r}") from exc
        return TentMap(slope)
    if kind in ("quad", "quadratic"):
        param, _, prec = rest.partition("@")
        try:
            mu = Fraction(param)
            precision = int(prec) if prec else 64
        except ValueError as exc:
            raise ValueError(f"bad quadratic spec {rest!r}") from exc
        return QuadraticMap(mu, precision)
    raise ValueError(f"unknown map family {kind!r}")


def entropy(m: TentMap) -> float:
    return math.log(float(m.t))
