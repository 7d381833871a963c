"""Sphere coordinates, the unwrapping fbar and its smash H, and thread entries.

A point of the sphere T is written (y, s) with y on the circle S and s in
[0, 1].  All of S x {0} is the single point at the boundary, and at s = 1 the
two sides are glued so that (x_u, 1) = (x_l, 1) = x, a point of the core.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable, Optional, Sequence

from .errors import DomainError, PrefixTooShort
from .outside import B, B_inverse, CirclePoint, _require_exact, in_gamma, in_gamma_open, point
from .unimodal import UnimodalMap

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SpherePoint:
    y: CirclePoint
    s: object

    def __str__(self):
        if self.s == 1:
            return f"I:{self.y.x}"
        return f"({self.y}, {self.s})"


def sphere_point(m: UnimodalMap, y: CirclePoint, s) -> SpherePoint:
    """Build (y, s) with the identifications at s = 0 and s = 1 applied."""
    if not 0 <= s <= 1:
        raise DomainError(f"s = {s} outside [0, 1]")
    if s == 0:
        return SpherePoint(point(m, m.a), Fraction(0))
    if s == 1:
        return SpherePoint(point(m, y.x), Fraction(1))
    return SpherePoint(y, s)


def on_interval(m: UnimodalMap, x) -> SpherePoint:
    return sphere_point(m, point(m, x), 1)


def phi(m: UnimodalMap, s):
    if not HALF <= s <= 1:
        raise DomainError(f"phi needs s in [1/2, 1], got {s}")
    fa = m.fa
    return fa + (2 * s - 1) * (m.b - fa)


def phi_inv(m: UnimodalMap, x):
    fa = m.fa
    if not fa <= x <= m.b:
        raise DomainError(f"phi_inv needs x in [f(a), b], got {x}")
    return HALF + (x - fa) / (2 * (m.b - fa))


def u_of_y(m: UnimodalMap, y: CirclePoint):
    if in_gamma(m, y):
        return 2 * phi_inv(m, m.f(y.x)) - 1
    return Fraction(0)


def region(m: UnimodalMap, y: CirclePoint) -> str:
    """Which of the arc cases U2..U5 applies to y; the earlier one wins at seams."""
    x = y.x
    if (not y.upper and x >= m.c) or (y.upper and x >= m.rhat):
        return "U2"
    if y.upper and x >= m.c:
        return "U3"
    if y.upper or x == m.a:
        return "U4"
    return "U5"


def barf(m: UnimodalMap, p: SpherePoint) -> SpherePoint:
    """The unwrapping of f on T."""
    _require_exact(m)
    y, s = p.y, p.s
    if s <= HALF:
        return sphere_point(m, B(m, y), s)
    case = region(m, y)
    if case == "U2":
        return sphere_point(m, B(m, y), s)
    if case in ("U3", "U4"):
        fy = m.f(y.x)
        knee = phi_inv(m, fy)
        if s <= knee:
            return sphere_point(m, point(m, phi(m, s)), s)
        if case == "U3":
            return sphere_point(m, point(m, fy), s)
        return sphere_point(m, point(m, fy), knee)
    by = B(m, y)
    knee = phi_inv(m, by.x)
    if s <= knee:
        return sphere_point(m, by, s)
    return sphere_point(m, by, knee)


def smash(m: UnimodalMap, p: SpherePoint) -> SpherePoint:
    if p.s <= HALF:
        return sphere_point(m, p.y, 2 * p.s)
    return sphere_point(m, p.y, 1)


def H(m: UnimodalMap, p: SpherePoint) -> SpherePoint:
    return smash(m, barf(m, p))


def H_core(m: UnimodalMap, y: CirclePoint, v):
    """H(y, v) for v in [1/2, 1]; always a point of the core."""
    q = H(m, sphere_point(m, y, v))
    if q.s != 1:
        raise AssertionError("H(y, v) with v >= 1/2 left the interval")
    return q.y.x


def lemma47(m: UnimodalMap, y: CirclePoint, v):
    """The closed form of H(y, v), v in [1/2, 1), through the function u."""
    u = 2 * v - 1
    if u >= u_of_y(m, y):
        return m.f(y.x)
    return phi(m, v)


def split_s(s) -> tuple[int, object]:
    """s -> (t, v) with t the integer part and v = (u + 1)/2, u the fractional part."""
    if s < 0:
        raise DomainError("s must be nonnegative")
    t = floor(float(s))
    # float rounding can be off by one near an integer; settle it exactly
    while t > s:
        t -= 1
    while t + 1 <= s:
        t += 1
    return t, (s - t + 1) / 2


# ---------------------------------------------------------------------------
# Threads of the circle


class ThreadPrefix:
    """Entries y_0, ..., y_K of a thread of B, with B(y_{i+1}) = y_i."""

    def __init__(self, m: UnimodalMap, entries: Sequence[CirclePoint]):
        entries = list(entries)
        if len(entries) < 2:
            raise DomainError("a thread prefix needs at least two entries")
        for i in range(len(entries) - 1):
            if B(m, entries[i + 1]) != entries[i]:
                raise DomainError(f"entries {i} and {i + 1} are not compatible")
        self.m = m
        self.entries = entries

    @property
    def K(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, i: int) -> CirclePoint:
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    @classmethod
    def from_tail(cls, m: UnimodalMap, tail: CirclePoint, K: int) -> "ThreadPrefix":
        """The prefix ending at y_K = tail, read off its forward orbit."""
        pts = [tail]
        for _ in range(K):
            pts.append(B(m, pts[-1]))
        return cls(m, pts[::-1])

    @classmethod
    def backward(
        cls,
        m: UnimodalMap,
        y0: CirclePoint,
        K: int,
        choose: Optional[Callable[[int], CirclePoint]] = None,
    ) -> "ThreadPrefix":
        """Follow B^-1 from y0; ``choose(i)`` supplies y_i where B^-1 is not unique."""
        pts = [y0]
        fa = point(m, m.fa)
        for i in range(1, K + 1):
            if pts[-1] == fa:
                if choose is None:
                    raise DomainError(f"entry {i - 1} is B(a); a choice in gamma is needed")
                nxt = choose(i)
                if not in_gamma(m, nxt):
                    raise DomainError("the chosen preimage of B(a) must lie in gamma")
            else:
                nxt = B_inverse(m, pts[-1])
            pts.append(nxt)
        return cls(m, pts)

    def shifted(self) -> "ThreadPrefix":
        """The prefix of the natural extension image (B(y_0), y_0, y_1, ...)."""
        return ThreadPrefix(self.m, [B(self.m, self.entries[0])] + self.entries)

    def landing_level(self) -> Optional[int]:
        """Least N with y_i outside the open arc for N < i <= K."""
        N = self.K
        while N > 0 and not in_gamma_open(self.m, self.entries[N]):
            N -= 1
        return N


def psi_entry(m: UnimodalMap, thread: ThreadPrefix, s, r: int):
    """Entry r of the thread Psi(y, s), for s >= 1 and 0 <= r <= t - 1."""
    t, v = split_s(s)
    if t < 1:
        raise DomainError("psi_entry needs s >= 1")
    if not 0 <= r <= t - 1:
        raise DomainError(f"entry {r} is not on the interval part (t = {t})")
    if t > thread.K:
        raise PrefixTooShort(f"s = {s} needs {t + 1} thread entries, have {len(thread)}")
    return m.iterate(H_core(m, thread[t], v), t - 1 - r)


def landing_entries(m: UnimodalMap, thread: ThreadPrefix, N: int, depth: int) -> list:
    """The first ``depth`` entries of the landing point of a level-N thread."""
    head = m.orbit(thread[N].x, N)[::-1]
    tail = [thread[i].x for i in range(N + 1, thread.K + 1)]
    out = head + tail
    if len(out) < depth:
        raise PrefixTooShort("thread prefix too short for the requested depth")
    return out[:depth]
