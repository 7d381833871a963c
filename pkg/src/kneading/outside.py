"""The outside circle map B on the doubled interval S.

S is two copies of the core [a, b] glued at their ends.  A point is a core
coordinate and a side; a and b carry no side (they are stored as lower).
Going counterclockwise, the lower copy runs from a to b and the upper copy
back from b to a, so S unrolls to [0, 2(b - a)).

All functions here need an exact backend (tent maps).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import AmbiguousPreimage, DomainError
from .height import (
    Classification,
    Leaf,
    NORMAL_LEAVES,
    lhe,
    rhe,
    word_wq,
)
from .symbolic import BinarySeq, Word
from .unimodal import TentMap, UnimodalMap, classify_map, itinerary


@dataclass(frozen=True)
class CirclePoint:
    x: object
    upper: bool = False

    @property
    def side(self) -> str:
        return "upper" if self.upper else "lower"

    def __str__(self):
        return f"{self.x}_{'u' if self.upper else 'l'}"


@dataclass(frozen=True)
class Infinity:
    """No entry into gamma within ``cap`` iterations."""

    cap: int

    def __str__(self):
        return f"inf(>{self.cap})"


@dataclass(frozen=True)
class Estimate:
    value: Fraction
    lower: Fraction
    upper: Fraction

    def __str__(self):
        return f"{self.value} in [{self.lower}, {self.upper}]"

    def contains(self, q) -> bool:
        return self.lower <= q <= self.upper


def _require_exact(m: UnimodalMap) -> None:
    if not m.exact:
        raise DomainError("the outside map needs an exact backend (tent map)")


def point(m: UnimodalMap, x, upper: bool = False) -> CirclePoint:
    """A point of S with the identifications at a and b applied."""
    if not m.a <= x <= m.b:
        raise DomainError(f"{x} is outside the core")
    if upper and (x == m.a or x == m.b):
        upper = False
    return CirclePoint(x, upper)


def upper_pt(m: UnimodalMap, x) -> CirclePoint:
    return point(m, x, True)


def lower_pt(m: UnimodalMap, x) -> CirclePoint:
    return point(m, x, False)


def tau(p: CirclePoint):
    return p.x


def B(m: UnimodalMap, p: CirclePoint) -> CirclePoint:
    x = p.x
    if not p.upper:
        fx = m.f(x)
        return point(m, fx, upper=x > m.c)
    if x >= m.rhat:
        return point(m, m.f(x), False)
    return point(m, m.fa, False)


def B_iter(m: UnimodalMap, p: CirclePoint, n: int) -> CirclePoint:
    for _ in range(n):
        p = B(m, p)
    return p


def in_gamma(m: UnimodalMap, p: CirclePoint) -> bool:
    """gamma = [rhat_u, a]: the upper points over [a, rhat], plus a."""
    if p.x == m.a:
        return True
    return p.upper and p.x <= m.rhat


def in_gamma_open(m: UnimodalMap, p: CirclePoint) -> bool:
    return p.upper and m.a < p.x < m.rhat


def strictly_upper(p: CirclePoint) -> bool:
    return p.upper


def position(m: UnimodalMap, p: CirclePoint):
    """Unrolled coordinate in [0, 2(b - a)): lower copy first."""
    if p.upper:
        return (m.b - m.a) + (m.b - p.x)
    return p.x - m.a


def in_upper_half(m: UnimodalMap, p: CirclePoint) -> bool:
    """Membership of the half-open arc [b, a), which includes b."""
    return p.upper or p.x == m.b


def B_inverse(m: TentMap, p: CirclePoint) -> CirclePoint:
    """The unique preimage of p, defined off B(a)."""
    fa = m.fa
    if not p.upper:
        if p.x == fa:
            raise AmbiguousPreimage(f"{p} = B(a) has the whole arc gamma as preimage")
        if p.x > fa:
            return point(m, m.left_inv(p.x), False)
        return point(m, m.right_inv(p.x), True)
    return point(m, m.right_inv(p.x), False)


def orbit(m: UnimodalMap, p: CirclePoint, n: int) -> list[CirclePoint]:
    out = [p]
    for _ in range(n):
        p = B(m, p)
        out.append(p)
    return out


def N_f(m: UnimodalMap, cap: int = 10_000) -> Union[int, Infinity]:
    _require_exact(m)
    p = point(m, m.a)
    for r in range(1, cap + 1):
        p = B(m, p)
        if in_gamma(m, p):
            return r
    return Infinity(cap)


def J_set(kappa: BinarySeq, rmax: int) -> set[int]:
    """r <= rmax with sigma^(r-2k-1)(kappa) = 0 1^(2k+1) sigma^(r+1)(kappa) for some k."""
    out = set()
    for r in range(1, rmax + 1):
        for k in range(0, (r - 1) // 2 + 1):
            start = r - (2 * k + 1)
            if kappa[start] == 0 and all(kappa[j] == 1 for j in range(start + 1, r + 1)):
                out.add(r)
                break
    return out


def rotation_number(m: UnimodalMap, cap: int = 10_000) -> Union[Fraction, Estimate]:
    _require_exact(m)
    start = B(m, point(m, m.a))
    seen: dict = {}
    pts: list[CirclePoint] = []
    p = start
    for k in range(cap):
        if p in seen:
            cycle = pts[seen[p]:]
            ups = sum(1 for y in cycle if in_upper_half(m, y))
            return Fraction(ups, len(cycle))
        seen[p] = k
        pts.append(p)
        p = B(m, p)
    # lift displacement: every step taken from the upper half advances by one turn
    turns = sum(1 for y in pts if in_upper_half(m, y))
    L = 2 * (m.b - m.a)
    disp = turns + Fraction(0) + _frac_of(position(m, p) - position(m, start), L)
    value = disp / cap
    return Estimate(value, (disp - 1) / cap, (disp + 1) / cap)


def _frac_of(num, L) -> Fraction:
    v = num / L
    if isinstance(v, Fraction):
        return v
    return Fraction(float(v)).limit_denominator(10**12)


def periodic_point_with_itinerary(m: TentMap, W: Word):
    """The point x with itinerary W^inf, solving the affine fixed point equation."""
    t = m.t
    A, Bc = 1, 0
    for s in W:
        if s == "0":
            A, Bc = t * A, t * Bc
        else:
            A, Bc = -t * A, t - t * Bc
    x = Bc / (1 - A)
    if not m.a <= x <= m.b:
        raise DomainError(f"no core point has itinerary ({W})^inf")
    w, amb = itinerary(m, x, len(W))
    if w != W or amb or m.iterate(x, len(W)) != x:
        raise DomainError(f"no core point has itinerary ({W})^inf")
    return x


# ---------------------------------------------------------------------------
# Theorem-style verification battery


@dataclass
class Clause:
    name: str
    status: str  # pass | fail | n/a | spot-checked
    detail: str = ""


@dataclass
class OutsideCheckReport:
    spec: str
    kneading: str
    classification: Classification
    clauses: list[Clause] = field(default_factory=list)
    certificate: Optional[list[str]] = None

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.clauses)

    def add(self, name: str, ok: Optional[bool], detail: str = "") -> None:
        status = "n/a" if ok is None else ("pass" if ok else "fail")
        self.clauses.append(Clause(name, status, detail))

    def to_dict(self) -> dict:
        return {
            "map": self.spec,
            "kneading": self.kneading,
            "classification": self.classification.to_dict(),
            "clauses": [{"clause": c.name, "status": c.status, "detail": c.detail} for c in self.clauses],
            "certificate": self.certificate,
            "ok": self.ok,
        }


def first_critical_hit(m: UnimodalMap, limit: int) -> Optional[int]:
    """Least i >= 1 with f^i(a) = c, if at most limit."""
    x = m.a
    for i in range(1, limit + 1):
        x = m.f(x)
        if x == m.c:
            return i
    return None


def upper_side_agreement(m: UnimodalMap, kappa: BinarySeq, rmax: int) -> tuple[bool, list[int]]:
    """Check B^r(a) upper iff r in J for 1 <= r <= rmax; returns (ok, mismatches)."""
    J = J_set(kappa, rmax)
    p = point(m, m.a)
    bad = []
    for r in range(1, rmax + 1):
        p = B(m, p)
        if strictly_upper(p) != (r in J):
            bad.append(r)
    return not bad, bad


def j_equivalence_range(m: UnimodalMap, nf: Union[int, Infinity], cap: int) -> int:
    """Largest r for which the side bookkeeping identity applies.

    The identity needs f^i(a) != c for 1 <= i < r, and r <= N(f).
    """
    top = nf if isinstance(nf, int) else cap
    hit = first_critical_hit(m, top)
    return top if hit is None else min(top, hit)


def epsilon_net(m: UnimodalMap, size: int) -> list[CirclePoint]:
    """Evenly spaced rational points of S, half on each copy."""
    half = max(1, size // 2)
    a, b = m.a, m.b
    pts = []
    for k in range(1, half + 1):
        s = Fraction(2 * k - 1, 2 * half)
        x = a + (b - a) * s
        pts.append(point(m, x, False))
        pts.append(point(m, x, True))
    return pts


def falls_within(m: UnimodalMap, p: CirclePoint, cap: int) -> Optional[int]:
    for r in range(cap + 1):
        if in_gamma(m, p):
            return r
        p = B(m, p)
    return None


def verify_thm414(m: UnimodalMap, cap: int = 10_000, net: int = 0, net_cap: int = 200) -> OutsideCheckReport:
    """Run every clause of the outside-dynamics theorem that applies to m.

    ``net`` > 0 adds the finite-net spot checks of the non-falling set.
    """
    _require_exact(m)
    kap, cls = classify_map(m, min(cap, 1000))
    report = OutsideCheckReport(m.spec(), str(kap), cls)
    q = cls.height
    rho = rotation_number(m, cap)
    nf = N_f(m, cap)

    if isinstance(q, Fraction):
        report.add("(a) rotation number equals height", rho == q, f"rho={rho}, q={q}")
    else:
        ok = isinstance(rho, Estimate) and rho.lower <= q.upper and q.lower <= rho.upper
        report.clauses.append(Clause("(a) rotation number equals height", "spot-checked" if ok else "fail", f"rho={rho}, q in {q}"))

    if isinstance(kap, BinarySeq):
        rmax = j_equivalence_range(m, nf, cap)
        ok, bad = upper_side_agreement(m, kap, rmax)
        report.add("(eq) B^r(a) upper iff r in J", ok, f"checked 1..{rmax}" + (f", mismatches {bad[:5]}" if bad else ""))
        if not ok:
            report.certificate = [str(p) for p in orbit(m, point(m, m.a), rmax)]
        ups = sum(1 for p in orbit(m, point(m, m.a), rmax)[1:] if strictly_upper(p))
        nJ = len(J_set(kap, rmax))
        report.add("(count) upper visits up to N match |J|", ups == nJ, f"N={rmax}: {ups} upper, |J|={nJ}")
    else:
        rmax = j_equivalence_range(m, nf, cap)
        kap_seq_ok, bad = _upper_side_prefix(m, kap.word, rmax)
        report.add("(eq) B^r(a) upper iff r in J", kap_seq_ok, f"checked 1..{rmax} on prefix")

    if not isinstance(q, Fraction):
        report.add("(d)(i) N(f) infinite", isinstance(nf, Infinity), f"N(f)={nf}")
        if net:
            _spot_density(m, report, net, net_cap)
        return report

    n = q.denominator
    early = cls.leaf == Leaf.EARLY
    if early:
        report.add("(c) N(f) infinite", isinstance(nf, Infinity), f"N(f)={nf}")
        return report
    report.add("(b)(i) N(f) = n", nf == n, f"N(f)={nf}, n={n}")
    bn = B_iter(m, point(m, m.a), n)
    is_lhe = isinstance(kap, BinarySeq) and kap == lhe(q)
    is_rhe = isinstance(kap, BinarySeq) and q != 0 and kap == rhe(q)
    report.add("(b)(ii) B^n(a) = a iff kappa = lhe", (bn == point(m, m.a)) == is_lhe, f"B^n(a)={bn}")
    report.add(
        "(b)(ii) B^n(a) = rhat_u iff kappa = rhe",
        (bn == point(m, m.rhat, True)) == is_rhe,
        f"B^n(a)={bn}",
    )
    if cls.leaf in NORMAL_LEAVES:
        if net:
            pts = epsilon_net(m, net)
            stuck = [p for p in pts if falls_within(m, p, net_cap) is None]
            report.clauses.append(
                Clause(
                    "(b)(iii) no orbit avoids gamma",
                    "spot-checked" if not stuck else "fail",
                    f"{len(pts)} net points, {len(stuck)} did not fall within {net_cap}",
                )
            )
        return report
    if cls.leaf in (Leaf.GENERAL, Leaf.NBT) and isinstance(m, TentMap):
        _check_P_orbit(m, report, q)
    return report


def _upper_side_prefix(m, word: Word, rmax: int):
    # J membership at r reads kappa up to index r
    rmax = min(rmax, len(word) - 1)
    J = set()
    for r in range(1, rmax + 1):
        for k in range(0, (r - 1) // 2 + 1):
            start = r - (2 * k + 1)
            if word[start] == "0" and all(word[j] == "1" for j in range(start + 1, r + 1)):
                J.add(r)
                break
    p = point(m, m.a)
    bad = []
    for r in range(1, rmax + 1):
        p = B(m, p)
        if strictly_upper(p) != (r in J):
            bad.append(r)
    return not bad, bad


def P_orbit(m: TentMap, q: Fraction) -> list[CirclePoint]:
    """Orbit of the upper point over the period-n point of itinerary (w_q 1)^inf."""
    W = word_wq(q) + "1"
    x = periodic_point_with_itinerary(m, W)
    return orbit(m, point(m, x, True), len(W) - 1)


def Q_orbit(m: UnimodalMap, n: int) -> list[CirclePoint]:
    """q_i = B^(i+1)(a) for 0 <= i < n."""
    return orbit(m, B(m, point(m, m.a)), n - 1)


def _check_P_orbit(m: TentMap, report: OutsideCheckReport, q: Fraction) -> None:
    n = q.denominator
    try:
        P = P_orbit(m, q)
    except DomainError as exc:
        report.add("(b)(iii) period-n orbit P exists", False, str(exc))
        return
    closes = B(m, P[-1]) == P[0] and len(set(P)) == n
    avoids = not any(in_gamma(m, p) for p in P)
    Q = Q_orbit(m, n)
    q_closes = B(m, Q[-1]) == Q[0] and len(set(Q)) == n
    disjoint = not set(P) & set(Q)
    report.add("(b)(iii) P has period n and avoids gamma", closes and avoids, f"P={[str(p) for p in P]}")
    report.add("(b)(iii) Q = orbit of B(a) has period n", q_closes, "")
    report.add("(b)(iii) P and Q are distinct orbits", disjoint, "")
    rho_p = Fraction(sum(1 for p in P if in_upper_half(m, p)), n)
    report.add("(b)(iii) P rotates like Q", rho_p == q, f"rho(P)={rho_p}")


def _spot_density(m, report: OutsideCheckReport, net: int, net_cap: int) -> None:
    pts = epsilon_net(m, net)
    stuck = [p for p in pts if falls_within(m, p, net_cap) is None]
    report.clauses.append(
        Clause(
            "(d)(ii) net points fall into gamma",
            "spot-checked" if not stuck else "fail",
            f"{len(pts)} net points, {len(stuck)} stayed out for {net_cap} steps",
        )
    )
