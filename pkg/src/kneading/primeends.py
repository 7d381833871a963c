"""Prime-end census, landing-point prefixes, fiber summaries and pA flags.

The prime-end and fiber reports are read off the classification of the
kneading sequence: the structure of the prime ends of the complement of the
attractor is determined by the type leaf.  The numerical content lives in
:func:`landing_prefix` and :func:`fiber_pair`, which compute exact finite
prefixes of landing points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, NotLanding, RegimeError
from .height import (
    Classification,
    IrrationalApprox,
    Leaf,
    MapFacts,
    classify,
    nbt,
    window_top,
)
from .outside import (
    B,
    B_inverse,
    CirclePoint,
    P_orbit,
    Q_orbit,
    _require_exact,
    in_gamma,
    position,
    upper_pt,
)
from .symbolic import BinarySeq, Ordering, cmp_prefix, cmp_unimodal
from .unimodal import TentMap, TruncatedPrefix, UnimodalMap, classify_map, entropy, kneading
from .unwrap import ThreadPrefix, landing_entries

IRRATIONAL = "irrational"
INTERIOR = "rational_interior"
ENDPOINT = "rational_endpoint"

SECOND, THIRD, FOURTH = "second", "third", "fourth"


def _fmt_height(q) -> object:
    if isinstance(q, Fraction):
        return str(q)
    return {"lower": str(q.lower), "upper": str(q.upper)}


# ---------------------------------------------------------------------------
# prime ends


@dataclass(frozen=True)
class PrincipalSet:
    kind: str  # point | renormalized_inverse_limit | whole_attractor
    period: Optional[int] = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.period is not None:
            d["period"] = self.period
        return d


@dataclass(frozen=True)
class AccessibleSet:
    """How the accessible points of the attractor split up.

    kind is one of countable_arcs_plus_uncountable_points,
    n_immersed_lines, n_immersed_rays, or unstated.
    """

    kind: str
    count: Optional[int] = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "count": self.count}


@dataclass
class PrimeEndReport:
    regime: str
    leaf: Leaf
    rotation: Union[Fraction, IrrationalApprox]
    nontrivial_count: Union[int, str]  # n, or "cantor_set"
    kind: str
    principal_set: PrincipalSet
    impression: str = "whole_attractor"
    accessible: AccessibleSet = field(default_factory=lambda: AccessibleSet("unstated"))
    window: Optional[bool] = None
    others_first_kind: bool = True

    def to_dict(self) -> dict:
        return {
            "regime": self.regime,
            "leaf": self.leaf.value,
            "rotation": _fmt_height(self.rotation),
            "nontrivial_count": self.nontrivial_count,
            "kind": self.kind,
            "principal_set": self.principal_set.to_dict(),
            "impression": self.impression,
            "accessible_components": self.accessible.to_dict(),
            "window": self.window,
            "others_first_kind": self.others_first_kind,
        }


def _classification(source, facts: Optional[MapFacts]) -> Classification:
    if isinstance(source, UnimodalMap):
        kap, cls = classify_map(source)
        return cls
    if isinstance(source, Classification):
        return source
    if isinstance(source, str):
        source = BinarySeq.parse(source)
    if isinstance(source, TruncatedPrefix):
        return classify(source.word)
    return classify(source, map_facts=facts)


def _kneading_of(source):
    """The kneading sequence, or the word of a truncated prefix, or None."""
    if isinstance(source, UnimodalMap):
        kap = kneading(source)
        return kap if isinstance(kap, BinarySeq) else kap.word
    if isinstance(source, TruncatedPrefix):
        return source.word
    if isinstance(source, str):
        return BinarySeq.parse(source)
    if isinstance(source, BinarySeq):
        return source
    return None


def window_test(kappa: BinarySeq, q) -> bool:
    """Whether kappa sits at or below w_q 0 (w_q 1)^inf, the renormalization window."""
    q = Fraction(q)
    cls = classify(kappa)
    if cls.kind != INTERIOR:
        raise RegimeError(f"{kappa} is of type {cls.leaf.value}, not rational interior")
    if cls.height != q:
        raise RegimeError(f"{kappa} has height {cls.height}, not {q}")
    return cmp_unimodal(kappa, window_top(q)) != Ordering.GREATER


def prime_end_report(source, facts: Optional[MapFacts] = None) -> PrimeEndReport:
    """Prime-end census for a map, a kneading sequence, or a classification.

    A bare sequence that is a left endpoint needs ``facts`` to settle the
    early/strict split; a map supplies them itself.
    """
    cls = _classification(source, facts)
    q = cls.height
    if cls.kind == IRRATIONAL:
        return PrimeEndReport(
            regime=IRRATIONAL,
            leaf=cls.leaf,
            rotation=q,
            nontrivial_count="cantor_set",
            kind=SECOND,
            principal_set=PrincipalSet("point"),
            accessible=AccessibleSet("countable_arcs_plus_uncountable_points"),
        )
    n = q.denominator
    if cls.kind == ENDPOINT:
        acc = AccessibleSet("n_immersed_rays", n) if cls.leaf == Leaf.EARLY else AccessibleSet("unstated", n)
        return PrimeEndReport(
            regime=ENDPOINT,
            leaf=cls.leaf,
            rotation=q,
            nontrivial_count=n,
            kind=SECOND,
            principal_set=PrincipalSet("point"),
            accessible=acc,
        )
    kap = _kneading_of(source)
    if kap is None:
        raise RegimeError("the window test needs the kneading sequence, not only its classification")
    if isinstance(kap, BinarySeq):
        inside = window_test(kap, q)
    else:
        # a prefix that never closed: its order against the window top is
        # decided as soon as the two disagree
        order = cmp_prefix(kap, window_top(q))
        if order is None:
            raise RegimeError("prefix too short to place the sequence against the window")
        inside = order != Ordering.GREATER
    return PrimeEndReport(
        regime=INTERIOR,
        leaf=cls.leaf,
        rotation=q,
        nontrivial_count=n,
        kind=FOURTH if inside else THIRD,
        principal_set=PrincipalSet("renormalized_inverse_limit", n) if inside else PrincipalSet("whole_attractor"),
        accessible=AccessibleSet("n_immersed_lines", n),
        window=inside,
    )


def summary_matches(r: PrimeEndReport) -> list[str]:
    """Regimes whose summary statement the report satisfies.

    Each regime is tested independently from the report fields alone, so a
    consistent report matches exactly one.
    """
    out = []
    common = r.impression == "whole_attractor" and r.others_first_kind
    if (
        common
        and r.nontrivial_count == "cantor_set"
        and r.kind == SECOND
        and isinstance(r.rotation, IrrationalApprox)
    ):
        out.append(IRRATIONAL)
    rational = isinstance(r.rotation, Fraction) and r.nontrivial_count == getattr(r.rotation, "denominator", None)
    if (
        common
        and rational
        and 0 < r.rotation < Fraction(1, 2)
        and (
            (r.kind == FOURTH and r.principal_set == PrincipalSet("renormalized_inverse_limit", r.nontrivial_count))
            or (r.kind == THIRD and r.principal_set.kind == "whole_attractor")
        )
    ):
        out.append(INTERIOR)
    if common and rational and 0 <= r.rotation < Fraction(1, 2) and r.kind == SECOND:
        out.append(ENDPOINT)
    return out


# ---------------------------------------------------------------------------
# landing points


@dataclass(frozen=True)
class TThread:
    """t(y, k, i) = B^(kn+i) of the thread (q_0, y, B^-1(y), ...), y in gamma."""

    y: CirclePoint
    k: int
    i: int


@dataclass(frozen=True)
class QThread:
    i: int


@dataclass(frozen=True)
class PThread:
    i: int


ThreadSpec = Union[TThread, QThread, PThread]


def _rational_tent(m: UnimodalMap) -> Classification:
    _require_exact(m)
    _kap, cls = classify_map(m)
    if not cls.is_rational:
        raise RegimeError("landing prefixes are indexed by (y, k, i) only for rational height")
    if cls.kind == ENDPOINT and cls.leaf not in (Leaf.RIGHT_ENDPOINT, Leaf.STRICT_TENT_LIKE):
        raise RegimeError(f"no landing prefixes for type {cls.leaf.value}")
    return cls


def hat_point(m: UnimodalMap, y: CirclePoint) -> CirclePoint:
    """The symmetric partner of y in gamma: same image under f after projection."""
    if not in_gamma(m, y):
        raise DomainError(f"{y} is not in gamma")
    return upper_pt(m, m.hat(y.x))


def q_points(m: UnimodalMap, n: int) -> list[CirclePoint]:
    return Q_orbit(m, n)


def p_points(m: TentMap, q: Fraction) -> list[CirclePoint]:
    """p_0, ..., p_{n-1} with p_0 the point of P just counterclockwise of q_0."""
    n = q.denominator
    Q = q_points(m, n)
    P = P_orbit(m, q)
    L = 2 * (m.b - m.a)
    j = pow(q.numerator, -1, n) if n > 1 else 0

    def ccw(p):
        d = position(m, p) - position(m, Q[0])
        return d + L if d < 0 else d

    stop = ccw(Q[j]) if j else L
    first = [p for p in P if 0 < ccw(p) < stop]
    if len(first) != 1:
        raise DomainError("could not place p_0 between q_0 and its ccw neighbour")
    p0 = first[0]
    out = [p0]
    for _ in range(n - 1):
        out.append(B(m, out[-1]))
    return out


def t_thread(m: UnimodalMap, y: CirclePoint, k: int, i: int, depth: int) -> tuple[ThreadPrefix, int]:
    """Prefix of t(y, k, i) long enough for ``depth`` landing entries, and its level."""
    cls = _rational_tent(m)
    n = cls.n
    if k < 0 or not 0 <= i < n:
        raise DomainError(f"need k >= 0 and 0 <= i < {n}")
    if not in_gamma(m, y):
        raise DomainError(f"{y} is not in gamma")
    Q = q_points(m, n)
    if cls.kind == INTERIOR and y == Q[-1]:
        raise DomainError("y = q_{n-1} is excluded: that thread is in the periodic orbit")
    head = [Q[(i - j) % n] for j in range(i + 1)]
    head += [Q[n - 1 - j] for _ in range(k) for j in range(n)]
    N = k * n + i + 1
    tail = [y]
    # y's backward orbit; B_inverse raises AmbiguousPreimage at B(a)
    while N + len(tail) - 1 < max(depth, N + 1):
        tail.append(B_inverse(m, tail[-1]))
    return ThreadPrefix(m, head + tail), N


def landing_prefix(m: UnimodalMap, spec: ThreadSpec, depth: int) -> list:
    """The first ``depth`` entries of the landing point of a thread, exactly."""
    if depth < 1:
        raise DomainError("depth must be positive")
    cls = _rational_tent(m)
    n = cls.n
    if isinstance(spec, TThread):
        thread, N = t_thread(m, spec.y, spec.k, spec.i, depth)
        return landing_entries(m, thread, N, depth)
    if isinstance(spec, QThread):
        if not 0 <= spec.i < n:
            raise DomainError(f"need 0 <= i < {n}")
        if cls.kind == INTERIOR:
            raise NotLanding("the rays of the periodic threads q_i do not land in the interior case")
        Q = q_points(m, n)
        return [Q[(spec.i - j) % n].x for j in range(depth)]
    if isinstance(spec, PThread):
        if not 0 <= spec.i < n:
            raise DomainError(f"need 0 <= i < {n}")
        if cls.kind != INTERIOR:
            raise RegimeError("the orbit P exists only in the rational interior case")
        P = p_points(m, cls.height)
        return [P[(spec.i - j) % n].x for j in range(depth)]
    raise DomainError(f"unknown thread spec {spec!r}")


def fiber_pair(m: UnimodalMap, y: CirclePoint, k: int, i: int, depth: int) -> tuple[list, list]:
    """Landing prefixes of t(y, k, i) and t(hat y, k, i), a generic 2-point fiber."""
    a = landing_prefix(m, TThread(y, k, i), depth)
    b = landing_prefix(m, TThread(hat_point(m, y), k, i), depth)
    return a, b


# ---------------------------------------------------------------------------
# fibers of the semi-conjugacy


@dataclass(frozen=True)
class ExceptionalFiber:
    kind: str  # cantor_set | countable_or_interval_union | finite
    size: Optional[int] = None
    description: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "size": self.size, "description": self.description}


@dataclass
class FiberReport:
    clause: str
    exceptional: ExceptionalFiber
    accessible_sizes: frozenset
    three_point_fibers: str  # none | countably_many
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "clause": self.clause,
            "exceptional_fiber": self.exceptional.to_dict(),
            "accessible_fiber_sizes": sorted(self.accessible_sizes),
            "three_point_fibers": self.three_point_fibers,
            "notes": list(self.notes),
        }


COMMON_NOTES = [
    "non-trivial fibers consist of accessible points",
    "all but countably many trivial fibers are inaccessible",
]


def fiber_report(source, facts: Optional[MapFacts] = None) -> FiberReport:
    cls = _classification(source, facts)
    leaf = cls.leaf
    notes = list(COMMON_NOTES)
    if leaf == Leaf.IRRATIONAL:
        ex = ExceptionalFiber("cantor_set", None, "landing image of the Cantor set of threads never falling into gamma")
        return FiberReport("a", ex, frozenset({1, 2}), "none", notes + ["exceptional fiber is infinite"])
    n = cls.n
    if leaf == Leaf.EARLY:
        ex = ExceptionalFiber(
            "countable_or_interval_union",
            None,
            "countably many disjoint intervals, possibly with finitely many isolated points added",
        )
        return FiberReport("b", ex, frozenset({1, 2}), "none", notes + ["exceptional fiber is infinite"])
    if leaf in (Leaf.RIGHT_ENDPOINT, Leaf.STRICT_TENT_LIKE):
        ex = ExceptionalFiber("countable_or_interval_union", None, "countably infinite")
        return FiberReport("c", ex, frozenset({1, 2}), "none", notes + ["exceptional fiber is infinite"])
    if leaf == Leaf.STRICT_QUADRATIC_LIKE:
        ex = ExceptionalFiber(
            "countable_or_interval_union", None, f"{n} disjoint compact intervals together with countably many points"
        )
        return FiberReport("d", ex, frozenset({1, 2}), "none", notes + ["exceptional fiber is infinite"])
    ex = ExceptionalFiber("finite", n, f"landing points of the period-{n} orbit P")
    if leaf in (Leaf.GENERAL, Leaf.LATE):
        return FiberReport("e", ex, frozenset({1, 2, 3}), "countably_many", notes + ["all fibers are finite"])
    if leaf == Leaf.NBT:
        return FiberReport("f", ex, frozenset({2}), "none", notes + ["all fibers are finite"])
    raise DomainError(f"no fiber description for {leaf.value}")


# ---------------------------------------------------------------------------
# pseudo-Anosov flags


@dataclass
class PAFlags:
    post_critically_finite: bool
    generalized_pA: bool
    pA: bool
    entropy: float
    undecided_pcf: bool = False

    def to_dict(self) -> dict:
        return {
            "post_critically_finite": self.post_critically_finite,
            "generalized_pA": self.generalized_pA,
            "pA": self.pA,
            "entropy": self.entropy,
            "undecided_pcf": self.undecided_pcf,
        }


def pa_flags(m: UnimodalMap, cap: int = 1000) -> PAFlags:
    if not isinstance(m, TentMap):
        raise DomainError("pA flags need a tent map")
    kap = kneading(m, cap, cap)
    h = entropy(m)
    if isinstance(kap, TruncatedPrefix):
        return PAFlags(False, False, False, h, undecided_pcf=True)
    gpa = m.t * m.t > 2
    cls = classify(kap, tent=True)
    q = cls.height
    pa = isinstance(q, Fraction) and q > 0 and kap == nbt(q)
    return PAFlags(True, bool(gpa), bool(pa), h)
