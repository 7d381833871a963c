"""Height words, the height of a kneading sequence and the type taxonomy."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor
from numbers import Real
from typing import Optional, Union

from .errors import ConventionError, DomainError
from .symbolic import (
    BinarySeq,
    Ordering,
    Word,
    cmp_prefix,
    cmp_unimodal,
    is_kneading,
)

HALF = Fraction(1, 2)
BOTTOM = BinarySeq("1", "0")  # 1(0)^inf, height 0
TOP = BinarySeq("10", "1")  # 10(1)^inf


@dataclass(frozen=True)
class IrrationalApprox:
    """Height known only to lie in the open interval (lower, upper)."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("IrrationalApprox needs lower < upper")

    def __str__(self):
        return f"({self.lower}, {self.upper})"

    def contains(self, q: Fraction) -> bool:
        return self.lower < q < self.upper


Height = Union[Fraction, IrrationalApprox]


def as_height(q) -> Fraction:
    q = Fraction(q)
    if not 0 <= q <= HALF:
        raise DomainError(f"height {q} outside [0, 1/2]")
    return q


def kappa_i(q, i: int) -> int:
    """Length of the i-th block of zeros in c_q."""
    if i < 1:
        raise DomainError("index i starts at 1")
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
        if not 0 < q <= HALF:
            raise DomainError(f"q = {q} outside (0, 1/2]")
        if i > q.numerator:
            raise DomainError(f"i = {i} exceeds m = {q.numerator}")
        fl = lambda j: (j * q.denominator) // q.numerator  # noqa: E731
    elif isinstance(q, Real):
        if not 0 < q <= 0.5:
            raise DomainError(f"q = {q} outside (0, 1/2]")
        fl = lambda j: floor(j / q)  # noqa: E731
    else:
        raise DomainError(f"unsupported height type {type(q).__name__}")
    if i == 1:
        return fl(1) - 1
    return fl(i) - fl(i - 1) - 2


@lru_cache(maxsize=4096)
def word_cq(q: Fraction) -> Word:
    q = Fraction(q)
    if not 0 < q <= HALF:
        raise DomainError(f"c_q needs q in (0, 1/2], got {q}")
    m = q.numerator
    blocks = ["0" * kappa_i(q, i) for i in range(1, m + 1)]
    return "1" + "11".join(blocks) + "1"


def _interior_q(q) -> Fraction:
    q = Fraction(q)
    if not 0 < q < HALF:
        raise DomainError(f"need q in (0, 1/2), got {q}")
    return q


def word_wq(q: Fraction) -> Word:
    return word_cq(_interior_q(q))[:-2]


def word_hwq(q: Fraction) -> Word:
    return word_wq(q)[::-1]


def lhe(q) -> BinarySeq:
    q = Fraction(q)
    if q == 0:
        return BOTTOM
    return BinarySeq("", word_wq(q) + "1")


def rhe(q) -> BinarySeq:
    q = Fraction(q)
    if q == 0:
        raise DomainError("rhe(0) is undefined")
    return BinarySeq("10", word_hwq(q) + "1")


def nbt(q) -> BinarySeq:
    return BinarySeq("", word_cq(_interior_q(q)) + "0")


def late(q) -> BinarySeq:
    """(w_q 0)^inf, the late left endpoint sequence."""
    return BinarySeq("", word_wq(q) + "0")


def window_top(q) -> BinarySeq:
    """w_q 0 (w_q 1)^inf, the upper end of the renormalization window."""
    w = word_wq(q)
    return BinarySeq(w + "0", w + "1")


def _sb_children(lo: Fraction, hi: Fraction) -> Fraction:
    return Fraction(lo.numerator + hi.numerator, lo.denominator + hi.denominator)


def height(nu: BinarySeq, cap: int = 10_000) -> Height:
    """Height of a kneading sequence by Stern-Brocot descent on (0, 1/2)."""
    if not is_kneading(nu):
        raise DomainError(f"{nu} is not a kneading sequence")
    if nu == BOTTOM:
        return Fraction(0)
    if cmp_unimodal(nu, TOP) != Ordering.GREATER:
        return HALF
    lo, hi = Fraction(0), HALF
    while True:
        q = _sb_children(lo, hi)
        if q.denominator > cap:
            return IrrationalApprox(lo, hi)
        if cmp_unimodal(lhe(q), nu) != Ordering.GREATER and cmp_unimodal(nu, rhe(q)) != Ordering.GREATER:
            return q
        # q -> nbt(q) is strictly decreasing, and so is the height
        if cmp_unimodal(nbt(q), nu) == Ordering.LESS:
            hi = q
        else:
            lo = q


def height_of_prefix(w: Word, cap: int = 10_000) -> Height:
    """Height of any kneading sequence that begins with the finite word w.

    Returns an exact rational when the prefix already forces strict
    membership in one height interval; otherwise the Stern-Brocot bracket
    reached before the prefix ran out (or the cap was hit).
    """
    if not w.startswith("10"):
        raise DomainError("kneading prefixes start with 10")
    top = cmp_prefix(w, TOP)
    if top is None or top == Ordering.LESS:
        raise DomainError("prefix does not settle the entropy convention")
    lo, hi = Fraction(0), HALF
    while True:
        q = _sb_children(lo, hi)
        if q.denominator > cap:
            return IrrationalApprox(lo, hi)
        left = cmp_prefix(w, lhe(q))
        right = cmp_prefix(w, rhe(q))
        if left == Ordering.GREATER and right == Ordering.LESS:
            return q
        if left == Ordering.LESS:
            lo = q
        elif right == Ordering.GREATER:
            hi = q
        else:
            return IrrationalApprox(lo, hi)


class Leaf(str, enum.Enum):
    IRRATIONAL = "irrational"
    GENERAL = "rational_general"
    NBT = "rational_nbt"
    RIGHT_ENDPOINT = "right_endpoint"
    EARLY = "early_left_endpoint"
    STRICT_TENT_LIKE = "strict_tent_like_left_endpoint"
    STRICT_QUADRATIC_LIKE = "strict_quadratic_like_left_endpoint"
    LATE = "late_left_endpoint"


ENDPOINT_LEAVES = frozenset(
    {Leaf.RIGHT_ENDPOINT, Leaf.EARLY, Leaf.STRICT_TENT_LIKE, Leaf.STRICT_QUADRATIC_LIKE, Leaf.LATE}
)
NORMAL_LEAVES = frozenset({Leaf.RIGHT_ENDPOINT, Leaf.STRICT_TENT_LIKE})
TENT_LEAVES = frozenset(
    {Leaf.IRRATIONAL, Leaf.GENERAL, Leaf.NBT, Leaf.RIGHT_ENDPOINT, Leaf.STRICT_TENT_LIKE}
)


@dataclass(frozen=True)
class MapFacts:
    """Facts about f needed to split the left endpoint case.

    fn_a_fixed: whether f^n(a) = a.
    lhe_period_n_point_count: number of period-n points with itinerary lhe.
    """

    fn_a_fixed: bool
    lhe_period_n_point_count: int = 1


TENT_FACTS = MapFacts(fn_a_fixed=True, lhe_period_n_point_count=1)


@dataclass(frozen=True)
class Classification:
    height: Height
    leaf: Leaf
    from_prefix: bool = False

    @property
    def kind(self) -> str:
        if self.leaf == Leaf.IRRATIONAL:
            return "irrational"
        if self.leaf in (Leaf.GENERAL, Leaf.NBT):
            return "rational_interior"
        return "rational_endpoint"

    @property
    def nbt(self) -> Optional[bool]:
        if self.kind != "rational_interior":
            return None
        return self.leaf == Leaf.NBT

    @property
    def side(self) -> Optional[str]:
        if self.kind != "rational_endpoint":
            return None
        return "right" if self.leaf == Leaf.RIGHT_ENDPOINT else "left"

    @property
    def left_sub(self) -> Optional[str]:
        if self.side != "left":
            return None
        return {
            Leaf.EARLY: "early",
            Leaf.STRICT_TENT_LIKE: "strict_tent_like",
            Leaf.STRICT_QUADRATIC_LIKE: "strict_quadratic_like",
            Leaf.LATE: "late",
        }[self.leaf]

    @property
    def is_rational(self) -> bool:
        return isinstance(self.height, Fraction)

    @property
    def n(self) -> int:
        """Denominator of a rational height (1 for height 0)."""
        if not self.is_rational:
            raise DomainError("irrational height has no period")
        return self.height.denominator

    def to_dict(self) -> dict:
        h = self.height
        return {
            "height": str(h) if isinstance(h, Fraction) else {"lower": str(h.lower), "upper": str(h.upper)},
            "kind": self.kind,
            "leaf": self.leaf.value,
            "nbt": self.nbt,
            "side": self.side,
            "left_sub": self.left_sub,
            "from_prefix": self.from_prefix,
        }


def classify(
    nu: Union[BinarySeq, Word],
    map_facts: Optional[MapFacts] = None,
    tent: bool = False,
    cap: int = 10_000,
) -> Classification:
    """Place a kneading sequence (or a finite prefix of one) in the type tree.

    ``tent=True`` declares a tent-map source: the left endpoint is then
    strict and tent-like without further facts, and leaves that tent maps
    cannot realize are rejected.
    """
    if isinstance(nu, str):
        return _classify_prefix(nu, cap)
    if not is_kneading(nu):
        raise DomainError(f"{nu} is not a kneading sequence")
    q = height(nu, cap)
    if isinstance(q, IrrationalApprox):
        return Classification(q, Leaf.IRRATIONAL)
    if q == HALF:
        raise ConventionError("height 1/2 violates entropy convention")
    if q == 0:
        return Classification(q, Leaf.STRICT_TENT_LIKE)
    if nu == rhe(q):
        return Classification(q, Leaf.RIGHT_ENDPOINT)
    if nu == lhe(q):
        facts = TENT_FACTS if tent else map_facts
        if facts is None:
            raise DomainError(f"{nu} = lhe({q}): map facts are needed to split the left endpoint case")
        if not facts.fn_a_fixed:
            leaf = Leaf.EARLY
        elif facts.lhe_period_n_point_count == 1:
            leaf = Leaf.STRICT_TENT_LIKE
        elif facts.lhe_period_n_point_count == 2:
            leaf = Leaf.STRICT_QUADRATIC_LIKE
        else:
            raise DomainError("lhe_period_n_point_count must be 1 or 2")
        if tent and leaf not in TENT_LEAVES:
            raise DomainError(f"tent maps are never of type {leaf.value}")
        return Classification(q, leaf)
    if nu == late(q):
        if tent:
            raise DomainError(f"tent maps are never of type {Leaf.LATE.value}")
        return Classification(q, Leaf.LATE)
    if nu == nbt(q):
        return Classification(q, Leaf.NBT)
    return Classification(q, Leaf.GENERAL)


def _classify_prefix(w: Word, cap: int) -> Classification:
    # a prefix that never closed cannot equal any eventually periodic
    # endpoint or NBT sequence, so a decided rational height is general type
    q = height_of_prefix(w, cap)
    if isinstance(q, IrrationalApprox):
        return Classification(q, Leaf.IRRATIONAL, from_prefix=True)
    return Classification(q, Leaf.GENERAL, from_prefix=True)


def farey(nmax: int, lo: Fraction = Fraction(0), hi: Fraction = HALF) -> list[Fraction]:
    """Farey fractions in [lo, hi] with denominator at most nmax, increasing."""
    out = sorted(
        {Fraction(p, d) for d in range(1, nmax + 1) for p in range(0, d + 1) if lo <= Fraction(p, d) <= hi}
    )
    return out
