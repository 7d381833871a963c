"""Finite words and eventually periodic binary sequences.

Words are plain ``str`` objects over the alphabet ``"01"``.  A
:class:`BinarySeq` is stored as a preperiod word and a nonempty period word
and is always kept in canonical form (primitive period, shortest preperiod),
so sequence equality is structural equality.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import lcm

from .errors import DomainError

Word = str

_SEQ_RE = re.compile(r"^([01]*)\(([01]+)\)$")


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def check_word(w: str) -> Word:
    if not isinstance(w, str) or any(ch not in "01" for ch in w):
        raise DomainError(f"not a binary word: {w!r}")
    return w


def primitive_root(w: Word) -> Word:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


@dataclass(frozen=True)
class BinarySeq:
    """The infinite word ``pre + per + per + ...``, canonical on construction."""

    pre: Word
    per: Word

    def __post_init__(self):
        check_word(self.pre)
        check_word(self.per)
        if not self.per:
            raise DomainError("period must be nonempty")
        pre, per = self.pre, primitive_root(self.per)
        # absorb trailing preperiod symbols into a rotation of the period
        while pre and pre[-1] == per[-1]:
            pre, per = pre[:-1], per[-1] + per[:-1]
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    @classmethod
    def parse(cls, text: str) -> "BinarySeq":
        text = text.strip()
        bad = set(text) - set("01()")
        if bad:
            raise DomainError(f"illegal characters {''.join(sorted(bad))!r} in sequence {text!r}")
        m = _SEQ_RE.match(text)
        if not m:
            raise DomainError(f"expected PRE(PERIOD), e.g. 10(0110011); got {text!r}")
        return cls(m.group(1), m.group(2))

    def __str__(self) -> str:
        return f"{self.pre}({self.per})"

    def __repr__(self) -> str:
        return f"BinarySeq({str(self)!r})"

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative index")
        if i < len(self.pre):
            return int(self.pre[i])
        return int(self.per[(i - len(self.pre)) % len(self.per)])

    def prefix(self, n: int) -> Word:
        if n <= len(self.pre):
            return self.pre[:n]
        k = n - len(self.pre)
        reps = -(-k // len(self.per))
        return self.pre + (self.per * reps)[:k]

    def shift(self, r: int = 1) -> "BinarySeq":
        return shift(self, r)

    @property
    def is_periodic(self) -> bool:
        return not self.pre

    def transient_length(self) -> int:
        """Number of distinct shifts: preperiod length plus period length."""
        return len(self.pre) + len(self.per)


def canonicalize(pre: Word, per: Word) -> BinarySeq:
    return BinarySeq(pre, per)


def parse_seq(text: str) -> BinarySeq:
    return BinarySeq.parse(text)


def shift(s: BinarySeq, r: int) -> BinarySeq:
    if r < 0:
        raise DomainError("shift amount must be nonnegative")
    if r <= len(s.pre):
        return BinarySeq(s.pre[r:], s.per)
    k = (r - len(s.pre)) % len(s.per)
    return BinarySeq("", s.per[k:] + s.per[:k])


def cmp_unimodal(a: BinarySeq, b: BinarySeq) -> Ordering:
    """Unimodal order: at the first disagreement r, a < b iff a_0+...+a_r is even."""
    if a == b:
        return Ordering.EQUAL
    pa, pb = len(a.per), len(b.per)
    bound = max(len(a.pre), len(b.pre)) + lcm(pa, pb) + max(pa, pb)
    ones = 0
    for i in range(bound):
        x, y = a[i], b[i]
        ones += x
        if x != y:
            return Ordering.LESS if ones % 2 == 0 else Ordering.GREATER
    raise AssertionError("distinct canonical sequences agreed past the comparison bound")


def cmp_words(u: Word, v: Word) -> Ordering | None:
    """Order of any two sequences beginning with u and v, or None if undecided.

    Decided exactly when u and v disagree somewhere inside their common length.
    """
    ones = 0
    for x, y in zip(u, v):
        ones += x == "1"
        if x != y:
            return Ordering.LESS if ones % 2 == 0 else Ordering.GREATER
    return None


def cmp_prefix(w: Word, s: BinarySeq) -> Ordering | None:
    """Compare a sequence known only through its prefix w against s."""
    return cmp_words(w, s.prefix(len(w)))


def is_maximal(s: BinarySeq) -> bool:
    for r in range(1, s.transient_length()):
        if cmp_unimodal(shift(s, r), s) == Ordering.GREATER:
            return False
    return True


def is_kneading(s: BinarySeq) -> bool:
    return s.prefix(2) == "10" and is_maximal(s)


def ones_count(w: Word) -> int:
    return w.count("1")
