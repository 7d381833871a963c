"""Kneading theory of unimodal maps, their outside circle maps, and the
prime ends and pictures of the associated sphere attractors."""

from .errors import (
    AmbiguousPreimage,
    ConventionError,
    DomainError,
    NotLanding,
    PrefixTooShort,
    RegimeError,
    Undecided,
)
from .height import (
    Classification,
    IrrationalApprox,
    Leaf,
    MapFacts,
    classify,
    height,
    lhe,
    nbt,
    rhe,
    word_cq,
    word_hwq,
    word_wq,
)
from .symbolic import BinarySeq, Ordering, cmp_unimodal, is_kneading
from .unimodal import QuadraticMap, TentMap, kneading, parse_map_spec, tent_from_kneading

__version__ = "0.1.0"

__all__ = [
    "AmbiguousPreimage",
    "BinarySeq",
    "Classification",
    "ConventionError",
    "DomainError",
    "IrrationalApprox",
    "Leaf",
    "MapFacts",
    "NotLanding",
    "Ordering",
    "PrefixTooShort",
    "QuadraticMap",
    "RegimeError",
    "TentMap",
    "Undecided",
    "classify",
    "cmp_unimodal",
    "height",
    "is_kneading",
    "kneading",
    "lhe",
    "nbt",
    "parse_map_spec",
    "rhe",
    "tent_from_kneading",
    "word_cq",
    "word_hwq",
    "word_wq",
]
