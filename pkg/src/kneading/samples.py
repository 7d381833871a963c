"""Deterministic families of test maps.

Post critically finite tent maps are enumerated from their kneading
sequences: every admissible sequence with short preperiod and period that a
tent map of height below 1/2 realizes.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import DomainError
from .height import Leaf, classify
from .symbolic import BinarySeq, is_kneading
from .unimodal import TentMap, tent_from_kneading


def kneading_candidates(max_pre: int = 3, max_per: int = 8) -> list[BinarySeq]:
    seqs = set()
    for lp in range(max_pre + 1):
        for lq in range(1, max_per + 1):
            for pre in itertools.product("01", repeat=lp):
                for per in itertools.product("01", repeat=lq):
                    s = BinarySeq("".join(pre), "".join(per))
                    if is_kneading(s):
                        seqs.add(s)
    return sorted(seqs, key=str)


@lru_cache(maxsize=None)
def pcf_tent_maps(max_pre: int = 3, max_per: int = 8) -> tuple[TentMap, ...]:
    """Every tent map whose kneading sequence fits the size bounds, sorted by sequence."""
    out = []
    for s in kneading_candidates(max_pre, max_per):
        try:
            classify(s, tent=True)
            out.append(tent_from_kneading(s))
        except DomainError:
            continue
    return tuple(out)


def sample_tent_maps(count: int = 60, max_pre: int = 3, max_per: int = 8) -> list[TentMap]:
    """An evenly spread subset of :func:`pcf_tent_maps`, always keeping every
    endpoint and NBT map."""
    maps = pcf_tent_maps(max_pre, max_per)
    special, general = [], []
    for m in maps:
        leaf = classify(m.source, tent=True).leaf
        (general if leaf == Leaf.GENERAL else special).append(m)
    k = max(0, count - len(special))
    if k >= len(general):
        picked = general
    else:
        step = len(general) / k if k else 0
        picked = [general[int(j * step)] for j in range(k)]
    return special + picked
