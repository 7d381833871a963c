import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kneading.samples import pcf_tent_maps, sample_tent_maps
from kneading.symbolic import BinarySeq
from kneading.unimodal import TentMap, tent_from_kneading

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


words = st.text(alphabet="01", max_size=6)
periods = st.text(alphabet="01", min_size=1, max_size=6)


@st.composite
def binary_seqs(draw):
    return BinarySeq(draw(words), draw(periods))


# slopes strictly between sqrt 2 and 2
rational_slopes = st.fractions(min_value=Fraction(1415, 1000), max_value=Fraction(2), max_denominator=200).filter(
    lambda t: t * t > 2
)


@pytest.fixture(scope="session")
def pcf_maps():
    return pcf_tent_maps()


@pytest.fixture(scope="session")
def sample_maps():
    return sample_tent_maps(60)


@pytest.fixture(scope="session")
def fig1_map():
    return tent_from_kneading(BinarySeq.parse("(1001110)"))


@pytest.fixture(scope="session")
def tent95():
    return TentMap(Fraction(9, 5))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", {})
    keys = sorted(k for k in lines if isinstance(k, int))
    if not keys:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in keys:
        terminalreporter.write_line(lines[k])
