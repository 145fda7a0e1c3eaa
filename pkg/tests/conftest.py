import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quartics.parser import parse
from quartics.polyring import MPoly

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


def load_poly(name, registry=None):
    text = (DATA / name).read_text()
    return parse(text) if registry is None else parse(text, registry=registry)


@pytest.fixture
def data_poly():
    return load_poly


small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=5),
)


@st.composite
def polys(draw, names=("x", "y", "z"), max_terms=5, max_deg=3):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    p = MPoly.constant(0)
    for _ in range(n):
        c = draw(small_fractions)
        mono = MPoly.constant(c)
        for v in names:
            mono = mono * MPoly.variable(v) ** draw(st.integers(0, max_deg))
        p = p + mono
    return p


@st.composite
def ternary_quartics(draw, max_terms=6):
    """Random homogeneous quartics in x, y, z with small rational coefficients."""
    p = MPoly.constant(0)
    x, y, z = (MPoly.variable(v) for v in "xyz")
    monos = [(i, j, 4 - i - j) for i in range(5) for j in range(5 - i)]
    picks = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms, unique=True))
    for i, j, k in picks:
        c = draw(small_fractions.filter(lambda v: v != 0))
        p = p + c * x**i * y**j * z**k
    return p


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
