import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hopforge.localfield import LocalScalar

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example])
settings.register_profile(
    "ci", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PRIMES = (2, 3, 5)


@st.composite
def polys(draw, p, max_len=4, nonzero=False):
    c = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=max_len))
    if nonzero and not any(c):
        c[draw(st.integers(0, len(c) - 1))] = draw(st.integers(1, p - 1))
    return tuple(c)


@st.composite
def scalars(draw, p, shift=3, rational=True, nonzero=False):
    """Random element of F_p(t): polynomial / (t^k * small polynomial)."""
    num = draw(polys(p, nonzero=nonzero))
    den = draw(polys(p, max_len=3, nonzero=True)) if rational else (1,)
    k = draw(st.integers(-shift, shift))
    x = LocalScalar.make(p, num, den) * LocalScalar.t_power(p, k)
    return x


@st.composite
def laurent(draw, p, lo=-3, hi=3, support=4):
    """Laurent polynomial with at most ``support`` terms."""
    terms = draw(st.dictionaries(st.integers(lo, hi), st.integers(1, p - 1), max_size=support))
    x = LocalScalar.from_int(p, 0)
    for k, c in terms.items():
        x = x + LocalScalar.t_power(p, k) * c
    return x




# -- acceptance reporting: one line per criterion ------------------------------

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        num, title = mark.args
        detail = dict(item.user_properties).get("detail", "")
        _CRITERIA[num] = ("PASS" if rep.passed else "FAIL", title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, title, detail = _CRITERIA[num]
        line = f"criterion {num:>2}: {status}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
