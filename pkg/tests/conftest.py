import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from elpbank.corpus import builtin

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def corpus_pairs():
    """Every synthesized bank pair in the corpus, keyed by a short label."""
    out = {}
    for name in ("haar", "example3", "example2"):
        entry = builtin(name)
        out[name] = entry.synthesize()
        if entry.sos:
            out[name + "-tight"] = entry.synthesize_tight()
    out["example1"] = builtin("example1", "1/2").synthesize()
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def _eig_ok(m):
    return abs(round(np.linalg.det(m))) >= 2 and np.min(np.abs(np.linalg.eigvals(np.array(m, dtype=float)))) > 1 + 1e-6


# random expanding 2x2 integer matrices with |det| <= 8
expanding_2x2 = (
    st.lists(st.integers(-3, 3), min_size=4, max_size=4)
    .map(lambda v: [[v[0], v[1]], [v[2], v[3]]])
    .filter(lambda m: _eig_ok(m) and abs(round(np.linalg.det(m))) <= 8)
)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under its number."""
    number = request.node.get_closest_marker("criterion").args[0]
    info = {"detail": ""}
    yield info
    rep = getattr(request.node, "rep_call", None)
    passed = rep is not None and rep.passed
    ACCEPTANCE[number] = (passed, info["detail"])


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}")
