import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def gradient(h=64, w=64):
    i, j = np.mgrid[0:h, 0:w]
    return np.round(255.0 * (i + j) / (h + w - 2)).astype(np.uint8)


def checkerboard(h=64, w=64, block=4):
    i, j = np.mgrid[0:h, 0:w]
    return np.where(((i // block) + (j // block)) % 2 == 0, 40, 215).astype(np.uint8)


def constant(h=64, w=64, value=117):
    return np.full((h, w), value, dtype=np.uint8)


FIXTURES = {"gradient": gradient, "checkerboard": checkerboard, "constant": constant}


@pytest.fixture(params=sorted(FIXTURES))
def fixture_image(request):
    return request.param, FIXTURES[request.param]()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def repo_root():
    return Path(__file__).resolve().parent.parent


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        _ACCEPTANCE[number] = (title, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")
