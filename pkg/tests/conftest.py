import os

import pytest

# criterion number -> CriterionResult, filled in by test_acceptance
CRITERIA_RESULTS = {}


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run the slow acceptance tier")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: slow acceptance tier (--slow or KITTAB_SLOW=1)")


def slow_enabled(config) -> bool:
    return config.getoption("--slow") or os.environ.get("KITTAB_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if slow_enabled(config):
        return
    skip = pytest.mark.skip(reason="slow tier: pass --slow or set KITTAB_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA_RESULTS):
        terminalreporter.write_line(CRITERIA_RESULTS[n].line())
