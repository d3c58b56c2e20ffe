import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def gf4():
    from somcodes.galois import FieldCtx

    return FieldCtx(2, 2, [1, 1, 1])


@pytest.fixture(scope="session")
def gf3_5():
    from somcodes.presets import FIELD_PRESETS

    return FIELD_PRESETS["GF3^5"]()


@pytest.fixture(scope="session")
def gf25():
    from somcodes.presets import default_field

    return default_field(5, 2)


def pytest_terminal_summary(terminalreporter):
    # acceptance criteria verdicts collected by test_acceptance.py
    try:
        import test_acceptance
    except ImportError:
        return
    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
