from functools import lru_cache

import pytest
from hypothesis import settings

from crossed_double.double import build_double
from crossed_double.library import builtin

settings.register_profile("default", deadline=None, max_examples=25)
settings.load_profile("default")


@lru_cache(maxsize=None)
def example(name: str, group: str = None):
    return builtin(name, group=group)


@lru_cache(maxsize=None)
def double_of(name: str, group: str = None):
    H, _ = example(name, group)
    return build_double(H)


@pytest.fixture(scope="session")
def s3_functions():
    return example("function-tcoalg", "S3")[0]


@pytest.fixture(scope="session")
def sweedler_z2():
    return example("sweedler-z2")[0]


@pytest.fixture(scope="session")
def h4_r0():
    return example("sweedler-classical-qt")


@pytest.fixture(scope="session")
def d_s3():
    return double_of("function-tcoalg", "S3")


@pytest.fixture(scope="session")
def d_sweedler():
    return double_of("sweedler-z2")


ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
