import functools

import pytest
from hypothesis import HealthCheck, settings

from hopfsquare import examples, groups

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@functools.lru_cache(maxsize=None)
def corpus_square(kind: str, **params):
    return examples.gen_example(kind, **params)


@functools.lru_cache(maxsize=None)
def c3_in_s3_square():
    return examples.gen_example("xmod-square", xmod="c3_s3")


@pytest.fixture(scope="session")
def klein_group_square():
    return groups.normal_pair_square(groups.klein(), [0, 1], [0, 2])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
