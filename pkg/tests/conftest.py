import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


@pytest.fixture(scope="session")
def bs21():
    from hadamard_forge import enumerate_bs

    return enumerate_bs(2, 1)


@pytest.fixture(scope="session")
def bs32():
    from hadamard_forge import enumerate_bs

    return enumerate_bs(3, 2)


@pytest.fixture(scope="session")
def table2_matrices():
    from hadamard_forge import gs_assemble, hex_decode, load_table

    return [gs_assemble(hex_decode(x)) for x in load_table(2)]


@pytest.fixture(scope="session")
def full_run(tmp_path_factory):
    """One complete run of every pipeline, shared by the acceptance tests.

    Set HADAMARD_FORGE_STORE to reuse a persistent store between sessions.
    """
    from hadamard_forge.equiv import ClassStore
    from hadamard_forge.pipelines import run_full

    path = os.environ.get("HADAMARD_FORGE_STORE") or tmp_path_factory.mktemp("store") / "classes.jsonl"
    store = ClassStore(path)
    report = run_full(store)
    return report, store


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
