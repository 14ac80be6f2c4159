import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from seminf.kernels import backends  # noqa: E402
from seminf.rook import brandt_b21, cn  # noqa: E402


@pytest.fixture(autouse=True, scope="session")
def _cache_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("seminf-cache")
    old = os.environ.get("SEMINF_CACHE_DIR")
    os.environ["SEMINF_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("SEMINF_CACHE_DIR", None)
    else:
        os.environ["SEMINF_CACHE_DIR"] = old


@pytest.fixture(params=sorted(backends()))
def backend(request):
    return backends()[request.param]


@pytest.fixture(scope="session")
def b21_gen():
    return brandt_b21()


@pytest.fixture(scope="session")
def b21(b21_gen):
    return b21_gen.base


@pytest.fixture(scope="session")
def c2_gen():
    return cn(2)


@pytest.fixture(scope="session")
def c3_gen():
    return cn(3)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    def record(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE[number] = line
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
