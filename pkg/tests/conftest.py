import os
import tempfile

import pytest
from hypothesis import settings

# Keep basis-matrix cache files out of the user's home directory.
_CACHE = tempfile.mkdtemp(prefix="qsym-test-cache-")
os.environ["QSYM_CACHE_DIR"] = _CACHE
os.environ.pop("QSYM_MAX_S_WEIGHT", None)

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


@pytest.fixture
def cache_dir():
    return _CACHE
