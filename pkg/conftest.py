#--------------------------------------------------------------------------------------------------#
# conftest.py                                                                                      #
#--------------------------------------------------------------------------------------------------#
# pytest setup: repo root on sys.path, --runslow for the long training runs, logging per test      #
#--------------------------------------------------------------------------------------------------#
from pathlib import Path
import sys

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from xube import logs  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long training runs (enable with --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def log_to_stderr():
    # CLI runs rebind the log stream to their own captured stderr
    logs.configure(None, sys.stderr)
