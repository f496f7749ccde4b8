import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="run the long c=10 integral-relation verification cases",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip_slow = pytest.mark.skip(reason="slow case; enable with --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
