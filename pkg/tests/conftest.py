import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parents[1]
ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption(
        "--paper-snapshot",
        default=str(ROOT / "data" / "paper"),
        help="directory holding canonical publications.csv/scholars.csv converted from the published dataset",
    )


@pytest.fixture(scope="session")
def paper_snapshot(request) -> Path:
    return Path(request.config.getoption("--paper-snapshot"))


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL/SKIP line for an acceptance criterion."""
    name = request.node.get_closest_marker("criterion").args[0]
    yield name
    rep = getattr(request.node, "rep_call", None)
    if rep is None or rep.skipped:
        status = "SKIP"
    else:
        status = "PASS" if rep.passed else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] {name}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
