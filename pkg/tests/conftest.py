import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from netgram.formats import parse_document, parse_network
from netgram.netmodel import Network

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "netgram", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("netgram")


def load_net(name: str) -> Network:
    return parse_network((DATA / name).read_text())


def load_doc(name: str):
    return parse_document((DATA / name).read_text())


@pytest.fixture
def n_edge() -> Network:
    return load_net("n_edge.net")


@pytest.fixture
def n_sigma() -> Network:
    return load_net("n_sigma.net")


@pytest.fixture
def n_empty() -> Network:
    return load_net("n_empty.net")


@pytest.fixture
def n_edge2() -> Network:
    return load_net("n_edge2.net")


# -- acceptance bookkeeping -------------------------------------------------------------------

SESSION_START = time.monotonic()
ACCEPTANCE: list[tuple[str, bool, str]] = []
LAST = "test_criterion_9_suite_time"


def record(criterion: str, ok: bool, detail: str) -> None:
    """Log one acceptance line, then fail the calling test if ``ok`` is false."""
    ACCEPTANCE.append((criterion, bool(ok), detail))
    assert ok, f"{criterion}: {detail}"


def pytest_collection_modifyitems(items):
    items.sort(key=lambda item: item.name == LAST)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")
