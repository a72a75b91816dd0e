from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings

from vpoly.multigraph import WeightedMultigraph
from vpoly.weights import SemigroupWeight

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "vpoly" / "fixtures"


def Z(n: int) -> SemigroupWeight:
    return SemigroupWeight.integer(n)


def build(weights, pairs) -> WeightedMultigraph:
    """Graph on ``v1..vn`` with the given integer weights and edges ``e1..em``."""
    return WeightedMultigraph.from_lists(
        [(f"v{i}", Z(w) if isinstance(w, int) else w) for i, w in enumerate(weights, 1)],
        [(f"e{i}", u, v) for i, (u, v) in enumerate(pairs, 1)],
    )


def triangle(weights=(1, 1, 1)) -> WeightedMultigraph:
    return build(weights, [("v1", "v2"), ("v2", "v3"), ("v1", "v3")])


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


# one summary line per acceptance criterion
_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _CRITERIA[name] = ("PASS" if report.outcome == "passed" else "FAIL", report.nodeid)


def pytest_collection_modifyitems(items):
    for item in items:
        if "test_acceptance.py::test_criterion_" in item.nodeid and item.function.__doc__:
            item.user_properties.append(("title", item.function.__doc__.strip().splitlines()[0]))
            _TITLES[item.nodeid.split("::")[-1]] = item.function.__doc__.strip().splitlines()[0]


_TITLES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[2])):
        status, _ = _CRITERIA[name]
        terminalreporter.write_line(f"{status}  {_TITLES.get(name, name)}")
