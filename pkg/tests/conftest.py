from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lgs.algebra import linear_choice  # noqa: E402
from lgs.graph import CandidateSubgraph, HostGraph  # noqa: E402

FIXTURES = Path(__file__).parent.parent / "fixtures"

# filled in by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}: {detail}")


def fig2_host() -> HostGraph:
    return HostGraph.from_edges([("x", "a", "z"), ("z", "a", "y"), ("y", "b", "x")])


def fig2_guest():
    g = HostGraph.from_edges([("u", "a", "u"), ("u", "a", "m"), ("m", "b", "v")])
    return linear_choice(g, must=["m"])


def fig2_witness() -> CandidateSubgraph:
    return CandidateSubgraph(
        {("u", "x"), ("u", "z"), ("m", "y"), ("v", "x")},
        {(("u", "x"), "a", ("u", "z")), (("u", "z"), "a", ("m", "y")), (("m", "y"), "b", ("v", "x"))},
    )


@pytest.fixture
def fig2():
    return fig2_guest(), fig2_host(), fig2_witness()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
