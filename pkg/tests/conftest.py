import json
import sys
from pathlib import Path

import pytest

from minsing.graph import from_edges, validate_graph

DATA = Path(__file__).parent / "data"


@pytest.fixture
def fig1():
    return validate_graph(json.loads((DATA / "fig1.json").read_text()))


def chain(*weights):
    ids = [f"v{i + 1}" for i in range(len(weights))]
    return from_edges(dict(zip(ids, weights)), zip(ids, ids[1:]))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[n])
