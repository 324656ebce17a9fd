import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DEFAULT_SUMMEVAL = Path(__file__).resolve().parents[1] / "data" / "summeval" / "model_annotations.aligned.paired.jsonl"

ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption(
        "--summeval",
        action="store",
        default=None,
        help="SummEval annotation JSONL (paired layout) for the published-table checks",
    )


@pytest.fixture(scope="session")
def summeval_path(request):
    opt = request.config.getoption("--summeval")
    path = Path(opt) if opt else DEFAULT_SUMMEVAL
    if not path.exists():
        pytest.skip(f"SummEval annotations not found at {path}")
    return path


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
