from pathlib import Path

import pytest

from mscopt.corpus_io import read_cluster, read_stopwords

DATA = Path(__file__).parent / "data"
PACKAGE_DATA = Path(__file__).parent.parent / "src" / "mscopt" / "data"

_CRITERIA: list[str] = []


@pytest.fixture(scope="session")
def stopwords():
    return read_stopwords(PACKAGE_DATA / "stopwords.pt.txt")


@pytest.fixture(scope="session")
def turtle(stopwords):
    return read_cluster(PACKAGE_DATA / "turtle.txt", stopwords)


@pytest.fixture(scope="session")
def corpus_dir():
    return DATA / "corpus"


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""
    def record(name: str, passed: bool, detail: str = ""):
        _CRITERIA.append(f"[{'PASS' if passed else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
