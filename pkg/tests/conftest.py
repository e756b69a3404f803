import os
import sys
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))

from lemmapat import read_conllu  # noqa: E402


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def fixture_corpus():
    return read_conllu(DATA / "fixture.conllu")


def edt_path(split):
    """Path of an EDT v2.10 split, or None when the treebank is not installed."""
    root = os.environ.get("LEMMAPAT_DATA_DIR")
    if not root:
        return None
    for name in (f"et_edt-ud-{split}.conllu", f"UD_Estonian-EDT/et_edt-ud-{split}.conllu"):
        p = Path(root) / name
        if p.exists():
            return p
    return None


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
