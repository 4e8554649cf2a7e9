from __future__ import annotations

from pathlib import Path

import pytest

from orbits.dllite import prepare
from orbits.formats import parse_kb, parse_queries
from orbits.oracle import kb_corpus

ROOT = Path(__file__).resolve().parent.parent
DOCS = ROOT / "docs"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


def load_doc_kb(name: str):
    return prepare(parse_kb((DOCS / name).read_text()))


def doc_query(kb, name: str):
    return parse_queries((DOCS / name).read_text(), kb.individuals())[0]


@pytest.fixture(scope="session")
def zoo():
    return load_doc_kb("zoo.okb")


@pytest.fixture(scope="session")
def small_corpus():
    """A quick slice of the seeded corpus for unit-level property checks."""
    return [prepare(kb) for kb in kb_corpus(120, seed=7)]
