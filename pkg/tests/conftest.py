from __future__ import annotations

from pathlib import Path

import pytest

from folspace.logic import Vocabulary
from folspace.models import enumerate_models

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

P = Vocabulary.of(P=1)
PQ = Vocabulary.of(P=1, Q=1)
LT = Vocabulary((("<", 2),))

_MODELS: dict = {}


def small_models(vocab: Vocabulary, n: int = 3):
    key = (vocab, n)
    if key not in _MODELS:
        _MODELS[key] = tuple(enumerate_models(vocab, n))
    return _MODELS[key]


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


# Acceptance lines are collected here and printed after the run.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")


def delta(bits: str, vocab: Vocabulary = P, r: int = 1):
    """The constituent with the given bit string (rank 1 by default)."""
    from folspace.geometry import bits_to_constituent

    return bits_to_constituent(bits, vocab, r)
