from __future__ import annotations

from pathlib import Path

import pytest

from rpolab.terms import Signature

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


@pytest.fixture
def corpus() -> Path:
    return CORPUS


@pytest.fixture
def nat_sig() -> Signature:
    return Signature.of("0/0", "s/1", "ack/2")
