""" Shared fixtures """

from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(20190101)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def coinmetrics_body() -> bytes:
    return (FIXTURES / "coinmetrics_btc_price.json").read_bytes()
