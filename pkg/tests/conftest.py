"""Pytest configuration and fixtures."""

import shutil
import tempfile
from pathlib import Path

import pytest

from supermagic.lib.config import EngineConfig, configure, make_config
from supermagic.lib.exact_linalg import PrimeField


@pytest.fixture(autouse=True)
def default_session():
    """Every test starts in the default p = 3 session."""
    configure(EngineConfig(workers=1))
    yield
    configure(EngineConfig(workers=1))


@pytest.fixture
def temp_dir():
    """Create a temporary directory for testing."""
    temp_path = tempfile.mkdtemp()
    yield Path(temp_path)
    shutil.rmtree(temp_path)


@pytest.fixture(scope="session")
def field3():
    """GF(3), where the superalgebras exist."""
    return PrimeField(3)


@pytest.fixture(scope="session")
def field5():
    """GF(5), where only the even algebras exist."""
    return PrimeField(5)


@pytest.fixture
def engine_config():
    """A single-worker configuration with a small sample budget."""
    return make_config(p=3, seed=7, jacobi_samples=2_000, workers=1)


@pytest.fixture
def engine_config5():
    """The same configuration over GF(5)."""
    return make_config(p=5, seed=7, jacobi_samples=2_000, workers=1)
