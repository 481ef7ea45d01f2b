"""pytest fixtures: engine environment isolation and shared models."""

import os

import pytest

from app.domain.generators import gen_pairwise, gen_pigeonhole
from app.domain.models import Model, WeightedClause
from app.infrastructure.logging import reset_logger


@pytest.fixture(autouse=True)
def isolated_engine_env(monkeypatch):
    """Engine settings come only from the test, never from the shell."""
    for key in list(os.environ):
        if key.startswith("LIFTED_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.delenv("ENV_FILE", raising=False)
    monkeypatch.delenv("DOTENV_FILE", raising=False)
    monkeypatch.setenv("LIFTED_LOG", "0")
    reset_logger()
    yield
    reset_logger()


@pytest.fixture
def unit_clause_model() -> Model:
    # P(x0) = 2/3
    return Model(num_vars=1, clauses=(WeightedClause.of(0.6931471805599453, 1),))


@pytest.fixture
def pigeonhole_3_2() -> Model:
    return gen_pigeonhole(3, 2)


@pytest.fixture
def quantum_pigeonhole_3_2() -> Model:
    return gen_pigeonhole(3, 2, hard=False)


@pytest.fixture
def pairwise_5() -> Model:
    return gen_pairwise(5, (0.5, -0.2, 0.5), (0.0, 0.7))
