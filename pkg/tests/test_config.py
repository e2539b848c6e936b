"""
Tests for environment configuration.
"""
import pytest

from config import DEFAULT_BUDGET, ElementBudget, Settings
from errors import ConfigError


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("SCG_BUDGET", "SCG_SEARCH_BOUND", "SCG_SEED", "SCG_METHOD", "SCG_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    settings = Settings.from_env()
    assert settings == Settings()
    assert settings.method == "recursive"
    assert settings.element_budget().max_elements == DEFAULT_BUDGET
    assert settings.validate() == []


def test_environment_values(clean_env):
    clean_env.setenv("SCG_BUDGET", "1_000")
    clean_env.setenv("SCG_SEED", "7")
    clean_env.setenv("SCG_METHOD", " Exhaustive ")
    clean_env.setenv("SCG_LOG_LEVEL", "debug")
    settings = Settings.from_env()
    assert (settings.budget, settings.seed, settings.method, settings.log_level) == (1000, 7, "exhaustive", "DEBUG")


@pytest.mark.parametrize("name,value", [
    ("SCG_BUDGET", "lots"),
    ("SCG_METHOD", "guess"),
    ("SCG_LOG_LEVEL", "chatty"),
])
def test_invalid_values(clean_env, name, value):
    clean_env.setenv(name, value)
    with pytest.raises(ConfigError, match=name):
        Settings.from_env()


def test_override_keeps_unset_fields():
    settings = Settings(seed=3).override(budget=50, method="exhaustive")
    assert (settings.budget, settings.seed, settings.method) == (50, 3, "exhaustive")
    assert Settings().override() == Settings()


def test_validate_warnings():
    issues = Settings(budget=0, search_bound=0).validate()
    assert "SCG_BUDGET must be positive" in issues
    assert "SCG_SEARCH_BOUND must be positive" in issues
    assert any("exhaust memory" in issue for issue in Settings(budget=60_000_000).validate())


def test_element_budget_must_be_positive():
    with pytest.raises(ConfigError):
        ElementBudget(0)
