"""
Runtime settings for the string C-group tools, read from the environment.
"""
import logging
import os
from dataclasses import dataclass, replace
from typing import List, Optional

from dotenv import load_dotenv

from errors import ConfigError

# Load environment variables
load_dotenv()

DEFAULT_BUDGET = 10_000_000
DEFAULT_SEARCH_BOUND = 2_000
DEFAULT_SEED = 0
METHODS = ("exhaustive", "recursive")


@dataclass(frozen=True)
class ElementBudget:
    """Cap on the number of elements any explicit enumeration may produce."""
    max_elements: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_elements <= 0:
            raise ConfigError(f"element budget must be positive, got {self.max_elements}")


@dataclass(frozen=True)
class Settings:
    """Represents the tool configuration after environment resolution."""
    budget: int = DEFAULT_BUDGET
    search_bound: int = DEFAULT_SEARCH_BOUND
    seed: int = DEFAULT_SEED
    method: str = "recursive"
    log_level: str = "WARNING"

    @staticmethod
    def _int_from_env(name: str, default: int) -> int:
        """
        Read a positive integer variable.

        Args:
            name: Environment variable name
            default: Value used when the variable is unset or empty

        Returns:
            Parsed integer

        Raises:
            ConfigError: If the value is not an integer
        """
        raw = os.getenv(name, "").strip().replace("_", "")
        if not raw:
            return default
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{name} must be an integer, got {raw!r}")

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from SCG_* environment variables.

        Returns:
            Settings with defaults for every unset variable
        """
        method = os.getenv("SCG_METHOD", "recursive").strip().lower() or "recursive"
        if method not in METHODS:
            raise ConfigError(f"SCG_METHOD must be one of {', '.join(METHODS)}, got {method!r}")

        level = os.getenv("SCG_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"
        if not isinstance(logging.getLevelName(level), int):
            raise ConfigError(f"SCG_LOG_LEVEL is not a logging level: {level!r}")

        return cls(
            budget=cls._int_from_env("SCG_BUDGET", DEFAULT_BUDGET),
            search_bound=cls._int_from_env("SCG_SEARCH_BOUND", DEFAULT_SEARCH_BOUND),
            seed=cls._int_from_env("SCG_SEED", DEFAULT_SEED),
            method=method,
            log_level=level,
        )

    def override(self, budget: Optional[int] = None, seed: Optional[int] = None,
                 method: Optional[str] = None) -> "Settings":
        """Return a copy with the given command-line overrides applied."""
        changes = {}
        if budget is not None:
            changes["budget"] = budget
        if seed is not None:
            changes["seed"] = seed
        if method is not None:
            changes["method"] = method
        return replace(self, **changes)

    def element_budget(self) -> ElementBudget:
        return ElementBudget(self.budget)

    def validate(self) -> List[str]:
        """
        Validate settings.

        Returns:
            List of validation warnings (empty list if no issues)
        """
        issues = []
        if self.budget <= 0:
            issues.append("SCG_BUDGET must be positive")
        elif self.budget > 50_000_000:
            issues.append(f"SCG_BUDGET={self.budget:,} may exhaust memory during closures")
        if self.search_bound <= 0:
            issues.append("SCG_SEARCH_BOUND must be positive")
        if self.method not in METHODS:
            issues.append(f"unknown verification method '{self.method}'")
        return issues
