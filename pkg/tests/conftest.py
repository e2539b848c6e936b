"""
Shared fixtures for the test suite.
"""
import sys
from pathlib import Path

import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from constructions import builtin_example, simplex_rep
from ffmatrix import BilinearForm, FiniteField
from performance_monitor import monitor
from permgroup import Permutation
from sggi import SggiRep

FIXTURE_DIR = Path(__file__).parent.parent / "fixtures"

O4_FORM_ROWS = [[1, 1, 0, 0], [1, 2, 1, 0], [0, 1, 1, 2], [0, 0, 2, 1]]

O4_GENERATORS = [
    [[2, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[2, 1, 0, 0], [0, 1, 0, 0], [0, 1, 2, 0], [0, 0, 0, 2]],
    [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 2, 0], [0, 0, 2, 1]],
    [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 1], [0, 0, 0, 1]],
]


def perm_rep(degree, *cycles, label=None):
    """Permutation representation from cycle strings such as ``"(1,2)(3,4)"``."""
    return SggiRep("permutation", tuple(Permutation.parse(text, degree) for text in cycles), label=label)


@pytest.fixture(autouse=True)
def reset_monitor():
    monitor.reset()
    yield


@pytest.fixture
def gf3():
    return FiniteField(3)


@pytest.fixture
def o4_form(gf3):
    return BilinearForm.from_rows(gf3, O4_FORM_ROWS)


@pytest.fixture
def o4_rep():
    return builtin_example("O4minus3")


@pytest.fixture
def simplex5():
    return simplex_rep(5)
