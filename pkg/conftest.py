"""Shared pytest fixtures."""

import os
import sys

import pytest

_PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

from classify import critical_alpha  # noqa: E402
from models import CriticalData  # noqa: E402


@pytest.fixture(scope="session")
def critical() -> CriticalData:
    """eta_min and alpha*, computed once for the whole run."""
    return critical_alpha()
