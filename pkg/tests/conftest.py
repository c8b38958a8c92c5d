from __future__ import annotations

import pytest

from corpus import derivation_for


@pytest.fixture(scope="session")
def conditional():
    """Derivation of the two-branch increment example."""
    return derivation_for("conditional_increment")


@pytest.fixture(scope="session")
def divides():
    """Derivation of the full division example (not enumerable)."""
    return derivation_for("divides_full")


@pytest.fixture(scope="session")
def assignment():
    """Derivation of ``z := x + y`` over four variables."""
    return derivation_for("plain_assignment")
