import pytest

from g2lift.lifting import LiftingSession
from g2lift.rootdata import BraidingConfig


@pytest.fixture(scope="session")
def degenerate_session():
    """The full tower at the deformable braiding, shared across the suite."""
    return LiftingSession(BraidingConfig(7, 3))


@pytest.fixture(scope="session")
def config57():
    return {(5, 0): BraidingConfig(5, 0), (5, 1): BraidingConfig(5, 1),
            (7, 3): BraidingConfig(7, 3), (9, 0): BraidingConfig(9, 0)}
