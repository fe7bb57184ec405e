from fractions import Fraction

import pytest

from logic.harness.sampling import SplitMix64
from logic.upper_sets.cone import Cone


@pytest.fixture
def rng():
    return SplitMix64(20240601)


@pytest.fixture
def quadrant():
    return Cone.nonnegative_orthant(2)


@pytest.fixture
def half_line():
    return Cone.nonnegative_orthant(1)


def q(*values):
    """
    Shorthand for a tuple of Fractions
    """
    return tuple(Fraction(v) for v in values)


@pytest.fixture
def ray():
    """
    The cone spanned by (1, 0) in the plane; its dual is a halfplane
    """
    return Cone(2, ((1, 0),))
