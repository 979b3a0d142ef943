"""Shared instances used across the test suite.

All expected values in the suite are tagged:
  [TRIVIAL]  asserted directly from the definition
  [DERIVED]  computed by an independent oracle (hand algebra, brute
             force, or finite differences) and frozen here
"""

from fractions import Fraction

import pytest

from triarea import CombinatorialType, Polygon, cone_type


@pytest.fixture
def unit_square():
    return Polygon.from_pairs([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def big_square():
    return Polygon.from_pairs([(0, 0), (2, 0), (2, 2), (0, 2)])


@pytest.fixture
def unit_triangle():
    return Polygon.from_pairs([(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def pentagon():
    # [DERIVED] shoelace area 8
    return Polygon.from_pairs([(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)])


@pytest.fixture
def cone4():
    return cone_type(4)


@pytest.fixture
def cone3():
    return cone_type(3)


@pytest.fixture
def cone5():
    return cone_type(5)


@pytest.fixture
def two_interior():
    """Square type with two interior vertices (5 and 6)."""
    return CombinatorialType(
        4, 6,
        ((1, 2, 5), (2, 3, 5), (4, 1, 5), (3, 4, 6), (4, 5, 6), (5, 3, 6)))


HAND_CONE_AREAS = [Fraction(1, 8), Fraction(1, 4),
                   Fraction(3, 8), Fraction(1, 4)]
