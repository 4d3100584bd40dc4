"""
Tests for the Caratheodory consistency check.
"""

import pytest

from qwdefect.errors import PreconditionError
from qwdefect.theory import caratheodory_check
from qwdefect.theory.caratheodory import FLOAT_FLOOR, is_type_two
from qwdefect.walk import WalkConfig


@pytest.mark.parametrize("z", [0.4, 0.4j, -0.3 + 0.3j])
def test_one_defect_block_matches_series(pi_defect, z):
    report = caratheodory_check(pi_defect, z, 60)
    assert report.half_line_residual is None
    assert report.block_residuals.shape == (2, 2)
    assert report.passed


@pytest.mark.parametrize("z", [0.4, 0.4j, -0.3 + 0.3j])
def test_half_line_walk_matches_closed_form(z):
    report = caratheodory_check(WalkConfig.type_two(0.6), z, 60)
    assert report.half_line_residual is not None
    assert report.half_line_residual <= report.tolerance
    assert report.passed


def test_tolerance_is_twice_the_tail(pi_defect):
    report = caratheodory_check(pi_defect, 0.5, 10)
    tail = 0.5**11 / 0.5
    assert report.tail_bound == pytest.approx(tail)
    assert report.tolerance == pytest.approx(2 * tail + FLOAT_FLOOR)


def test_radius_limited(pi_defect):
    with pytest.raises(PreconditionError):
        caratheodory_check(pi_defect, 0.7, 60)


def test_type_two_detection(pi_defect):
    assert is_type_two(WalkConfig.type_two(0.3))
    assert not is_type_two(pi_defect)


def test_type_two_needs_proper_b():
    with pytest.raises(PreconditionError):
        WalkConfig.type_two(1.0)
    with pytest.raises(PreconditionError):
        WalkConfig.type_two(0.0)
