import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sqfpal import harmonics
from sqfpal.oracle import moment_by_value_convolution, quad_moment


def test_phi_little_examples():
    assert harmonics.phi_little(0, 7) == pytest.approx(7)
    assert harmonics.phi_little(Fraction(1, 2), 2) == pytest.approx(0, abs=1e-12)
    assert harmonics.phi_little(Fraction(1, 4), 2) == pytest.approx(math.sqrt(2))


def test_phi_big_examples():
    assert harmonics.phi_big(0.123, 10, 1) == 1
    assert harmonics.phi_big(0, 3, 4) == pytest.approx(27)
    assert harmonics.phi_big(Fraction(1, 10 + 1000), 10, 2) == pytest.approx(10)


def test_inequality_examples():
    assert harmonics.pal_exp_sum_check(0.37, 10, 2).holds
    assert harmonics.incomplete_sum_check(0.5, 2, 500).holds
    assert harmonics.incomplete_sum_check(Fraction(1, 3), 10, 10**4).holds


def test_moment_examples():
    assert harmonics.phi_moment_exact(5, 1, 3) == 1
    assert harmonics.phi_moment_exact(2, 2, 2) == 6
    assert harmonics.phi_moment_exact(2, 2, 1) == 2


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(1, 3), st.integers(1, 3))
def test_moment_matches_convolution(b, N, K):
    assert harmonics.phi_moment_exact(b, N, K) == moment_by_value_convolution(b, N, K)


def test_quadrature_examples():
    assert quad_moment(3, 1, 2) == 1
    assert quad_moment(2, 2, 2) == pytest.approx(6, abs=1e-6)
    assert quad_moment(2, 2, 1) == pytest.approx(2, abs=1e-6)


def test_shift_examples():
    assert harmonics.algebraic_shift_check(7, 10, 0.25, 3, 3, 1).agree
    assert harmonics.algebraic_shift_check(7, 10, 0.1, 1, 3, 2).agree
    assert harmonics.algebraic_shift_check(5, 2, 0, 2, 5, 1).agree
