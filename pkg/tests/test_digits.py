import pytest
from hypothesis import given, strategies as st

from sqfpal import digits
from sqfpal.oracle import naive_pal_set


def test_digits_of_examples():
    assert digits.digits_of(0, 10).digits == (0,)
    assert digits.digits_of(123, 10, 5).digits == (3, 2, 1, 0, 0)
    assert digits.digits_of(5, 2).digits == (1, 0, 1)
    with pytest.raises(ValueError):
        digits.digits_of(123, 10, 2)


def test_value_of_examples():
    assert digits.value_of(digits.DigitVector(10, (0,))) == 0
    assert digits.value_of(digits.DigitVector(10, (3, 2, 1))) == 123
    assert digits.value_of(digits.DigitVector(2, (1, 0, 1))) == 5


@given(st.integers(0, 10**12), st.integers(2, 16))
def test_digits_roundtrip(n, b):
    assert digits.value_of(digits.digits_of(n, b)) == n


def test_rho_examples():
    assert digits.rho(0, 10, 4) == 0
    assert digits.rho(12321, 10, 4) == 12321
    assert digits.rho(123, 10, 4) == 32100
    with pytest.raises(ValueError):
        digits.rho(10**5, 10, 4)


@given(st.integers(2, 10), st.integers(0, 6), st.data())
def test_rho_involution(b, L, data):
    n = data.draw(st.integers(0, b ** (L + 1) - 1))
    assert digits.rho(digits.rho(n, b, L), b, L) == n


def test_palindrome_examples():
    assert digits.is_palindrome(7, 10)
    assert digits.is_palindrome(12321, 10)
    assert not digits.is_palindrome(12, 10)


def test_quasi_examples():
    assert digits.is_quasi_palindrome(12321, 10, 2)
    assert not digits.is_quasi_palindrome(12325, 10, 1)
    for n in naive_pal_set(10, 2000):
        assert digits.is_quasi_palindrome(n, 10, 1)


def test_quasi_skeleton_examples():
    s = digits.gen_quasi_skeleton(10, 10, 1)
    assert sorted(s.members) == [k * (1 + 10**10) for k in (1, 3, 7, 9)]
    assert list(digits.gen_quasi_skeleton(2, 6, 1).members) == [65]
    assert len(digits.gen_quasi_skeleton(3, 8, 2)) == 6
    with pytest.raises(ValueError):
        digits.gen_quasi_skeleton(10, 4, 3)


def test_quasi_cover_small():
    assert sorted(l for _, _, l in digits.quasi_cover_enumerate(2, 2, 1)) == [5, 7]
    for _, _, l in digits.quasi_cover_enumerate(3, 5, 2):
        assert digits.is_quasi_palindrome(l, 3, 2)
