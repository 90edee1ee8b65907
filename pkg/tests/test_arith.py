from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sqfpal import arith
from sqfpal.oracle import naive_squarefree, ramanujan_c_direct


def test_arithmetic_functions_examples():
    assert tuple(arith.arithmetic_functions(1)) == (1, 1, 1, 1)
    assert tuple(arith.arithmetic_functions(12)) == (4, 0, 6, 3)
    assert tuple(arith.arithmetic_functions(10)) == (4, 1, 4, 5)
    with pytest.raises(ValueError):
        arith.arithmetic_functions(0)


def test_factorize_examples():
    assert list(arith.factorize(1)) == []
    assert list(arith.factorize(990)) == [(2, 1), (3, 2), (5, 1), (11, 1)]
    assert list(arith.factorize(10403)) == [(101, 1), (103, 1)]
    with pytest.raises(ValueError):
        arith.factorize(10**18 + 1)


@given(st.integers(1, 10**15))
def test_factorize_product(n):
    f = arith.factorize(n)
    prod = 1
    for p, e in f:
        assert arith.is_probable_prime(p)
        prod *= p**e
    assert prod == n


def test_squarefree_examples():
    assert arith.is_squarefree(1)
    assert not arith.is_squarefree(45)
    assert arith.is_squarefree(10)


@given(st.integers(1, 10**9))
def test_squarefree_matches_naive(n):
    assert arith.is_squarefree(n) == naive_squarefree(n)


def test_squarefree_mask_matches_scalar():
    vals = np.arange(1, 5000, dtype=np.int64) * 7919
    mask = arith.squarefree_mask(vals)
    assert mask.tolist() == [arith.is_squarefree(int(v)) for v in vals]


def test_mod_inverse_and_crt():
    assert arith.mod_inverse(1, 7) == 1
    assert arith.mod_inverse(3, 10) == 7
    with pytest.raises(ValueError):
        arith.mod_inverse(2, 4)
    assert arith.crt_combine(0, 1, 5, 7) == 5
    assert arith.crt_combine(2, 3, 3, 5) == 8


def test_singular_series_examples():
    assert arith.singular_series(1) == Fraction(1)
    assert arith.singular_series(2) == Fraction(4, 3)
    assert arith.singular_series(990) == Fraction(605, 384)


def test_gcd_sum_examples():
    assert tuple(arith.gcd_sum_check(1, 1)) == (1, 1, True)
    assert tuple(arith.gcd_sum_check(6, 4)) == (11, 18, True)
    assert tuple(arith.gcd_sum_check(10, 1)) == (10, 10, True)


@pytest.mark.parametrize("q", [1, 2, 6, 9, 12, 30])
def test_ramanujan_sum_matches_definition(q):
    for n in range(-15, 16):
        assert abs(arith.ramanujan_c(q, n) - ramanujan_c_direct(q, n)) < 1e-9


def test_units():
    assert arith.units(1).tolist() == [0]
    assert arith.units(10).tolist() == [1, 3, 7, 9]
    assert all(gcd(int(u), 36) == 1 for u in arith.units(36))
