from math import gcd, isqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sqfpal import palsets
from sqfpal.oracle import naive_pal_set, naive_square_pair_count


def test_block_examples():
    assert list(palsets.iter_pal_block(2, 2)) == [5, 7]
    blk = list(palsets.iter_pal_block(10, 2))
    assert len(blk) == 90 and blk[0] == 101 and blk[1] == 111 and blk[-1] == 999
    assert list(palsets.iter_pal_block(10, 0)) == list(range(1, 10))


def test_count_upto_examples():
    assert palsets.count_upto(10, 1000) == 108
    assert palsets.count_upto(10, 100, "star") == 2
    assert palsets.count_upto(10, 0.5) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 10]), st.integers(1, 30000))
def test_count_upto_matches_naive(b, x):
    assert palsets.count_upto(b, x) == len(naive_pal_set(b, x))
    assert palsets.palindromes_upto(b, x).tolist() == naive_pal_set(b, x)


def test_count_in_ap_examples():
    assert palsets.count_in_ap(2, 2, 3, 2) == 1
    pals = list(palsets.iter_pal_block(10, 2))
    assert palsets.count_in_ap(10, 2, 1, 0) == sum(gcd(p, 10) == 1 for p in pals)
    assert palsets.count_in_ap(10, 2, 11, 0) == sum(p % 11 == 0 and gcd(p, 10) == 1 for p in pals)


def test_count_divisible_examples():
    assert palsets.count_divisible(10, 2, 11) == 8
    assert palsets.count_divisible(10, 3, 1) == palsets.block_size(10, 3)
    assert palsets.count_divisible(2, 2, 7) == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 10]), st.integers(0, 5), st.integers(1, 60))
def test_ap_histogram_matches_enumeration(b, L, q):
    pals = np.array(list(palsets.iter_pal_block(b, L)), dtype=np.int64)
    pals = pals[np.gcd(pals, b) == 1]
    want = np.bincount(pals % q, minlength=q)
    assert palsets.ap_histogram(b, L, q).tolist() == want.tolist()


def test_bs_ratio_q1_below_one():
    assert palsets.bs_max_ratio(10, 4, 1) < 1


def test_square_pairs_examples():
    assert palsets.count_square_pairs(10, 2, 1, 0, 2) == 0
    assert palsets.count_square_pairs(10, 2, 1, 0, 40) == 0
    assert naive_square_pair_count(2, 4, 1, 0, 2) == 0
    # n = 1 is a square divisor of every palindrome
    assert palsets.count_square_pairs(2, 0, 1, 0, 1) == 1
    with pytest.raises(ValueError):
        palsets.count_square_pairs(10, 2, 5, 0, 3)


@pytest.mark.parametrize("strategy", ["auto", "residues", "palindromes"])
@pytest.mark.parametrize("b,L,q,a,N", [(10, 4, 7, 3, 6), (2, 5, 3, 1, 4), (10, 5, 1, 0, 8), (3, 4, 7, 2, 5)])
def test_square_pair_strategies_agree(strategy, b, L, q, a, N):
    assert palsets.count_square_pairs(b, L, q, a, N, strategy=strategy) == naive_square_pair_count(b, L, q, a, N)


def test_square_part_array():
    v = np.arange(1, 2000, dtype=np.int64)
    want = [max(s for s in range(1, isqrt(n) + 1) if n % (s * s) == 0) for n in range(1, 2000)]
    assert palsets.square_part_array(v).tolist() == want
