import cmath
import math

import pytest

from sqfpal import expsums
from sqfpal.arith import euler_phi


def e(x):
    return cmath.exp(2j * math.pi * x)


def test_gauss_examples():
    for q in (1, 5, 12):
        assert abs(expsums.gauss_star(0, q).value - euler_phi(q) / math.sqrt(q)) < 1e-12
    assert abs(expsums.gauss_star(1, 2).value + 1 / math.sqrt(2)) < 1e-12
    assert abs(expsums.gauss_star(1, 3).value - 2 * e(1 / 3) / math.sqrt(3)) < 1e-12


def test_gauss_structure_examples():
    r = expsums.gauss_star_structure_check(1, 16)
    assert r.predicted_vanish and r.vanishes_as_predicted
    r = expsums.gauss_star_structure_check(1, 9)
    assert r.predicted_vanish and abs(r.value) < 1e-9
    r = expsums.gauss_star_structure_check(1, 2)
    assert not r.predicted_vanish and r.bound_ok


def test_k2_examples():
    assert expsums.k2(3, 5, 1).value == 1
    assert abs(expsums.k2(0, 0, 15).value - 8 / math.sqrt(15)) < 1e-12
    assert abs(expsums.k2(1, 1, 4).value) < 1e-12


def test_k2_crt_examples():
    for args in [(1, 1, 1, 7), (1, 2, 3, 4), (5, 7, 9, 25)]:
        assert expsums.k2_crt_check(*args).agree
    with pytest.raises(ValueError):
        expsums.k2_crt_check(1, 1, 4, 6)


def test_salie_examples():
    r = expsums.k2_salie(1, 2, 3)
    assert r.agree and abs(r.via_formula - e(1 / 3)) < 1e-12
    for q in (4, 7, 9):
        r = expsums.k2_salie(0, 0, q)
        assert r.agree and abs(r.via_definition - euler_phi(q)) < 1e-9
    # both sides are i here, not 0: the single term e_4(0 + 1) survives
    r = expsums.k2_salie(1, 0, 2)
    assert r.agree and abs(r.via_definition - 1j) < 1e-12


def test_kummer_examples():
    assert abs(expsums.kummer2(0, 0, 9).value - 6 / 3) < 1e-12
    assert expsums.kummer2(4, 2, 1).value == 1
    assert abs(expsums.kummer2(1, 0, 2).value + 1 / math.sqrt(2)) < 1e-12


def test_correlation_examples():
    r = expsums.correlation_check(1, 2, 5)
    assert r.ok and r.bound == 2
    assert expsums.correlation_check(0, 0, 8).ok
    assert sorted(expsums.square_roots_of_one(8)) == [1, 3, 5, 7]
    r = expsums.correlation_check(3, 3, 10)
    assert r.ok and r.bound == 10 * 4


def test_twisted_examples():
    assert abs(expsums.twisted_incomplete_k2(0, 1, 0, 1, 17).value - 17) < 1e-9
    for args in [(0, 1, 0, 5, 10), (0.3, 1, 1, 9, 50)]:
        r = expsums.twisted_incomplete_k2(*args)
        assert math.isfinite(r.value) and r.bound1 > 0 and r.bound2 > 0


def test_shparlinski_examples():
    for q in (5, 12):
        assert abs(expsums.shparlinski_ratio(0, 0, 1, 2, q) - euler_phi(q) / q) < 1e-12
    assert abs(expsums.shparlinski_ratio(1, 1, -2, 1, 7) - abs(expsums.k2(1, 1, 7).value)) < 1e-9
    assert math.isfinite(expsums.shparlinski_ratio(2, 3, 3, 2, 11))


def test_cap():
    with pytest.raises(ValueError):
        expsums.k2(1, 1, 10**9)
