import math

import numpy as np
import pytest

from sqfpal import largesieve
from sqfpal.arith import euler_phi


def test_delta_examples():
    assert largesieve.delta_bound(1, 1, 1, 0) == 4
    assert largesieve.delta_bound(2, 4, 3, 0) == pytest.approx(1.75 * (24 + 4 * math.sqrt(2)))
    assert largesieve.delta_bound(10, 100, 1, 0.1) > 0


def test_spacing_examples():
    assert largesieve.spacing_count(1, 1, 1, 0) == 1
    assert largesieve.spacing_count(1, 10, 4, 0) == 0
    assert largesieve.spacing_count(2, 10, 1, 0.25) == 10
    assert largesieve.spacing_sup(1, 1, 1) >= 1
    pts = largesieve.farey_points(2, 1)
    assert largesieve.spacing_sup(2, 10, 1) == 10 * largesieve._max_window_load(pts, 0.2)


def test_spacing_sup_dominates_points():
    rng = np.random.default_rng(3)
    for D, N, q in [(3, 5, 2), (4, 12, 1), (2, 30, 5)]:
        s = largesieve.spacing_sup(D, N, q)
        assert all(largesieve.spacing_count(D, N, q, float(a)) <= s for a in rng.random(200))


def test_quadratic_form_examples():
    assert largesieve.ls_quadratic_form(np.zeros(11), 3, 2).value == 0
    g = np.exp(2j * np.pi * np.random.default_rng(1).random(7))
    assert largesieve.ls_quadratic_form(g, 1, 1).value == pytest.approx(abs(g.sum()) ** 2)


def test_quadratic_form_two_routes_agree():
    rng = np.random.default_rng(5)
    g = np.exp(2j * np.pi * rng.random((3, 101)))
    cum = largesieve.ls_quadratic_form_all_D(g, 6, 3)
    for j in range(3):
        for D in (1, 4, 6):
            fft = largesieve.ls_quadratic_form(g[j], D, 3).value
            assert cum[j, D - 1] == pytest.approx(fft, rel=1e-10)


def test_moment_square_moduli_examples():
    assert largesieve.phi_moment_square_moduli(2, 2, 1, 1, 1, 0) == pytest.approx(4)
    want = sum(euler_phi(3 * d * d) for d in range(1, 5))
    assert largesieve.phi_moment_square_moduli(10, 1, 2, 3, 4, 0.3) == pytest.approx(want)
    assert largesieve.phi_moment_square_moduli(2, 2, 2, 3, 2, 0) > 0
