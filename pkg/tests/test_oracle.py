import pytest

from sqfpal import oracle


def test_naive_pal_set_examples():
    assert oracle.naive_pal_set(10, 30) == list(range(1, 10)) + [11, 22]
    assert oracle.naive_pal_set(2, 10) == [1, 3, 5, 7, 9]
    assert oracle.naive_pal_set(10, 0) == []
    with pytest.raises(ValueError):
        oracle.naive_pal_set(10, 10**7 + 1)


def test_naive_squarefree_examples():
    assert oracle.naive_squarefree(1)
    assert not oracle.naive_squarefree(49)
    assert oracle.naive_squarefree(210)
    with pytest.raises(ValueError):
        oracle.naive_squarefree(10**9 + 1)


def test_factorization_table_matches_trial_division():
    t = oracle.squarefree_table_by_factorization(3000)
    assert [bool(t[n]) for n in range(1, 3001)] == [oracle.naive_squarefree(n) for n in range(1, 3001)]


def test_vdc_examples():
    r = oracle.vdc_check(oracle.SequenceSample((1,) * 9, 1))
    assert r.lhs == pytest.approx(81) and r.rhs == pytest.approx(81) and r.holds
    r = oracle.vdc_check(oracle.SequenceSample((1,) * 9, 9))
    assert r.rhs >= 81 - 1e-9 and r.holds


def test_vdc_all_H_matches_single():
    z = [complex(k % 3, -k % 5) for k in range(17)]
    for H, r in enumerate(oracle.vdc_all_H(z), start=1):
        s = oracle.vdc_check(oracle.SequenceSample(tuple(z), H))
        assert r.rhs == pytest.approx(s.rhs, rel=1e-12, abs=1e-9)


def test_cong_examples():
    assert tuple(oracle.cong_bound_check(1, 1, 1)) == (1, 2, True)
    r = oracle.cong_bound_check(4, 10, 6)
    assert r.rhs == pytest.approx(40 * 4 / 6 + 4 * 4) and r.holds
    assert tuple(oracle.cong_bound_check(10, 10, 1)) == (100, 110, True)
    grid = oracle.cong_bound_grid(6, 7, 8)
    for M, N, q in [(4, 7, 6), (6, 3, 8), (1, 1, 1)]:
        assert grid[M, N, q] == oracle.cong_bound_check(M, N, q).lhs


def test_quad_moment_examples():
    assert oracle.quad_moment(10, 1, 4) == 1
    assert oracle.quad_moment(2, 2, 2) == pytest.approx(6, abs=1e-6)
    assert oracle.quad_moment(2, 2, 1) == pytest.approx(2, abs=1e-6)
    assert oracle.moment_by_value_convolution(2, 2, 2) == 6


def test_square_pair_oracle_examples():
    assert oracle.naive_square_pair_count(10, 2, 1, 0, 40) == 0
    assert oracle.naive_square_pair_count(2, 4, 1, 0, 2) == 0
    with pytest.raises(ValueError):
        oracle.naive_square_pair_count(10, 7, 1, 0, 2)
