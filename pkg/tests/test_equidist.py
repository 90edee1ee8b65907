import json
import math

import pytest

from sqfpal import equidist, oracle


def test_main_term_examples():
    assert equidist.main_term(10, 1, 100) == pytest.approx(6 * (605 / 384) * 2 / math.pi**2)
    assert equidist.main_term(10, 1, 100) == pytest.approx(1.9156, abs=1e-4)
    assert equidist.main_term(10, 7, 100) == pytest.approx(6 * (605 / 384) * (49 / 48) * 2 / (7 * math.pi**2))
    assert equidist.main_term(10, 7, 0.5) == 0
    with pytest.raises(ValueError):
        equidist.main_term(10, 11, 100)


def test_sqfree_pal_count_examples():
    assert equidist.sqfree_pal_count(10, 100, 1, 0) == 2
    assert equidist.sqfree_pal_count(10, 100, 3, 0) == 0
    assert equidist.sqfree_pal_count(2, 100, 5, 2) == oracle.naive_sqfree_pal_count(2, 100, 5, 2)


def test_discrepancy_examples():
    assert equidist.discrepancy(10, 100, 1) >= abs(2 - equidist.main_term(10, 1, 100))
    assert equidist.discrepancy(10, 0.5, 1) == 0
    assert equidist.discrepancy(10, 10**6, 7) > 0


@pytest.mark.parametrize("b,x,q", [(10, 3000, 1), (10, 5000, 7), (2, 4000, 5), (3, 2000, 7)])
def test_sweep_matches_full_scan(b, x, q):
    assert equidist.discrepancy(b, x, q) == pytest.approx(oracle.naive_discrepancy(b, x, q), abs=1e-9)


def test_e_of_q_examples():
    assert equidist.e_of_q(10, 100, 1) == equidist.discrepancy(10, 100, 1)
    assert equidist._moduli_near(10, 8) == [7]
    assert equidist.e_of_q(10, 10**6, 8) == pytest.approx(equidist.discrepancy(10, 10**6, 7))
    assert equidist.e_of_q(2, 10**4, 4) >= 0


def test_e_of_qd_examples():
    assert equidist.e_of_qd(10, 10**6, 1, 2) >= 0
    assert equidist.e_of_qd(2, 10**5, 3, 2) >= 0
    # d^2 > x: every inner count vanishes and only the main terms remain
    v = equidist.e_of_qd(10, 100, 1, 20)
    assert 0 < v < 1


def test_experiment_single_row():
    rep = equidist.run_experiment(equidist.ExperimentConfig(base=10, xs=(100,), moduli=(1,)))
    assert len(rep.rows) == 1
    x, q, a, count, main, *_ = rep.rows[0]
    assert (x, q, a, count) == (100, 1, 0, 2)
    assert main == pytest.approx(equidist.main_term(10, 1, 100))


def test_experiment_empty_and_invalid():
    rep = equidist.run_experiment(equidist.ExperimentConfig(base=10, xs=(100,), moduli=()))
    assert rep.rows == [] and rep.to_csv().startswith("# schema=1\n")
    with pytest.raises(equidist.ConfigError):
        equidist.ExperimentConfig(base=10, xs=(100,), moduli=(11,))
    with pytest.raises(equidist.ConfigError):
        equidist.ExperimentConfig(base=10, xs=(100, 50), moduli=(7,))


def test_report_formats():
    cfg = equidist.ExperimentConfig(base=10, xs=(10**4, 10**5), moduli=(7, 13), D=3)
    rep = equidist.run_experiment(cfg)
    doc = json.loads(rep.to_json())
    assert doc["schema"] == 1 and len(doc["rows"]) == len(rep.rows) == 2 * (6 + 12)
    assert "E_QD" in doc["aggregates"][0]
    assert rep.render("tsv").splitlines()[1].split("\t") == list(equidist.COLUMNS)


def test_fingerprint_ignores_threads():
    a = equidist.ExperimentConfig(base=10, xs=(100,), moduli=(7,), threads=1)
    b = equidist.ExperimentConfig(base=10, xs=(100,), moduli=(7,), threads=4, out="json")
    assert a.fingerprint() == b.fingerprint()
