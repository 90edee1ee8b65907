import pytest

from sqfpal import baselines


def test_freeze_rounds_outward():
    v = 0.123456789012345
    assert baselines.freeze(v) >= v
    assert baselines.freeze(v, down=True) <= v
    assert baselines.freeze(v) - v < 1e-9 * v
    assert baselines.freeze(2.0) == 2.0


def test_grid_hash_order_independent():
    assert baselines.grid_hash({"a": 1, "b": [1, 2]}) == baselines.grid_hash({"b": [1, 2], "a": 1})
    assert baselines.grid_hash({"a": 1}) != baselines.grid_hash({"a": 2})


def test_missing_entry_is_an_error(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("{}\n")
    with pytest.raises(baselines.BaselineError):
        baselines.entry("spacing_sup", {"D": 1}, p)


def test_packaged_entries_present():
    data = baselines.load()
    for key in ("spacing_sup", "ls_quadratic_form", "bs_max_ratio", "count_divisible"):
        assert data[key]["constant"] > 0 and data[key]["grid_hash"]
