"""One check per acceptance criterion; each prints a PASS/FAIL line.

The lines are collected by ``conftest.py`` and shown in the terminal summary,
so ``pytest -v`` output carries the full criterion table.
"""

import pytest

from sqfpal import checks

# criterion -> (registered check, wall-clock limit in seconds or None)
CRITERIA = {
    1: ("enumerate", 10),
    2: ("squarefree", 30),
    3: ("rho", 30),
    4: ("quasi", None),
    5: ("salie", 120),
    6: ("crt", None),
    7: ("correlation", None),
    8: ("gauss", None),
    9: ("moment", None),
    10: ("shift", None),
    11: ("sum-product", None),
    12: ("vdc", None),
    13: ("cong", None),
    14: ("sieve", None),
    15: ("bs", None),
    16: ("square-pairs", 300),
    17: ("trend", 600),
    18: ("determinism", None),
}
SLOW = {4, 16, 17, 18}


def _param(k):
    marks = [pytest.mark.slow] if k in SLOW else []
    return pytest.param(k, id=f"criterion-{k:02d}-{CRITERIA[k][0]}", marks=marks)


@pytest.mark.parametrize("criterion", [_param(k) for k in CRITERIA])
def test_criterion(criterion, acceptance_log):
    name, limit = CRITERIA[criterion]
    res = checks.run(name)
    line = res.line()
    if limit is not None and res.seconds >= limit:
        line += f"\n    over the {limit}s limit"
    acceptance_log.append(line)
    print(line)
    assert res.criterion == criterion
    assert res.passed, line
    if limit is not None:
        assert res.seconds < limit, line


@pytest.mark.parametrize("name", [n for n, s in checks.REGISTRY.items() if s.criterion is None])
def test_supporting_check(name):
    res = checks.run(name)
    print(res.line())
    assert res.passed, res.line()
