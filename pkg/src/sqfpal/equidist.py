"""Square-free palindromes in arithmetic progressions against the predicted main term.

For ``m_b = b^3 - b`` and ``(q, m_b) = 1`` the prediction for the number of
square-free members of ``P*_b(y)`` in a class ``a mod q`` is

    6 S(m_b) S(q) |P*_b(y)| / (pi^2 q).

Both the empirical count and the main term change only at members of
``P*_b(x)``, so the supremum over ``y <= x`` is an exact sweep over those
members.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import __version__, arith, baselines, palsets

SCHEMA = 1
COLUMNS = ("x", "q", "a", "count", "main_term", "abs_err", "rel_err", "sigma_hat")
# refuse to enumerate more palindromes than this in one experiment
ENUM_CAP = 10**8


class ConfigError(ValueError):
    pass


def _mb(b: int) -> int:
    return b**3 - b


def _density(b: int, q: int) -> float:
    """``6 S(m_b) S(q) / (pi^2 q)``."""
    s = arith.singular_series(_mb(b)) * arith.singular_series(q)
    return 6 * float(s) / (math.pi**2 * q)


def _require_coprime(b: int, q: int) -> None:
    if q < 1:
        raise ValueError("modulus must be positive")
    if gcd(q, _mb(b)) != 1:
        raise ValueError(f"modulus {q} shares a factor with b^3 - b = {_mb(b)}")


def main_term(b: int, q: int, y: float) -> float:
    _require_coprime(b, q)
    if y < 1:
        return 0.0
    return _density(b, q) * palsets.count_upto(b, y, palsets.Variant.STAR)


# --- member gathering -------------------------------------------------------


def _segment_members(task: tuple[int, int, int, int, int]) -> tuple[np.ndarray, np.ndarray]:
    b, x, L, start, stop = task
    arr = palsets.pal_block_array(b, L, start, stop)
    arr = arr[(arr <= x) & (np.gcd(arr, _mb(b)) == 1)]
    return arr, arith.squarefree_mask(arr)


@dataclass
class Members:
    """Sorted ``P*_b(x)`` with a square-free flag per member."""

    b: int
    x: int
    values: np.ndarray
    sqf: np.ndarray

    def upto(self, y: int) -> "Members":
        k = int(np.searchsorted(self.values, y, side="right"))
        return Members(self.b, y, self.values[:k], self.sqf[:k])


def gather_members(b: int, x: int, threads: int = 1) -> Members:
    """Enumerate ``P*_b(x)`` segment by segment; merge order is the segment order."""
    x = math.floor(x)
    if x < 1:
        return Members(b, x, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=bool))
    if palsets.count_upto(b, x) > ENUM_CAP:
        raise ValueError(f"P_{b}({x}) has more than {ENUM_CAP} members; too large to enumerate")
    tasks = [(b, x, L, s, t) for L, s, t in palsets.segments(b, x)]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_segment_members, tasks))
    else:
        parts = [_segment_members(t) for t in tasks]
    vals = np.concatenate([p[0] for p in parts])
    sqf = np.concatenate([p[1] for p in parts])
    return Members(b, x, vals, sqf)


def sqfree_pal_count(b: int, y: int, q: int, a: int) -> int:
    m = gather_members(b, y)
    return int(np.count_nonzero(m.sqf & (m.values % q == a % q)))


# --- discrepancies ----------------------------------------------------------


def _sweep_start(m: Members) -> float:
    # for 1 <= y < first member both sides vanish
    return 0.0 if m.values.size == 0 or m.values[0] > 1 else -math.inf


def _discrepancy(m: Members, q: int) -> float:
    c = _density(m.b, q)
    S = np.arange(1, m.values.size + 1, dtype=np.float64) * c
    cls = m.values % q
    best = _sweep_start(m)
    for a in arith.units(q):
        hit = np.cumsum(m.sqf & (cls == a))
        if hit.size:
            best = max(best, float(np.abs(hit - S).max()))
    return max(best, 0.0)


def discrepancy(b: int, x: float, q: int) -> float:
    """``max_{(a,q)=1} sup_{y <= x} |count(y) - main(y)|`` by the exact member sweep."""
    _require_coprime(b, q)
    return _discrepancy(gather_members(b, math.floor(x)), q)


def _moduli_near(b: int, Q: int, dyadic: bool = True) -> list[int]:
    lo = Q // 2 + 1 if dyadic else 1
    return [q for q in range(lo, Q + 1) if gcd(q, _mb(b)) == 1]


def e_of_q(b: int, x: int, Q: int, dyadic: bool = True) -> float:
    """``sum_{q ~ Q, (q, m_b) = 1} discrepancy(b, x, q)``; ``dyadic=False`` sums ``q <= Q``."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    m = gather_members(b, x)
    return math.fsum(_discrepancy(m, q) for q in _moduli_near(b, Q, dyadic))


def _square_divisor_discrepancy(m: Members, q: int, D: int) -> float:
    ds = [d for d in range(D // 2 + 1, D + 1) if gcd(d, q * _mb(m.b)) == 1]
    if not ds:
        return 0.0
    S = np.arange(1, m.values.size + 1, dtype=np.float64)
    cls = m.values % q
    best = _sweep_start(m)
    for a in arith.units(q):
        in_class = cls == a
        acc = np.zeros(m.values.size, dtype=np.float64)
        for d in ds:
            hit = np.cumsum(in_class & (m.values % (d * d) == 0))
            acc += np.abs(hit - S / (q * d * d))
        if acc.size:
            best = max(best, float(acc.max()))
    return max(best, 0.0)


def e_of_qd(b: int, x: int, Q: int, D: int, dyadic: bool = True) -> float:
    if Q < 1 or D < 1:
        raise ValueError("Q and D must be >= 1")
    m = gather_members(b, x)
    return math.fsum(_square_divisor_discrepancy(m, q, D) for q in _moduli_near(b, Q, dyadic))


# --- experiment driver ------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    base: int
    xs: tuple[int, ...]
    moduli: tuple[int, ...] | None = None
    Q: int | None = None
    dyadic: bool = True
    D: int | None = None
    y_policy: str = "sweep"  # "sweep": sup over y <= x; "endpoint": y = x only
    require_coprime: bool = True
    out: str = "csv"
    threads: int = 1
    seed: int = 0
    baseline: str | None = None

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ConfigError("base must be >= 2")
        xs = tuple(int(x) for x in self.xs)
        if any(x < 1 or x > palsets.CAP for x in xs):
            raise ConfigError("scales must lie in [1, 10^18]")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ConfigError("scales must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        if (self.moduli is None) == (self.Q is None):
            raise ConfigError("give either an explicit modulus set or a range Q")
        if self.moduli is not None:
            mods = tuple(int(q) for q in self.moduli)
            if any(q < 1 for q in mods):
                raise ConfigError("moduli must be positive")
            if self.require_coprime:
                bad = [q for q in mods if gcd(q, _mb(self.base)) != 1]
                if bad:
                    raise ConfigError(f"moduli {bad} are not coprime to b^3 - b = {_mb(self.base)}")
            object.__setattr__(self, "moduli", mods)
        if self.y_policy not in ("sweep", "endpoint"):
            raise ConfigError(f"unknown y policy {self.y_policy!r}")
        if self.out not in ("csv", "json", "tsv"):
            raise ConfigError(f"unknown output format {self.out!r}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    def modulus_list(self) -> list[int]:
        if self.moduli is not None:
            return sorted(set(self.moduli))
        return _moduli_near(self.base, self.Q, self.dyadic)

    def fingerprint(self) -> str:
        d = asdict(self)
        # output-invariant knobs stay out of the hash
        for k in ("threads", "out", "baseline"):
            d.pop(k)
        return baselines.grid_hash(d)


@dataclass
class ExperimentReport:
    rows: list[tuple] = field(default_factory=list)
    aggregates: list[dict] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def to_csv(self, delimiter: str = ",") -> str:
        buf = io.StringIO()
        buf.write(f"# schema={SCHEMA}\n")
        w = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            w.writerow([_fmt(v) for v in r])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA,
            "columns": list(COLUMNS),
            "rows": [[_json_num(v) for v in r] for r in self.rows],
            "aggregates": [{k: _json_num(v) for k, v in a.items()} for a in self.aggregates],
            "metadata": self.metadata,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        return self.to_csv("\t" if fmt == "tsv" else ",")


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_num(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def sigma_hat(err: float, x: int) -> float:
    """``-log(err / sqrt x) / sqrt(log x)``: the rate exponent implied by one error value."""
    if x <= 1:
        return math.nan
    if err <= 0:
        return math.inf
    return -math.log(err / math.sqrt(x)) / math.sqrt(math.log(x))


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    t0 = time.perf_counter()
    b = cfg.base
    mods = cfg.modulus_list()
    rep = ExperimentReport()
    if mods and cfg.xs:
        full = gather_members(b, cfg.xs[-1], cfg.threads)
        for x in cfg.xs:
            m = full.upto(x)
            star = m.values.size
            errs, rels = [], []
            E = 0.0
            for q in mods:
                c = _density(b, q)
                cls = m.values[m.sqf] % q
                counts = np.bincount(cls, minlength=q)
                for a in arith.units(q):
                    cnt = int(counts[a])
                    main = c * star
                    err = abs(cnt - main)
                    rel = err / max(main, 1.0)
                    rep.rows.append((x, q, int(a), cnt, main, err, rel, sigma_hat(err, x)))
                    errs.append(err)
                    rels.append(rel)
                if cfg.y_policy == "sweep":
                    E += _discrepancy(m, q)
                else:
                    E += max(abs(int(counts[a]) - c * star) for a in arith.units(q))
            agg = {
                "x": x,
                "star_count": star,
                "E": E,
                "max_abs_err": max(errs),
                "avg_abs_err": math.fsum(errs) / len(errs),
                "max_rel_err": max(rels),
                "avg_rel_err": math.fsum(rels) / len(rels),
                "sigma_hat": sigma_hat(max(errs), x),
            }
            if cfg.D is not None:
                agg["E_QD"] = math.fsum(_square_divisor_discrepancy(m, q, cfg.D) for q in mods)
            rep.aggregates.append(agg)
    rep.rows.sort(key=lambda r: (r[0], r[1], r[2]))
    rep.metadata = {
        "config_hash": cfg.fingerprint(),
        "version": __version__,
        "seed": cfg.seed,
        "wall_ms": round((time.perf_counter() - t0) * 1000, 3),
        "sup_convention": "max over a of the per-class sup over y",
        "moduli": mods,
    }
    return rep
