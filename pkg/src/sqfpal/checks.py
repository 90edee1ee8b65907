"""Registered verification checks.

Each check sweeps a fixed grid, compares a fast routine with an independent
reference (or with a frozen regression constant) and returns a
:class:`CheckResult`. ``sqfpal verify NAME`` and the acceptance suite both run
through :func:`run`.
"""

from __future__ import annotations

import inspect
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Callable

import numpy as np

from . import arith, baselines, digits, equidist, expsums, harmonics, largesieve, oracle, palsets

DEFAULT_SEED = 20240601
FIB_GRID = (1, 2, 3, 5, 8, 13, 21, 34, 50)


@dataclass
class CheckResult:
    name: str
    criterion: int | None
    passed: bool
    cases: int
    detail: str
    seconds: float = 0.0
    failure: str | None = None

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        crit = f"[{self.criterion}] " if self.criterion else ""
        msg = f"{tag} {crit}{self.name}: {self.detail} ({self.cases} cases, {self.seconds:.1f}s)"
        if self.failure:
            msg += f"\n    first failure: {self.failure}"
        return msg


@dataclass
class _Spec:
    fn: Callable[..., tuple[bool, int, str, str | None]]
    criterion: int | None
    help: str


REGISTRY: dict[str, _Spec] = {}


def register(name: str, criterion: int | None = None, help: str = ""):
    def deco(fn):
        REGISTRY[name] = _Spec(fn, criterion, help or (fn.__doc__ or "").strip().splitlines()[0])
        return fn

    return deco


def run(name: str, **opts: Any) -> CheckResult:
    spec = REGISTRY[name]
    params = inspect.signature(spec.fn).parameters
    kw = {k: v for k, v in opts.items() if k in params and v is not None}
    t0 = time.perf_counter()
    try:
        ok, cases, detail, failure = spec.fn(**kw)
    except baselines.BaselineError as exc:
        ok, cases, detail, failure = False, 0, "baseline unavailable", str(exc)
    return CheckResult(name, spec.criterion, ok, cases, detail, time.perf_counter() - t0, failure)


def run_all(**opts: Any) -> list[CheckResult]:
    return [run(name, **opts) for name in REGISTRY]


class _Tally:
    """Counts cases and remembers the first failing one."""

    def __init__(self) -> None:
        self.cases = 0
        self.failure: str | None = None

    def __call__(self, ok: bool, what: Any) -> None:
        self.cases += 1
        if not ok and self.failure is None:
            self.failure = what() if callable(what) else str(what)

    @property
    def ok(self) -> bool:
        return self.failure is None


# --- digits and palindrome sets --------------------------------------------


@register("enumerate", 1)
def check_enumerate(xmax: int = 10**5, seed: int = DEFAULT_SEED):
    """Fast palindrome enumeration and counting against string reversal."""
    t = _Tally()
    rng = np.random.default_rng(seed)
    for b in (2, 3, 10):
        naive = oracle.naive_pal_set(b, xmax)
        fast = palsets.palindromes_upto(b, xmax).tolist()
        t(fast == naive, f"b={b}: sets differ")
        xs = set(rng.integers(1, xmax + 1, size=300).tolist()) | {b**k for k in range(1, 20) if b**k <= xmax}
        arr = np.array(naive)
        for x in sorted(xs):
            want = int(np.searchsorted(arr, x, side="right"))
            got = palsets.count_upto(b, x)
            t(got == want, lambda: f"count_upto({b}, {x}) = {got}, naive {want}")
    return t.ok, t.cases, f"b in {{2,3,10}}, x <= {xmax}", t.failure


@register("squarefree", 2)
def check_squarefree(nmax: int = 10**6):
    """``is_squarefree`` against complete factorisation for every n <= nmax."""
    ref = oracle.squarefree_table_by_factorization(nmax)
    fast = np.fromiter((arith.is_squarefree(n) for n in range(1, nmax + 1)), dtype=bool, count=nmax)
    mask = arith.squarefree_mask(np.arange(1, nmax + 1))
    bad = np.flatnonzero(fast != ref[1:])
    bad2 = np.flatnonzero(mask != ref[1:])
    fail = None
    if bad.size:
        fail = f"is_squarefree({bad[0] + 1})"
    elif bad2.size:
        fail = f"squarefree_mask at {bad2[0] + 1}"
    return fail is None, nmax, f"n <= {nmax}, {int(ref[1:].sum())} square-free", fail


@register("rho", 3)
def check_rho(Lmax: int = 6, seed: int = DEFAULT_SEED):
    """Properties A-E and the involution of the digit reversal map, exhaustively."""
    t = _Tally()
    rng = np.random.default_rng(seed)
    for b in (2, 3, 10):
        for L in range(Lmax + 1):
            top = b ** (L + 1)
            n = np.arange(top, dtype=np.int64)
            r = digits.rho_array(n, b, L)
            for v in rng.integers(0, top, size=20).tolist():
                t(digits.rho(v, b, L) == r[v], f"rho_array vs rho at b={b}, L={L}, n={v}")
            t(np.array_equal(np.sort(r), n), f"A: not a bijection, b={b}, L={L}")
            t(np.array_equal(digits.rho_array(r, b, L), n), f"involution fails, b={b}, L={L}")
            for ell in range(L + 1):
                sel = n <= b**ell
                t(bool(np.all(r[sel] % b ** (L - ell) == 0)), f"B: b={b}, L={L}, l={ell}")
            for ell in range(L + 2):
                sel = n % b**ell == 0
                t(bool(np.all(r[sel] < b ** (L + 1 - ell))), f"C: b={b}, L={L}, l={ell}")
            sel = n % b != 0
            t(bool(np.all(r[sel] >= b**L)), f"E: b={b}, L={L}")
            if b in (2, 3) and L <= 5:
                # digit matrix; a pair is carry-free when every digit sum stays below b
                dig = np.stack([(n // b**j) % b for j in range(L + 1)], axis=1)
                free = np.all(dig[:, None, :] + dig[None, :, :] < b, axis=2)
                mi, ni = np.nonzero(free)
                lhs = digits.rho_array(mi + ni, b, L)
                t(np.array_equal(lhs, r[mi] + r[ni]), f"D: b={b}, L={L}")
    return t.ok, t.cases, f"b in {{2,3,10}}, L <= {Lmax}", t.failure


def _cover_in_range(skel: np.ndarray, step: int, span: int, s: int, e: int) -> np.ndarray:
    lo = np.clip(-((skel - s) // step), 0, span)  # ceil((s - a)/step)
    hi = np.clip((e - 1 - skel) // step + 1, 0, span)
    cnt = np.maximum(hi - lo, 0)
    if cnt.sum() == 0:
        return np.zeros(0, dtype=np.int64)
    base = np.repeat(skel + step * lo, cnt)
    off = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
    return np.sort(base + step * off)


@register("quasi", 4)
def check_quasi(Lmax: int = 8, chunk: int = 10**7):
    """Quasi-palindrome cover against a digit filter of the whole block."""
    t = _Tally()
    for b in (2, 10):
        unit_digit = np.array([gcd(d, b) == 1 for d in range(b)])
        for L in range(2, Lmax + 1):
            lams = range(1, L // 2 + 1)
            skels = {lam: np.array(digits.gen_quasi_skeleton(b, L, lam).members, dtype=np.int64) for lam in lams}
            for lam in lams:
                want = arith.euler_phi(b) * b ** (lam - 1)
                t(skels[lam].size == want, f"skeleton size b={b}, L={L}, lam={lam}")
                if L <= 6:
                    gen = sorted(ell for _, _, ell in digits.quasi_cover_enumerate(b, L, lam))
                    t(gen == digits.quasi_cover_array(b, L, lam).tolist(), f"generator vs array b={b}, L={L}, lam={lam}")
            for s in range(b**L, b ** (L + 1), chunk):
                e = min(s + chunk, b ** (L + 1))
                n = np.arange(s, e, dtype=np.int32 if b ** (L + 1) < 2**31 else np.int64)
                # depth[i] = number of leading j with d_j == d_{L-j}
                depth = np.zeros(n.size, dtype=np.int64)
                alive = np.ones(n.size, dtype=bool)
                for j in range(L // 2):
                    alive &= (n // b**j) % b == (n // b ** (L - j)) % b
                    depth += alive
                ok0 = unit_digit[n % b]
                for lam in lams:
                    brute = n[ok0 & (depth >= lam)]
                    fast = _cover_in_range(skels[lam], b**lam, b ** (L + 1 - 2 * lam), s, e)
                    t(np.array_equal(brute, fast), f"b={b}, L={L}, lam={lam}, range [{s}, {e})")
    return t.ok, t.cases, f"b in {{2,10}}, L <= {Lmax}, all levels", t.failure


@register("partition")
def check_partition(Lmax: int = 8, qmax: int = 30, ymax: int = 10**5):
    """Class counts sum to the coprime total, for blocks and for square-free members."""
    t = _Tally()
    for b in (2, 10):
        for L in range(Lmax + 1):
            arr = palsets.pal_block_array(b, L)
            coprime = int(np.count_nonzero(np.gcd(arr, b) == 1))
            t(arr.size == palsets.block_size(b, L), f"block size b={b}, L={L}")
            for q in range(1, qmax + 1):
                h = palsets.ap_histogram(b, L, q)
                t(int(h.sum()) == coprime, f"ap partition b={b}, L={L}, q={q}")
                if L <= 5:
                    ref = np.bincount(arr[np.gcd(arr, b) == 1] % q, minlength=q)
                    t(np.array_equal(h, ref), f"ap histogram b={b}, L={L}, q={q}")
        m = equidist.gather_members(b, ymax)
        total = int(m.sqf.sum())
        for q in range(1, 21):
            parts = sum(equidist.sqfree_pal_count(b, ymax, q, a) for a in range(q))
            t(parts == total, f"square-free partition b={b}, q={q}")
    return t.ok, t.cases, f"b in {{2,10}}, L <= {Lmax}, q <= {qmax}", t.failure


# --- exponential sums -------------------------------------------------------


@register("salie", 5)
def check_salie(qmax: int = 50):
    """Salie short sum against the direct quadratic Kloosterman sum modulo q^2."""
    t = _Tally()
    for q in range(1, qmax + 1):
        for c in range(q):
            for d in range(q):
                r = expsums.k2_salie(c, d, q)
                t(r.agree, lambda: f"k2_salie({c}, {d}, {q}): {r.via_formula} vs {r.via_definition}")
    return t.ok, t.cases, f"q <= {qmax}, all c, d mod q", t.failure


@register("crt", 6)
def check_crt(qmax: int = 40):
    """Twisted multiplicativity of K2 over coprime moduli."""
    t = _Tally()
    for q in range(1, qmax + 1):
        for r in range(1, qmax + 1):
            if gcd(q, r) != 1:
                continue
            for c in (0, 1, 2, 5, 7):
                for d in (0, 1, 2, 5, 7):
                    res = expsums.k2_crt_check(c, d, q, r)
                    t(res.agree, lambda: f"({c}, {d}; {q} x {r}): {res.lhs} vs {res.rhs}")
    return t.ok, t.cases, f"coprime q, r <= {qmax}", t.failure


@register("correlation", 7)
def check_correlation(qmax: int = 60, seed: int = DEFAULT_SEED):
    """K2 correlation equals the Ramanujan-sum form and obeys its divisor bound."""
    t = _Tally()
    rng = np.random.default_rng(seed)
    for q in range(1, qmax + 1):
        grid = expsums.correlation_grid(q)
        ct = np.array([arith.ramanujan_c(q, n) for n in range(q)])
        roots = np.array(expsums.square_roots_of_one(q))
        c = np.arange(q)[:, None, None]
        d = np.arange(q)[None, :, None]
        ram = np.abs(ct[(c - d * roots) % q].sum(axis=-1))
        cc = np.arange(q)
        bound = np.gcd(cc[:, None] ** 2 - cc[None, :] ** 2, q) * arith.tau(q)
        tol = 1e-9 * q * q
        bad = np.argwhere((np.abs(grid - ram) > tol) | (grid > bound + tol))
        t.cases += q * q - 1
        t(bad.size == 0, lambda: f"q={q}, (c, d)={tuple(bad[0])}")
        # the scalar entry point must agree with the grid
        for c0, d0 in rng.integers(0, q, size=(3, 2)).tolist():
            r = expsums.correlation_check(c0, d0, q)
            t(r.ok and abs(r.sum_form - grid[c0, d0]) <= tol, f"correlation_check({c0}, {d0}, {q})")
    return t.ok, t.cases, f"q <= {qmax}, all c, d mod q", t.failure


@register("gauss", 8)
def check_gauss(qmax: int = 200):
    """Forced vanishing of G*(a; q) when 16 | q or the odd part is not square-free."""
    t = _Tally()
    vanishing = 0
    for q in range(1, qmax + 1):
        for a in arith.units(q).tolist():
            g = expsums.gauss_star_structure_check(a, q)
            if g.predicted_vanish:
                vanishing += 1
                t(abs(g.value) <= 1e-6, lambda: f"|G*({a}; {q})| = {abs(g.value):.3g}")
    return t.ok, t.cases, f"q <= {qmax}, {vanishing} forced zeros", t.failure


@register("twisted")
def check_twisted(path: str | None = None):
    """Incomplete twisted K2 sums stay under the frozen multiple of q^eps min(N, sqrt q + N/sqrt q)."""
    grid = TWISTED_GRID
    rec = baselines.entry("twisted_k2", grid, path)
    val = measure_twisted(grid)
    ok = val <= rec["constant"]
    cases = _grid_size(grid) * grid["alphas"]
    return ok, cases, f"max ratio {val:.4f} vs frozen {rec['constant']:.4f}", None if ok else "ratio above baseline"


# --- harmonics --------------------------------------------------------------


@register("moment", 9)
def check_moment(bases=(2, 3), Nmax: int = 4, Kmax: int = 3):
    """Exact moment count against quadrature and a value-distribution convolution."""
    t = _Tally()
    t(harmonics.phi_moment_exact(2, 2, 2) == 6, "(2, 2, 2) != 6")
    for b in bases:
        for N in range(1, Nmax + 1):
            for K in range(1, Kmax + 1):
                ex = harmonics.phi_moment_exact(b, N, K)
                conv = oracle.moment_by_value_convolution(b, N, K)
                quad = oracle.quad_moment(b, N, K)
                t(ex == conv, f"({b}, {N}, {K}): carry DP {ex} vs convolution {conv}")
                t(abs(ex - quad) <= 1e-6 * ex, f"({b}, {N}, {K}): exact {ex} vs quadrature {quad}")
    return t.ok, t.cases, f"b in {bases}, N <= {Nmax}, K <= {Kmax}", t.failure


@register("shift", 10)
def check_shift(seed: int = DEFAULT_SEED, betas: int = 3):
    """Unit-averaged shifted product equals Phi_{N-M} at the shifted point."""
    t = _Tally()
    rng = np.random.default_rng(seed)
    for q in (3, 5, 7, 11):
        for b in (2, 10):
            if gcd(q, b) != 1:
                continue
            for N in range(6):
                for M in range(N + 1):
                    for delta in (1, 2):
                        for beta in rng.random(betas).tolist():
                            r = harmonics.algebraic_shift_check(q, b, beta, M, N, delta)
                            t(r.agree, lambda: f"q={q}, b={b}, M={M}, N={N}, delta={delta}, beta={beta}")
    return t.ok, t.cases, "q in {3,5,7,11}, b in {2,10}, M <= N <= 5", t.failure


@register("sum-product", 11)
def check_sum_product(trials: int = 200, seed: int = DEFAULT_SEED, xmax: int = 10**6):
    """Complete and incomplete palindromic exponential sums against their product bounds."""
    t = _Tally()
    rng = np.random.default_rng(seed)
    alphas = rng.random(trials).tolist()
    for b in (2, 10):
        Ns = [N for N in range(0, 40) if b ** (2 * N + 1) <= xmax]
        xs = sorted({xmax, *rng.integers(1, xmax + 1, size=3).tolist()})
        for alpha in alphas:
            for N in Ns:
                r = harmonics.pal_exp_sum_check(alpha, b, N)
                t(r.holds, lambda: f"block b={b}, N={N}, alpha={alpha}: {r.lhs} > {r.rhs}")
            for x in xs:
                r = harmonics.incomplete_sum_check(alpha, b, x)
                t(r.holds, lambda: f"incomplete b={b}, x={x}, alpha={alpha}: {r.lhs} > {r.rhs}")
    return t.ok, t.cases, f"{trials} random alpha, b in {{2,10}}", t.failure


@register("moment-square-moduli")
def check_moment_square_moduli(path: str | None = None):
    """Moments over square-moduli fractions stay under the frozen multiple of the bound shape."""
    grid = MOMENT_SQ_GRID
    rec = baselines.entry("moment_square_moduli", grid, path)
    val = measure_moment_square_moduli(grid)
    ok = val <= rec["constant"]
    return ok, _grid_size(grid), f"max ratio {val:.4f} vs frozen {rec['constant']:.4f}", None if ok else "ratio above baseline"


# --- appendix inequalities --------------------------------------------------


@register("vdc", 12)
def check_vdc(trials: int = 100, seed: int = DEFAULT_SEED, nmax: int = 200):
    """van der Corput's inequality on seeded random unit sequences, every H <= N."""
    t = _Tally()
    rng = np.random.default_rng(seed)
    for i in range(trials):
        N = int(rng.integers(1, nmax + 1))
        z = np.exp(2j * np.pi * rng.random(N))
        for H, r in enumerate(oracle.vdc_all_H(z), start=1):
            t(r.holds, lambda: f"trial {i}, N={N}, H={H}: {r.lhs} > {r.rhs}")
        # the literal per-H routine on a few shifts
        for H in {1, N, int(rng.integers(1, N + 1))}:
            r = oracle.vdc_check(oracle.SequenceSample(tuple(z.tolist()), H))
            t(r.holds, lambda: f"vdc_check trial {i}, N={N}, H={H}")
    return t.ok, t.cases, f"{trials} sequences, seed {seed}", t.failure


@register("cong", 13)
def check_cong(Mmax: int = 50, Nmax: int = 50, qmax: int = 60, gmax: int = 300):
    """Congruence-count lemma on the full grid and the gcd-sum lemma."""
    t = _Tally()
    lhs = oracle.cong_bound_grid(Mmax, Nmax, qmax)
    M = np.arange(Mmax + 1)[:, None]
    N = np.arange(Nmax + 1)[None, :]
    for q in range(1, qmax + 1):
        tq = arith.tau(q)
        # lhs <= MN tau/q + M tau, cleared of denominators
        ok = lhs[1:, 1:, q] * q <= (M * N * tq + M * tq * q)[1:, 1:]
        t.cases += ok.size - 1
        bad = np.argwhere(~ok)
        t(bad.size == 0, lambda: f"q={q}, (M, N)={tuple(bad[0] + 1)}")
    for M0, N0, q0 in ((1, 1, 1), (4, 10, 6), (10, 10, 1), (Mmax, Nmax, qmax)):
        t(oracle.cong_bound_check(M0, N0, q0).lhs == lhs[M0, N0, q0], f"grid vs direct at {(M0, N0, q0)}")
    n = np.arange(1, gmax + 1)
    for q in range(1, gmax + 1):
        cum = np.cumsum(np.gcd(n, q))
        ok = cum <= n * arith.tau(q)
        t.cases += gmax - 1
        t(bool(ok.all()), lambda: f"gcd sum q={q}, N={int(np.argmin(ok)) + 1}")
    for N0, q0 in ((1, 1), (gmax, gmax), (97, 60)):
        g = arith.gcd_sum_check(N0, q0)
        t(g.holds and g.lhs == int(np.gcd(np.arange(1, N0 + 1), q0).sum()), f"gcd_sum_check({N0}, {q0})")
    return t.ok, t.cases, f"M, N <= {Mmax}, q <= {qmax}; gcd sums to {gmax}", t.failure


@register("tail")
def check_tail(kmax: int = 50, Ds=(1, 10, 100, 1000)):
    """Truncated Mobius series against 6/pi^2 S(k) within 1/D."""
    t = _Tally()
    for k in range(1, kmax + 1):
        for D in Ds:
            r = arith.singular_series_tail(k, D)
            t(r.holds, f"k={k}, D={D}: error {r.error}")
    return t.ok, t.cases, f"k <= {kmax}", t.failure


@register("bezout")
def check_bezout(nmax: int = 100):
    """Reciprocity of modular inverses: inv(m)/n + inv(n)/m = 1/(mn) mod 1."""
    t = _Tally()
    for m in range(1, nmax + 1):
        for n in range(1, nmax + 1):
            if gcd(m, n) == 1:
                t(arith.bezout_check(m, n).holds, f"({m}, {n})")
    return t.ok, t.cases, f"coprime m, n <= {nmax}", t.failure


# --- large sieve and Banks-Shparlinski regressions --------------------------


@register("sieve", 14)
def check_sieve(path: str | None = None):
    """Spacing supremum and quadratic form relative to Delta_0.1 stay under frozen constants."""
    rec1 = baselines.entry("spacing_sup", SPACING_GRID, path)
    rec2 = baselines.entry("ls_quadratic_form", LS_GRID, path)
    v1 = measure_spacing(SPACING_GRID)
    v2 = measure_ls(LS_GRID)
    ok1, ok2 = v1 <= rec1["constant"], v2 <= rec2["constant"]
    detail = f"spacing {v1:.4f} <= {rec1['constant']:.4f}; quadratic form {v2:.4f} <= {rec2['constant']:.4f}"
    fail = None if ok1 and ok2 else ("spacing" if not ok1 else "quadratic form") + " above baseline"
    cases = _grid_size(SPACING_GRID) + _grid_size(LS_GRID, ("D", "q", "N", "sequences"))
    return ok1 and ok2, cases, detail, fail


@register("bs", 15)
def check_bs(path: str | None = None):
    """Palindromes in progressions and divisible by m stay under frozen normalised ratios."""
    rec1 = baselines.entry("bs_max_ratio", BS_GRID, path)
    rec2 = baselines.entry("count_divisible", DIV_GRID, path)
    v1, v2 = measure_bs(BS_GRID), measure_divisible(DIV_GRID)
    ok1, ok2 = v1 <= rec1["constant"], v2 <= rec2["constant"]
    detail = f"AP ratio {v1:.4f} <= {rec1['constant']:.4f}; divisibility ratio {v2:.4f} <= {rec2['constant']:.4f}"
    fail = None if ok1 and ok2 else ("AP ratio" if not ok1 else "divisibility ratio") + " above baseline"
    cases = _grid_size(BS_GRID, ("L", "q")) + _grid_size(DIV_GRID, ("L", "m"))
    return ok1 and ok2, cases, detail, fail


@register("star-growth")
def check_star_growth(path: str | None = None):
    """|P*_b(x)| / sqrt(x) stays inside the frozen band [c1, c2]."""
    lo = baselines.entry("star_count_c1", STAR_GRID, path)["constant"]
    hi = baselines.entry("star_count_c2", STAR_GRID, path)["constant"]
    vlo, vhi = measure_star(STAR_GRID)
    ok = lo <= vlo and vhi <= hi
    return ok, len(STAR_GRID["b"]) * len(_star_xs(STAR_GRID)), f"ratios in [{vlo:.4f}, {vhi:.4f}] within [{lo:.4f}, {hi:.4f}]", None if ok else "outside band"


# --- square pairs and equidistribution --------------------------------------


def square_pair_profile(b: int = 10, L: int = 10, q: int = 1, a: int = 0, Nmin: int = 10) -> list[tuple[int, int, float]]:
    """``(N, count, count / (|Pi_b(L)| N^(-3/16)))`` over dyadic ``N = Nmin 2^k``."""
    size = palsets.block_size(b, L)
    out = []
    N = Nmin
    while (N // 2 + 1) ** 2 < b ** (L + 1):
        c = palsets.count_square_pairs(b, L, q, a, N)
        out.append((N, c, c / (size * N ** (-3 / 16))))
        N *= 2
    return out


@register("square-pairs", 16)
def check_square_pairs(Lmax: int = 5, Nmax: int = 8):
    """Square-divisor pair counts against the double loop; dyadic trend at b=10, L=10."""
    t = _Tally()
    for b in (2, 10):
        for L in range(Lmax + 1):
            for q in (1, 3, 7):
                for a in range(q):
                    for N in range(1, Nmax + 1):
                        want = oracle.naive_square_pair_count(b, L, q, a, N)
                        for strat in ("auto", "residues", "palindromes"):
                            got = palsets.count_square_pairs(b, L, q, a, N, strategy=strat)
                            t(got == want, lambda: f"{strat} ({b}, {L}, {q}, {a}, {N}) = {got}, naive {want}")
    prof = square_pair_profile()
    rises = [(n0, c0, n1, c1) for (n0, c0, _), (n1, c1, _) in zip(prof, prof[1:]) if c1 > c0]
    t(not rises, lambda: "dyadic counts increase: " + ", ".join(f"N={a}->{c}: {b0}->{d}" for a, b0, c, d in rises))
    ratios = ", ".join(f"{N}:{r:.3g}" for N, _, r in prof)
    return t.ok, t.cases, f"oracle grid b in {{2,10}}, L <= {Lmax}; ratio to |Pi| N^-3/16 {{{ratios}}}", t.failure


@register("equidist-sweep")
def check_equidist_sweep(xmax: int = 10**4):
    """The member sweep for sup over y matches scanning every integer y."""
    t = _Tally()
    cases = [(10, 1), (10, 7), (10, 13), (2, 1), (2, 5), (2, 7), (3, 1), (3, 5), (3, 7)]
    for b, q in cases:
        fast = equidist.discrepancy(b, xmax, q)
        slow = oracle.naive_discrepancy(b, xmax, q)
        t(abs(fast - slow) <= 1e-9 * max(1.0, slow), f"b={b}, q={q}: sweep {fast} vs scan {slow}")
    for b, y, q, a in ((10, 100, 1, 0), (10, 100, 3, 0), (2, 100, 5, 2), (10, 5000, 7, 3), (3, 2000, 4, 1)):
        t(equidist.sqfree_pal_count(b, y, q, a) == oracle.naive_sqfree_pal_count(b, y, q, a), f"count ({b}, {y}, {q}, {a})")
    return t.ok, t.cases, f"x <= {xmax}", t.failure


TREND_CONFIG = dict(base=10, xs=(10**6, 10**7, 10**8, 10**9, 10**10), moduli=(7, 13, 17, 19))


@register("trend", 17)
def check_trend(threads: int = 1):
    """Relative discrepancy shrinks from x=10^6 to 10^10 and the implied rate exponent is positive."""
    t0 = time.perf_counter()
    rep = equidist.run_experiment(equidist.ExperimentConfig(**TREND_CONFIG, threads=threads))
    wall = time.perf_counter() - t0
    aggs = {a["x"]: a for a in rep.aggregates}
    first, last = aggs[10**6]["max_rel_err"], aggs[10**10]["max_rel_err"]
    sig = [a["sigma_hat"] for a in rep.aggregates]
    limit = 120 if threads >= 8 else 600
    t = _Tally()
    t(last < first, f"max relative discrepancy {last} at 1e10 not below {first} at 1e6")
    t(all(s > 0 for s in sig), f"sigma_hat {sig}")
    t(wall < limit, f"wall time {wall:.1f}s over {limit}s at {threads} threads")
    sig_txt = ", ".join(f"{s:.3f}" for s in sig)
    return t.ok, t.cases, f"max rel err {first:.4f} -> {last:.4f}; sigma_hat [{sig_txt}]; {wall:.1f}s", t.failure


@register("determinism", 18)
def check_determinism(thread_counts=(1, 4, 8)):
    """Experiment CSV is byte-identical across worker counts."""
    cfg = dict(base=10, xs=(10**4, 10**6, 10**8), moduli=(7, 13, 17, 19), D=4)
    outs = {T: equidist.run_experiment(equidist.ExperimentConfig(**cfg, threads=T)).to_csv() for T in thread_counts}
    ref = outs[thread_counts[0]]
    bad = [T for T, o in outs.items() if o != ref]
    return not bad, len(thread_counts), f"{len(ref)} bytes, threads {thread_counts}", (f"threads {bad} differ" if bad else None)


# --- regression grids and measurements --------------------------------------

EPS = 0.1
SPACING_GRID = {"D": list(FIB_GRID), "q": list(FIB_GRID), "N": list(range(1, 51)), "eps": EPS}
LS_GRID = {"D": 50, "q": 50, "N": 50, "sequences": 20, "seed": DEFAULT_SEED, "eps": EPS}
BS_GRID = {"b": 10, "L": list(range(1, 11)), "q": 500}
DIV_GRID = {"b": 10, "L": list(range(1, 11)), "m": 500}
STAR_GRID = {"b": [2, 3, 10], "log10_x_quarters": [8, 48]}
TWISTED_GRID = {
    "q": [5, 7, 11, 31, 64, 101, 257, 1009],
    "N": [10, 100, 1000, 10000],
    "a": [1, 2],
    "c": [0, 1, 3],
    "alphas": 4,
    "seed": DEFAULT_SEED,
    "eps": expsums.TWISTED_EPSILON,
}
MOMENT_SQ_GRID = {"b": [2, 3], "N": [1, 2, 3], "K": [1, 2], "q": [1, 2, 3, 5], "D": [1, 2, 3, 5, 8], "beta": ["0", "1/3", "1/7"]}


def _grid_size(grid: dict, keys=None) -> int:
    """Number of grid points; list axes count their entries, integer axes ``1..n``."""
    size = 1
    for k in keys or [k for k, v in grid.items() if isinstance(v, list)]:
        v = grid[k]
        size *= len(v) if isinstance(v, list) else int(v)
    return size


def measure_spacing(grid: dict) -> float:
    best = 0.0
    for q in grid["q"]:
        for D in grid["D"]:
            sups = largesieve.spacing_sup_all_N(D, q, grid["N"])
            for N, v in sups.items():
                best = max(best, v / largesieve.delta_bound(D, N, q, grid["eps"]))
    return best


def measure_ls(grid: dict) -> float:
    rng = np.random.default_rng(grid["seed"])
    best = 0.0
    for N in range(1, grid["N"] + 1):
        g = rng.standard_normal((grid["sequences"], 2 * N + 1)) + 1j * rng.standard_normal((grid["sequences"], 2 * N + 1))
        energy = (np.abs(g) ** 2).sum(axis=1)
        for q in range(1, grid["q"] + 1):
            vals = largesieve.ls_quadratic_form_all_D(g, grid["D"], q)
            D = np.arange(1, grid["D"] + 1)
            delta = np.array([largesieve.delta_bound(d, N, q, grid["eps"]) for d in D])
            best = max(best, float((vals / (energy[:, None] * delta[None, :])).max()))
    return best


def measure_bs(grid: dict) -> float:
    return max(palsets.bs_max_ratio(grid["b"], L, q) for L in grid["L"] for q in range(1, grid["q"] + 1))


def measure_divisible(grid: dict) -> float:
    b = grid["b"]
    best = 0.0
    for L in grid["L"]:
        size = palsets.block_size(b, L)
        for m in range(1, grid["m"] + 1):
            best = max(best, palsets.count_divisible(b, L, m) / (size / math.sqrt(m)))
    return best


def _star_xs(grid: dict) -> list[int]:
    lo, hi = grid["log10_x_quarters"]
    return sorted({round(10 ** (k / 4)) for k in range(lo, hi + 1)})


def measure_star(grid: dict) -> tuple[float, float]:
    ratios = [palsets.count_upto(b, x, palsets.Variant.STAR) / math.sqrt(x) for b in grid["b"] for x in _star_xs(grid)]
    return min(ratios), max(ratios)


def measure_twisted(grid: dict) -> float:
    rng = np.random.default_rng(grid["seed"])
    alphas = rng.random(grid["alphas"]).tolist()
    best = 0.0
    for q in grid["q"]:
        for a in grid["a"]:
            if gcd(a, q) != 1:
                continue
            for c in grid["c"]:
                for N in grid["N"]:
                    for alpha in alphas:
                        best = max(best, expsums.twisted_ratio(alpha, a, c, q, N, grid["eps"]))
    return best


def measure_moment_square_moduli(grid: dict) -> float:
    best = 0.0
    for b in grid["b"]:
        for N in grid["N"]:
            for K in grid["K"]:
                for q in grid["q"]:
                    for D in grid["D"]:
                        rhs = largesieve.moment_square_moduli_rhs(b, N, K, q, D)
                        for beta in grid["beta"]:
                            lhs = largesieve.phi_moment_square_moduli(b, N, K, q, D, Fraction(beta))
                            best = max(best, lhs / rhs)
    return best


def calibrate() -> dict[str, dict[str, Any]]:
    """Measure every regression constant on its grid, rounded outward."""
    out: dict[str, dict[str, Any]] = {}

    def put(key: str, grid: dict, value: float, down: bool = False, **extra: Any) -> None:
        out[key] = {"constant": baselines.freeze(value, down), "grid_hash": baselines.grid_hash(grid), **extra}

    put("spacing_sup", SPACING_GRID, measure_spacing(SPACING_GRID), epsilon=EPS)
    put("ls_quadratic_form", LS_GRID, measure_ls(LS_GRID), epsilon=EPS)
    put("bs_max_ratio", BS_GRID, measure_bs(BS_GRID))
    put("count_divisible", DIV_GRID, measure_divisible(DIV_GRID))
    lo, hi = measure_star(STAR_GRID)
    put("star_count_c1", STAR_GRID, lo, down=True)
    put("star_count_c2", STAR_GRID, hi)
    put("twisted_k2", TWISTED_GRID, measure_twisted(TWISTED_GRID), epsilon=expsums.TWISTED_EPSILON)
    put("moment_square_moduli", MOMENT_SQ_GRID, measure_moment_square_moduli(MOMENT_SQ_GRID))
    return out
