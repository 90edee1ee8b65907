"""Brute-force references.

Nothing here imports the fast paths; each routine is the literal definition,
written for clarity over speed, so agreement with the optimised code is
evidence rather than tautology.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import NamedTuple

import numpy as np

NAIVE_PAL_CAP = 10**7
NAIVE_SQF_CAP = 10**9


def _base_string(n: int, b: int) -> list[int]:
    out = []
    while n:
        out.append(n % b)
        n //= b
    return out[::-1]


def _is_pal(n: int, b: int) -> bool:
    s = _base_string(n, b)
    return s == s[::-1]


def naive_pal_set(b: int, x: int) -> list[int]:
    if x > NAIVE_PAL_CAP:
        raise ValueError("naive palindrome scan capped at 10^7")
    return [n for n in range(1, int(x) + 1) if _is_pal(n, b)]


def _trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def naive_squarefree(n: int) -> bool:
    if n < 1 or n > NAIVE_SQF_CAP:
        raise ValueError("naive square-free test needs 1 <= n <= 10^9")
    return all(e == 1 for _, e in _trial_factor(n))


def squarefree_table_by_factorization(limit: int) -> np.ndarray:
    """``mu(n)^2`` for ``n <= limit`` by completely factoring every ``n``.

    Uses a smallest-prime-factor table and peels factors off all ``n`` at once;
    a repeated prime in the chain means a square divisor.
    """
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p] = np.where(spf[p::p] == 0, p, spf[p::p])
    rest = np.arange(limit + 1, dtype=np.int64)
    rest[0] = 1
    prev = np.zeros(limit + 1, dtype=np.int64)
    ok = np.ones(limit + 1, dtype=bool)
    ok[0] = False
    while True:
        live = rest > 1
        if not live.any():
            break
        p = np.where(live, spf[rest], 0)
        ok &= ~(live & (p == prev))
        prev = np.where(live, p, prev)
        rest = np.where(live, rest // np.maximum(p, 1), rest)
    return ok


def _euler_phi(n: int) -> int:
    r = n
    for p, _ in _trial_factor(n):
        r = r // p * (p - 1)
    return r


def ramanujan_c_direct(q: int, n: int) -> complex:
    terms = [cmath.exp(2j * math.pi * h * n / q) for h in range(q) if gcd(h, q) == 1] if q > 1 else [1]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


@dataclass(frozen=True)
class SequenceSample:
    z: tuple[complex, ...]
    H: int

    def __post_init__(self) -> None:
        if self.H < 1 or len(self.z) < 1:
            raise ValueError("need H >= 1 and at least one term")


class Inequality(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def vdc_check(s: SequenceSample, tol: float | None = None) -> Inequality:
    """van der Corput: ``|sum z|^2 <= (N+H-1)/H sum_{|h|<H} (1-|h|/H) sum z_{n+h} conj z_n``."""
    z = np.asarray(s.z, dtype=np.complex128)
    N, H = z.size, s.H
    lhs = abs(z.sum()) ** 2
    acc = 0j
    for h in range(-H + 1, H):
        if abs(h) >= N:
            continue
        if h >= 0:
            corr = np.sum(z[h:] * np.conj(z[: N - h]))
        else:
            corr = np.sum(z[: N + h] * np.conj(z[-h:]))
        acc += (1 - abs(h) / H) * corr
    rhs_c = (N + H - 1) / H * acc
    tol = 1e-7 * N * N if tol is None else tol
    holds = abs(rhs_c.imag) <= tol and lhs <= rhs_c.real + tol
    return Inequality(float(lhs), float(rhs_c.real), bool(holds))


def vdc_all_H(z) -> list[Inequality]:
    """:func:`vdc_check` for every ``H = 1..N`` sharing one set of autocorrelations."""
    z = np.asarray(z, dtype=np.complex128)
    N = z.size
    lhs = float(abs(z.sum()) ** 2)
    r = np.array([np.vdot(z[: N - h], z[h:]) for h in range(N)])
    out = []
    for H in range(1, N + 1):
        h = np.arange(1, H)
        acc = r[0].real + 2 * math.fsum(((1 - h / H) * r[1:H].real).tolist())
        rhs = (N + H - 1) / H * acc
        out.append(Inequality(lhs, rhs, lhs <= rhs + 1e-7 * N * N))
    return out


class CongCheck(NamedTuple):
    lhs: int
    rhs: float
    holds: bool


def cong_bound_check(M: int, N: int, q: int) -> CongCheck:
    lhs = 0
    for m in range(1, M + 1):
        counts: dict[int, int] = {}
        for n in range(1, N + 1):
            r = m * n % q
            counts[r] = counts.get(r, 0) + 1
        lhs += max(counts.values())
    t = sum(1 for d in range(1, q + 1) if q % d == 0)
    rhs = M * N * t / q + M * t
    return CongCheck(lhs, rhs, lhs <= rhs)


def cong_bound_grid(Mmax: int, Nmax: int, qmax: int) -> np.ndarray:
    """``lhs[M, N, q]`` of the congruence lemma for all ``M, N, q`` up to the maxima."""
    out = np.zeros((Mmax + 1, Nmax + 1, qmax + 1), dtype=np.int64)
    for q in range(1, qmax + 1):
        best = np.zeros((Mmax + 1, Nmax + 1), dtype=np.int64)
        for m in range(1, Mmax + 1):
            counts = np.zeros(q, dtype=np.int64)
            top = 0
            for n in range(1, Nmax + 1):
                r = m * n % q
                counts[r] += 1
                top = max(top, counts[r])
                best[m, n] = top
        out[:, :, q] = np.cumsum(best, axis=0)
    return out


def _phi_direct(t: np.ndarray, b: int) -> np.ndarray:
    acc = np.zeros(t.shape, dtype=np.complex128)
    for m in range(b):
        acc += np.exp(2j * np.pi * ((m * t) % 1.0))
    return np.abs(acc)


def _quad_at(b: int, N: int, K: int, P: int) -> float:
    k = np.arange(P, dtype=np.int64)
    vals = np.ones(P, dtype=np.float64)
    for n in range(1, N):
        w = b**n + b ** (2 * N - n)
        if P * w < 2**62:
            r = (k * w) % P
        else:
            r = np.array([(int(i) * w) % P for i in k], dtype=np.int64)
        vals *= _phi_direct(r.astype(np.float64) / P, b)
    return math.fsum((vals ** (2 * K)).tolist()) / P


def quad_moment(b: int, N: int, K: int, panels: int | None = None, rtol: float = 1e-6) -> float:
    """Composite rectangle rule for ``int_0^1 Phi_N^(2K)``, doubling panels until stable."""
    if N <= 1:
        return 1.0
    P = panels if panels is not None else 4 * K * b ** (2 * N)
    prev = _quad_at(b, N, K, P)
    for _ in range(24):
        P *= 2
        cur = _quad_at(b, N, K, P)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur
        prev = cur
    raise ArithmeticError("quadrature did not stabilise after 24 doublings")


def moment_by_value_convolution(b: int, N: int, K: int) -> int:
    """Exact moment as ``sum_s r_K(s)^2`` with ``r_K`` the K-fold value distribution."""
    if N <= 1:
        return 1
    vals = {0: 1}
    for n in range(1, N):
        w = b**n + b ** (2 * N - n)
        nxt: dict[int, int] = {}
        for v, c in vals.items():
            for d in range(b):
                nxt[v + d * w] = nxt.get(v + d * w, 0) + c
        vals = nxt
    rk = {0: 1}
    for _ in range(K):
        nxt = {}
        for v, c in rk.items():
            for u, c2 in vals.items():
                nxt[v + u] = nxt.get(v + u, 0) + c * c2
        rk = nxt
    return sum(c * c for c in rk.values())


@lru_cache(maxsize=32)
def _naive_block(b: int, L: int) -> tuple[int, ...]:
    return tuple(n for n in range(b**L, b ** (L + 1)) if _is_pal(n, b))


def naive_square_pair_count(b: int, L: int, q: int, a: int, N: float) -> int:
    if b ** (L + 1) > NAIVE_PAL_CAP:
        raise ValueError("naive square-pair count capped at b^(L+1) <= 10^7")
    pals = [l for l in _naive_block(b, L) if l % q == a % q and gcd(l, b) == 1]
    total = 0
    for n in range(math.floor(N / 2) + 1, math.floor(N) + 1):
        for l in pals:
            if l % (n * n) == 0:
                total += 1
    return total


def naive_discrepancy(b: int, x: int, q: int) -> float:
    """``max_{(a,q)=1} max_{1 <= y <= x} |count - main|`` scanning every integer ``y``."""
    mb = b**3 - b

    def series(n: int) -> float:
        s = 1.0
        for p, _ in _trial_factor(n):
            s *= p * p / (p * p - 1)
        return s

    c = 6 * series(mb) * series(q) / (math.pi**2 * q)
    classes = [a for a in range(q) if gcd(a, q) == 1]
    counts = {a: 0 for a in classes}
    star = 0
    worst = 0.0
    for y in range(1, int(x) + 1):
        if _is_pal(y, b) and gcd(y, mb) == 1:
            star += 1
            if y % q in counts and naive_squarefree(y):
                counts[y % q] += 1
        for a in classes:
            worst = max(worst, abs(counts[a] - c * star))
    return worst


def naive_sqfree_pal_count(b: int, y: int, q: int, a: int) -> int:
    mb = b**3 - b
    return sum(
        1
        for n in naive_pal_set(b, y)
        if gcd(n, mb) == 1 and n % q == a % q and naive_squarefree(n)
    )
