"""Digit harmonics: ``phi_b``, the palindromic product ``Phi_N`` and their moments.

``Phi_N(alpha) = prod_{1 <= n < N} phi_b(alpha (b^n + b^(2N-n)))``. Arguments are
reduced modulo 1 exactly (through :class:`fractions.Fraction`) before any
floating point work, so huge weights ``b^(2N-n)`` cost no accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Union

import numpy as np

from . import palsets

Real = Union[int, float, Fraction]
_NEAR_INT = 1e-12


@dataclass(frozen=True)
class HarmonicParams:
    base: int
    N: int
    K: int = 1
    alpha: float = 0.0

    def __post_init__(self) -> None:
        if self.base < 2 or self.N < 0:
            raise ValueError("need base >= 2 and N >= 0")
        if self.K < 1:
            raise ValueError("moment exponent K must be >= 1")


def frac_mul(alpha: Real, w: int) -> float:
    """``alpha * w mod 1`` computed exactly, returned as a float in ``[0, 1)``."""
    fa = Fraction(alpha)
    num = fa.numerator * w
    return (num % fa.denominator) / fa.denominator


def _phi_reduced(t: np.ndarray | float, b: int):
    """``phi_b`` at arguments already reduced to ``[0, 1)``."""
    t = np.asarray(t, dtype=np.float64)
    t = np.where(t > 0.5, t - 1.0, t)
    s = np.sin(np.pi * t)
    near = np.abs(t) < _NEAR_INT
    safe = np.where(near, 1.0, s)
    val = np.abs(np.sin(np.pi * b * t) / safe)
    return np.where(near, float(b), val)


def phi_little(alpha: Real, b: int) -> float:
    """``|sum_{0 <= m < b} e(alpha m)|``."""
    return float(_phi_reduced(frac_mul(alpha, 1), b))


def weights(b: int, N: int) -> list[int]:
    return [b**n + b ** (2 * N - n) for n in range(1, N)]


def phi_big(alpha: Real, b: int, N: int) -> float:
    if N <= 1:
        return 1.0
    ts = [frac_mul(alpha, w) for w in weights(b, N)]
    return float(np.prod(_phi_reduced(np.array(ts), b)))


def phi_big_at_fractions(h: np.ndarray, q: int, b: int, N: int) -> np.ndarray:
    """``Phi_N(h/q)`` for an integer array ``h``, exact reduction in integers."""
    h = np.asarray(h, dtype=object)
    out = np.ones(h.shape, dtype=np.float64)
    for w in weights(b, N):
        r = (h * w) % q
        out *= _phi_reduced(np.asarray(r, dtype=np.float64) / q, b)
    return out


class Inequality(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def exp_sum(alpha: Real, values: np.ndarray) -> complex:
    """``sum_n e(alpha n)`` with the phase of each term reduced accurately.

    ``n = hi * 2^20 + lo``; ``alpha * 2^20 mod 1`` is exact, so the rounding
    error per phase stays near ``(hi + lo * |alpha|) * 2^-53``.
    """
    v = np.asarray(values, dtype=np.int64)
    a = float(alpha)
    c1 = frac_mul(alpha, 1 << 20)
    hi, lo = v >> 20, v & ((1 << 20) - 1)
    ph = np.mod(hi.astype(np.float64) * c1 + np.mod(lo.astype(np.float64) * a, 1.0), 1.0)
    z = np.exp(2j * np.pi * ph)
    return complex(math.fsum(z.real.tolist()), math.fsum(z.imag.tolist()))


def pal_exp_sum_check(alpha: Real, b: int, N: int) -> Inequality:
    """``|sum_{n in Pi_b(2N)} e(alpha n)| <= b^2 Phi_N(alpha)``."""
    if b ** (2 * N + 1) > 10**12:
        raise ValueError("block too large for direct enumeration")
    pals = palsets.pal_block_array(b, 2 * N)
    lhs = abs(exp_sum(alpha, pals))
    rhs = b * b * phi_big(alpha, b, N)
    tol = 1e-9 * pals.size
    return Inequality(lhs, rhs, lhs <= rhs + tol)


def even_palindromes(b: int, x: int) -> np.ndarray:
    """``P^0_b(x)``: palindromes ``<= x`` with an odd number of digits."""
    parts = []
    L = 0
    while b**L <= x:
        arr = palsets.pal_block_array(b, L)
        parts.append(arr[arr <= x])
        L += 2
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def incomplete_sum_check(alpha: Real, b: int, x: int) -> Inequality:
    if x > 10**9:
        raise ValueError("x capped at 10^9")
    members = even_palindromes(b, x)
    lhs = abs(exp_sum(alpha, members))
    Nmax = 0
    while b ** (2 * (Nmax + 1)) <= x:
        Nmax += 1
    rhs = 0.0
    for N in range(Nmax + 1):
        for M in range(N + 1):
            rhs += phi_big(Fraction(alpha) * b ** (N - M), b, M)
    rhs *= b * b
    return Inequality(lhs, rhs, lhs <= rhs + 1e-9 * max(members.size, 1))


def _digit_difference_weights(b: int, K: int) -> dict[int, int]:
    """Number of ``(u, v)`` in ``[0,b)^K x [0,b)^K`` with ``sum u - sum v = t``."""
    one = np.ones(b, dtype=object)
    s = np.array([1], dtype=object)
    for _ in range(K):
        s = np.convolve(s, one)
    # s[k] = #{u : sum u = k}; the difference distribution is its autocorrelation
    diff = np.convolve(s, s[::-1])
    off = K * (b - 1)
    return {t - off: int(c) for t, c in enumerate(diff) if c}


MOMENT_BUDGET = 64


def phi_moment_exact(b: int, N: int, K: int) -> int:
    """``int_0^1 Phi_N(alpha)^(2K) d alpha`` as an exact integer.

    Expanding the 2K-th power turns the integral into the number of digit
    tuples with ``sum_n t_n (b^n + b^(2N-n)) = 0``, where ``t_n`` is a sum of K
    digits minus a sum of K digits. The count runs as a carry DP: the low
    half is checked by base-``b`` carries from position 1 upward, the high half
    by a Horner accumulator ``g``; both stay within ``[-K, K]`` on any path
    that can still close.
    """
    if b < 2 or N < 0 or K < 1:
        raise ValueError("need b >= 2, N >= 0, K >= 1")
    if K * max(N - 1, 0) * (b - 1) > MOMENT_BUDGET:
        raise ValueError("moment exceeds the coefficient budget K(N-1)(b-1) <= 64")
    if N <= 1:
        return 1
    wt = _digit_difference_weights(b, K)
    states: dict[tuple[int, int], int] = {(0, 0): 1}
    for _ in range(1, N):
        nxt: dict[tuple[int, int], int] = {}
        for (c, g), cnt in states.items():
            for t, w in wt.items():
                s = c + t
                if s % b:
                    continue
                c2, g2 = s // b, g * b + t
                if abs(c2) > K or abs(g2) > K:
                    continue
                key = (c2, g2)
                nxt[key] = nxt.get(key, 0) + cnt * w
        states = nxt
    total = 0
    for (c, g), cnt in states.items():
        if c % b == 0 and g == -(c // b):
            total += cnt
    return total


def moment_upper_bound_ratio(b: int, N: int, K: int) -> float:
    """Exact moment divided by the leading term ``b^(2(K-1)N + 2)`` (reported only)."""
    return phi_moment_exact(b, N, K) / b ** (2 * (K - 1) * N + 2)


class ShiftCheck(NamedTuple):
    lhs: float
    rhs: float
    agree: bool


def algebraic_shift_check(q: int, b: int, beta: Real, M: int, N: int, delta: float) -> ShiftCheck:
    """Unit-averaged shifted product against ``Phi_{N-M}`` at ``h/q + b^M beta``."""
    if gcd(q, b) != 1:
        raise ValueError("need (q, b) = 1")
    if not 0 <= M <= N:
        raise ValueError("need 0 <= M <= N")
    if q > 500:
        raise ValueError("q capped at 500")
    fb = Fraction(beta)
    ws = [b**n + b ** (2 * N - n) for n in range(M + 1, N)]
    lhs_terms, rhs_terms = [], []
    for h in range(q):
        if gcd(h, q) != 1:
            continue
        arg = Fraction(h, q) + fb
        ts = np.array([frac_mul(arg, w) for w in ws], dtype=np.float64)
        lhs_terms.append(float(np.prod(_phi_reduced(ts, b) ** delta)) if ws else 1.0)
        rhs_terms.append(phi_big(Fraction(h, q) + fb * b**M, b, N - M) ** delta)
    lhs, rhs = math.fsum(lhs_terms), math.fsum(rhs_terms)
    return ShiftCheck(lhs, rhs, abs(lhs - rhs) <= 1e-9 * q)
