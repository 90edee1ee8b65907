"""Elementary arithmetic: factorization, square-free tests, CRT, Ramanujan sums
and the singular series."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import NamedTuple

import numpy as np

INT_CAP = 10**18
PRIME_TABLE_LIMIT = 10**6

# deterministic for every n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=None)
def prime_sieve(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


@lru_cache(maxsize=1)
def _prime_list() -> tuple[int, ...]:
    # shared read-only table; built once, then reused by every caller
    return tuple(int(p) for p in prime_sieve(PRIME_TABLE_LIMIT))


def _check_cap(n: int) -> None:
    if n > INT_CAP:
        raise ValueError(f"{n} exceeds the supported width 10^18")


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, seed: int = 1) -> int:
    """A nontrivial factor of the odd composite ``n``."""
    rng = random.Random(seed)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 64
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


class Factorization(tuple):
    """Sorted ``(prime, exponent)`` pairs; behaves as a plain tuple."""

    def value(self) -> int:
        v = 1
        for p, e in self:
            v *= p**e
        return v


def factorize(n: int) -> Factorization:
    """Complete factorization of ``1 <= n <= 10^18``.

    Trial division runs only while ``p^3`` does not exceed the cofactor; what
    remains then has at most two prime factors and is classified directly.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    _check_cap(n)
    out: list[tuple[int, int]] = []
    m = n
    for p in _prime_list():
        if p * p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        if is_probable_prime(m):
            out.append((m, 1))
        else:
            r = isqrt(m)
            if r * r == m:
                out.append((r, 2))
            else:
                f = _pollard_brent(m)
                lo, hi = sorted((f, m // f))
                out.extend([(lo, 1), (hi, 1)])
    return Factorization(sorted(out))


def is_squarefree(n: int) -> bool:
    """Square-free test without full factorization.

    Primes are removed while ``p^3 <= cofactor`` with an early exit on ``p^2``;
    the cofactor is then 1, a prime, a prime square or a product of two
    distinct primes, so only a perfect-square test remains.
    """
    if n < 1:
        raise ValueError("is_squarefree needs n >= 1")
    _check_cap(n)
    m = n
    for p in _prime_list():
        if p * p * p > m:
            break
        if m % p == 0:
            m //= p
            if m % p == 0:
                return False
    if m == 1:
        return True
    r = isqrt(m)
    return r * r != m


def squarefree_mask(values: np.ndarray) -> np.ndarray:
    """Vectorised :func:`is_squarefree` for positive int64 arrays below 2^62."""
    vals = np.asarray(values, dtype=np.int64)
    if vals.size == 0:
        return np.zeros(0, dtype=bool)
    if vals.min() < 1:
        raise ValueError("square-free mask needs positive entries")
    top = int(vals.max())
    _check_cap(top)
    ok = np.ones(vals.shape, dtype=bool)
    cof = vals.copy()
    bound = round(top ** (1 / 3)) + 2
    for p in prime_sieve(bound):
        p = int(p)
        hit = cof % p == 0
        if not hit.any():
            continue
        cof[hit] //= p
        again = hit & (cof % p == 0)
        ok &= ~again
    r = np.floor(np.sqrt(cof.astype(np.float64))).astype(np.int64)
    r -= (r * r > cof).astype(np.int64)
    r += ((r + 1) * (r + 1) <= cof).astype(np.int64)
    square = (r * r == cof) & (cof > 1)
    return ok & ~square


class ArithmeticFunctions(NamedTuple):
    phi: int
    mobius: int
    tau: int
    odd_part: int


def arithmetic_functions(n: int) -> ArithmeticFunctions:
    if n < 1:
        raise ValueError("arithmetic functions are defined for n >= 1")
    phi, mu, tau = 1, 1, 1
    odd = n
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
        mu = 0 if e > 1 else -mu
        tau *= e + 1
        if p == 2:
            odd = n >> e
    return ArithmeticFunctions(phi, mu, tau, odd)


def euler_phi(n: int) -> int:
    return arithmetic_functions(n).phi


def mobius(n: int) -> int:
    return arithmetic_functions(n).mobius


def tau(n: int) -> int:
    return arithmetic_functions(n).tau


def odd_part(n: int) -> int:
    if n < 1:
        raise ValueError("odd part needs n >= 1")
    return n // (n & -n)


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def mobius_sieve(limit: int) -> np.ndarray:
    """``mu(0..limit)`` as an int8 array (index 0 holds 0)."""
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in prime_sieve(limit):
        p = int(p)
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return mu


def mod_inverse(a: int, q: int) -> int:
    """Inverse of ``a`` modulo ``q`` in ``[0, q)``; modulo 1 everything maps to 0."""
    if q < 1:
        raise ValueError("modulus must be positive")
    if q == 1:
        return 0
    if gcd(a, q) != 1:
        raise ValueError(f"{a} is not invertible modulo {q}")
    return pow(a, -1, q)


def crt_combine(a1: int, q1: int, a2: int, q2: int) -> int:
    if gcd(q1, q2) != 1:
        raise ValueError(f"moduli {q1} and {q2} are not coprime")
    m = q1 * q2
    return (a1 * q2 * mod_inverse(q2, q1) + a2 * q1 * mod_inverse(q1, q2)) % m


class BezoutCheck(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    holds: bool


def bezout_check(m: int, n: int) -> BezoutCheck:
    """Compare ``1/(mn)`` with ``inv(m, n)/n + inv(n, m)/m`` modulo 1."""
    if gcd(m, n) != 1:
        raise ValueError("Bezout check needs coprime arguments")
    lhs = Fraction(1, m * n)
    rhs = Fraction(mod_inverse(m, n), n) + Fraction(mod_inverse(n, m), m)
    lhs_r = lhs - math.floor(lhs)
    rhs_r = rhs - math.floor(rhs)
    return BezoutCheck(lhs, rhs, lhs_r == rhs_r)


def ramanujan_c(q: int, n: int) -> int:
    """Ramanujan's sum via ``sum_{d | (q, n)} mu(q/d) d``."""
    if q < 1:
        raise ValueError("Ramanujan sums need q >= 1")
    g = gcd(q, n)
    return sum(mobius(q // d) * d for d in divisors(g))


def singular_series(n: int) -> Fraction:
    """``prod_{p | n} (1 - p^-2)^-1`` as an exact fraction (1 for n = 1)."""
    if n < 1:
        raise ValueError("singular series needs n >= 1")
    s = Fraction(1)
    for p, _ in factorize(n):
        s *= Fraction(p * p, p * p - 1)
    return s


class TailCheck(NamedTuple):
    partial: float
    limit: float
    error: float
    bound: float
    holds: bool


def singular_series_tail(k: int, D: int) -> TailCheck:
    """Truncated ``sum_{d <= D, (d,k)=1} mu(d)/d^2`` against ``6/pi^2 * S(k)``."""
    mu = mobius_sieve(D)
    d = np.arange(D + 1)
    keep = (np.gcd(d, k) == 1) & (mu != 0)
    keep[0] = False
    terms = mu[keep].astype(np.float64) / d[keep].astype(np.float64) ** 2
    partial = math.fsum(terms.tolist())
    limit = 6 / math.pi**2 * float(singular_series(k))
    err = abs(partial - limit)
    return TailCheck(partial, limit, err, 1 / D, err <= 1 / D)


class GcdSumCheck(NamedTuple):
    lhs: int
    rhs: int
    holds: bool


def gcd_sum_check(N: int, q: int) -> GcdSumCheck:
    lhs = sum(gcd(n, q) for n in range(1, N + 1))
    rhs = N * tau(q)
    return GcdSumCheck(lhs, rhs, lhs <= rhs)


def units(q: int) -> np.ndarray:
    """Invertible residues modulo ``q``; modulo 1 this is ``[0]``."""
    r = np.arange(q, dtype=np.int64)
    return r[np.gcd(r, q) == 1]
