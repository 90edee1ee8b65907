"""Complete and incomplete modular exponential sums.

All sums are normalised as in the definitions

    G*(a; q)    = q^-1/2 sum_{n (q)}^* e_q(a n^2)
    K2(c, d; q) = q^-1/2 sum_{n (q)}^* e_q(c inv(n)^2 + d n)
    Ku2(c, d; s) = s^-1/2 sum_{m (s)}^* e_s(c m^3 + d m^2)

and are accumulated with ``math.fsum`` on real and imaginary parts. Modulo 1
the unit group is ``{0}`` so every normalised sum equals 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import NamedTuple

import numpy as np

from . import arith
from . import baselines

Q_CAP = 10**5
TOL_PER_TERM = 1e-9


@dataclass(frozen=True)
class SumResult:
    value: complex
    modulus: int
    params: tuple[int, ...]
    tolerance: float

    def __abs__(self) -> float:
        return abs(self.value)


def _check_q(q: int, cap: int = Q_CAP) -> None:
    if q < 1:
        raise ValueError("modulus must be positive")
    if q > cap:
        raise ValueError(f"modulus {q} exceeds the cap {cap}")


@lru_cache(maxsize=512)
def _unit_data(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Units mod q and their inverses."""
    u = arith.units(q)
    if q == 1:
        return u, u.copy()
    inv = np.array([pow(int(n), -1, q) for n in u], dtype=np.int64)
    return u, inv


@lru_cache(maxsize=512)
def _roots(q: int) -> np.ndarray:
    k = np.arange(q, dtype=np.float64)
    return np.exp(2j * np.pi * k / q)


def _sum_phases(phases: np.ndarray, q: int) -> complex:
    z = _roots(q)[np.asarray(phases, dtype=np.int64) % q]
    return complex(math.fsum(z.real.tolist()), math.fsum(z.imag.tolist()))


def _result(total: complex, q: int, params: tuple[int, ...], terms: int) -> SumResult:
    return SumResult(total / math.sqrt(q), q, params, TOL_PER_TERM * max(terms, 1))


def gauss_star(a: int, q: int) -> SumResult:
    _check_q(q)
    u, _ = _unit_data(q)
    return _result(_sum_phases((a % q) * (u * u % q), q), q, (a,), u.size)


def k2(c: int, d: int, q: int) -> SumResult:
    """Quadratic Kloosterman sum by direct summation over units."""
    _check_q(q)
    u, inv = _unit_data(q)
    ph = ((c % q) * (inv * inv % q) + (d % q) * u) % q
    return _result(_sum_phases(ph, q), q, (c, d), u.size)


def kummer2(c: int, d: int, s: int) -> SumResult:
    _check_q(s)
    u, _ = _unit_data(s)
    u2 = u * u % s
    ph = ((c % s) * (u2 * u % s) + (d % s) * u2) % s
    return _result(_sum_phases(ph, s), s, (c, d), u.size)


def k2_grid(q: int, cs=None, ds=None) -> np.ndarray:
    """``K2(c, d; q)`` for every ``c`` in ``cs`` and ``d`` in ``ds`` (default: all residues).

    Evaluated as a product of two character matrices over the units.
    """
    _check_q(q)
    cs = np.arange(q) if cs is None else np.asarray(cs, dtype=np.int64) % q
    ds = np.arange(q) if ds is None else np.asarray(ds, dtype=np.int64) % q
    u, inv = _unit_data(q)
    z = _roots(q)
    left = z[np.outer(cs, inv * inv % q) % q]
    right = z[np.outer(ds, u) % q]
    return left @ right.T / math.sqrt(q)


class GaussStructure(NamedTuple):
    value: complex
    predicted_vanish: bool
    vanishes_as_predicted: bool
    bound_ok: bool


def gauss_star_structure_check(a: int, q: int) -> GaussStructure:
    """Forced vanishing of ``G*(a; q)``.

    For ``(a, q) = 1`` and ``q = 2^l r`` the sum is zero when ``l >= 4`` or ``r``
    is not square-free. ``bound_ok`` compares against ``tau(q) sqrt((a, q))``
    and is informative only.
    """
    res = gauss_star(a, q)
    g = gcd(a, q)
    predicted = False
    if g == 1:
        r = arith.odd_part(q)
        ell = (q // r).bit_length() - 1
        predicted = ell >= 4 or arith.mobius(r) == 0
    tol = res.tolerance
    vanish_ok = abs(res.value) <= tol if predicted else True
    bound_ok = abs(res.value) <= arith.tau(q) * math.sqrt(g) + tol
    return GaussStructure(res.value, predicted, vanish_ok, bound_ok)


class Comparison(NamedTuple):
    lhs: complex
    rhs: complex
    agree: bool


def k2_crt_check(c: int, d: int, q: int, r: int) -> Comparison:
    """``K2(c,d;qr)`` against ``K2(c inv r, d inv r; q) K2(c inv q, d inv q; r)``."""
    if gcd(q, r) != 1:
        raise ValueError("CRT factorisation needs coprime moduli")
    _check_q(q * r)
    lhs = k2(c, d, q * r).value
    ir, iq = arith.mod_inverse(r, q), arith.mod_inverse(q, r)
    rhs = k2(c * ir, d * ir, q).value * k2(c * iq, d * iq, r).value
    tol = TOL_PER_TERM * q * r
    return Comparison(lhs, rhs, abs(lhs - rhs) <= tol)


class SalieCheck(NamedTuple):
    via_formula: complex
    via_definition: complex
    agree: bool


def salie_short_sum(c: int, d: int, q: int) -> complex:
    """``sum e_{q^2}(c inv(l)^2 + d l)`` over units ``l <= q`` with ``d l^3 = 2c (mod q)``."""
    Q = q * q
    terms = []
    for ell in range(1, q + 1):
        if gcd(ell, q) != 1 or (d * ell**3 - 2 * c) % q:
            continue
        li = pow(ell, -1, Q) if Q > 1 else 0
        terms.append(cmath.exp(2j * math.pi * ((c * li * li + d * ell) % Q) / Q))
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def k2_salie(c: int, d: int, q: int) -> SalieCheck:
    if q > 300:
        raise ValueError("square-modulus evaluation is capped at q <= 300")
    via_formula = salie_short_sum(c, d, q)
    via_def = k2(c, d, q * q).value
    return SalieCheck(via_formula, via_def, abs(via_formula - via_def) <= TOL_PER_TERM * q * q)


class CorrelationCheck(NamedTuple):
    sum_form: float
    ramanujan_form: float
    bound: int
    ok: bool


def square_roots_of_one(q: int) -> list[int]:
    return [ell for ell in range(q) if (ell * ell - 1) % q == 0] if q > 1 else [0]


def ramanujan_correlation(c: int, d: int, q: int) -> int:
    """``sum_{l^2 = 1 (q)} c_q(c - d l)``, an integer."""
    return sum(arith.ramanujan_c(q, c - d * ell) for ell in square_roots_of_one(q))


def correlation_check(c: int, d: int, q: int) -> CorrelationCheck:
    if q > 2000:
        raise ValueError("correlation check is capped at q <= 2000")
    table = k2_grid(q, ds=[c % q, d % q])
    s = table[:, 0] @ np.conj(table[:, 1])
    sum_form = abs(complex(s))
    ram = abs(ramanujan_correlation(c, d, q))
    bound = gcd(c * c - d * d, q) * arith.tau(q)
    tol = TOL_PER_TERM * q * q
    ok = abs(sum_form - ram) <= tol and sum_form <= bound + tol
    return CorrelationCheck(sum_form, float(ram), bound, ok)


def correlation_grid(q: int) -> np.ndarray:
    """``|sum_n K2(n,c;q) conj K2(n,d;q)|`` for all ``c, d`` modulo ``q``."""
    table = k2_grid(q)  # rows n, columns c
    return np.abs(table.T @ np.conj(table))


class TwistedCheck(NamedTuple):
    value: float
    bound1: float
    bound2: float
    ok: bool | None


TWISTED_EPSILON = 0.1


def twisted_incomplete_k2(alpha: float, a: int, c: int, q: int, N: int, baseline_path=None, grid=None) -> TwistedCheck:
    """``|sum_{n <= N} e(alpha n) K2(a n, c; q)|`` with its two trivial-ish bounds.

    ``ok`` compares against ``C q^eps min(bound1, bound2)`` using the frozen
    baseline when a grid descriptor is passed; otherwise it is ``None``.
    """
    if gcd(a, q) != 1:
        raise ValueError("twist needs (a, q) = 1")
    if q > 2000 or N > 10**5:
        raise ValueError("twisted sum capped at q <= 2000, N <= 10^5")
    col = k2_grid(q, ds=[c % q])[:, 0]  # K2(r, c; q) for r mod q
    n = np.arange(1, N + 1, dtype=np.int64)
    k = col[(a * n) % q]
    ph = np.exp(2j * np.pi * np.mod(alpha * n.astype(np.float64), 1.0))
    z = ph * k
    value = abs(complex(math.fsum(z.real.tolist()), math.fsum(z.imag.tolist())))
    b1 = float(N)
    b2 = math.sqrt(q) + N / math.sqrt(q)
    ok = None
    if grid is not None:
        rec = baselines.entry("twisted_k2", grid, baseline_path)
        eps = float(rec.get("epsilon", TWISTED_EPSILON))
        ok = value <= float(rec["constant"]) * q**eps * min(b1, b2) + TOL_PER_TERM * N
    return TwistedCheck(value, b1, b2, ok)


def twisted_ratio(alpha: float, a: int, c: int, q: int, N: int, eps: float = TWISTED_EPSILON) -> float:
    t = twisted_incomplete_k2(alpha, a, c, q, N)
    return t.value / (q**eps * min(t.bound1, t.bound2))


def _laurent_power(u: np.ndarray, inv: np.ndarray, k: int, q: int) -> np.ndarray:
    base = u if k > 0 else inv
    out = np.ones_like(u) % q if q > 1 else np.zeros_like(u)
    for _ in range(abs(k)):
        out = out * base % q
    return out


def shparlinski_ratio(c: int, d: int, k: int, ell: int, q: int) -> float:
    """``|sum_{n (q)}^* e_q(c n^k + d n^l)| / sqrt(q (c, d, q))``; negative powers use inverses."""
    if k == ell or k == 0 or ell == 0:
        raise ValueError("exponents must be distinct and nonzero")
    if max(abs(k), abs(ell)) > 4:
        raise ValueError("exponents are limited to |k|, |l| <= 4")
    _check_q(q, 2000)
    u, inv = _unit_data(q)
    ph = ((c % q) * _laurent_power(u, inv, k, q) + (d % q) * _laurent_power(u, inv, ell, q)) % q
    s = _sum_phases(ph, q)
    return abs(s) / math.sqrt(q * gcd(gcd(c, d), q))
