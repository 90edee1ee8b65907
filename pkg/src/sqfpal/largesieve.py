"""Large sieve quantities for the square moduli ``q d^2``, ``d <= D``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import arith
from .harmonics import Real, frac_mul, phi_big_at_fractions

# fractions h/(q d^2) with q d^2 <= 10^6 are at least 10^-12 apart from any
# window edge they do not sit on; the guard decides ties in favour of inclusion
_EDGE_GUARD = 1e-13


@dataclass(frozen=True)
class SieveGrid:
    D: int
    N: int
    q: int
    epsilon: float = 0.1

    def __post_init__(self) -> None:
        if min(self.D, self.N, self.q) < 1:
            raise ValueError("D, N and q must be positive")
        if not 0 <= self.epsilon < 1:
            raise ValueError("epsilon must lie in [0, 1)")


def delta_bound(D: float, N: float, q: float, eps: float = 0.1) -> float:
    """``(DN)^eps (1 + q/N) (q D^3 + N sqrt(D))``."""
    return (D * N) ** eps * (1 + q / N) * (q * D**3 + N * math.sqrt(D))


def _check_size(D: int, q: int, cap: int) -> None:
    if D < 1 or q < 1:
        raise ValueError("D and q must be positive")
    if q * D * D > cap:
        raise ValueError(f"q D^2 = {q * D * D} exceeds {cap}")


def farey_points(D: int, q: int) -> np.ndarray:
    """Sorted ``h/(q d^2)`` in ``[0, 1)`` over ``d <= D`` and units ``h``."""
    parts = []
    for d in range(1, D + 1):
        m = q * d * d
        parts.append(arith.units(m).astype(np.float64) / m)
    return np.sort(np.concatenate(parts))


def spacing_count(D: int, N: int, q: int, alpha: Real) -> int:
    """``N`` times the number of fractions within ``1/N`` of ``alpha`` (circle metric)."""
    _check_size(D, q, 10**6)
    a = frac_mul(alpha, 1)
    pts = farey_points(D, q)
    dist = np.abs(pts - a)
    dist = np.minimum(dist, 1.0 - dist)
    return N * int(np.count_nonzero(dist <= 1.0 / N + _EDGE_GUARD))


def _max_window_load(pts: np.ndarray, width: float) -> int:
    """Largest number of sorted circle points in a closed arc of length ``width``."""
    n = pts.size
    if n == 0:
        return 0
    if width >= 1.0:
        return n
    ext = np.concatenate([pts, pts + 1.0])
    right = np.searchsorted(ext, pts + width + _EDGE_GUARD, side="right")
    return int((right - np.arange(n)).max())


def spacing_sup(D: int, N: int, q: int) -> int:
    """Exact ``N sup_alpha`` of the window count.

    The count is piecewise constant in ``alpha``; some maximising window has
    its left edge on a fraction, so scanning windows anchored at every point
    finds the supremum.
    """
    _check_size(D, q, 10**6)
    return N * _max_window_load(farey_points(D, q), 2.0 / N)


def spacing_sup_all_N(D: int, q: int, Ns) -> dict[int, int]:
    pts = farey_points(D, q)
    return {N: N * _max_window_load(pts, 2.0 / N) for N in Ns}


class QuadraticForm(NamedTuple):
    value: float
    energy: float


def ls_quadratic_form(gamma, D: int, q: int) -> QuadraticForm:
    """``sum_{d <= D} sum_{h (q d^2)}^* |sum_{|n| <= N} gamma_n e_{q d^2}(h n)|^2``.

    ``gamma`` has length ``2N + 1`` with ``gamma[k]`` the coefficient of ``n = k - N``.
    The inner sums for all ``h`` modulo ``m`` come from one length-``m`` FFT of
    the coefficients folded modulo ``m``.
    """
    g = np.asarray(gamma, dtype=np.complex128)
    if g.ndim != 1 or g.size % 2 == 0:
        raise ValueError("gamma must have odd length 2N + 1")
    N = g.size // 2
    if N > 10**4:
        raise ValueError("N capped at 10^4")
    _check_size(D, q, 10**5)
    n = np.arange(-N, N + 1)
    total = []
    for d in range(1, D + 1):
        m = q * d * d
        folded = np.bincount(n % m, weights=g.real, minlength=m) + 1j * np.bincount(
            n % m, weights=g.imag, minlength=m
        )
        # sum_r folded[r] e(h r / m) = m * ifft(folded)[h]
        s = np.fft.ifft(folded) * m
        u = arith.units(m)
        total.append(math.fsum((np.abs(s[u]) ** 2).tolist()))
    energy = math.fsum((np.abs(g) ** 2).tolist())
    return QuadraticForm(math.fsum(total), energy)


@lru_cache(maxsize=4096)
def _ramanujan_row(m: int, kmax: int) -> np.ndarray:
    """``c_m(k)`` for ``0 <= k <= kmax`` via ``sum_{e | (m, k)} mu(m/e) e``."""
    k = np.arange(kmax + 1)
    out = np.zeros(kmax + 1, dtype=np.int64)
    for e in arith.divisors(m):
        mu = arith.mobius(m // e)
        if mu:
            out += mu * e * (k % e == 0)
    return out


def ls_quadratic_form_all_D(gamma, Dmax: int, q: int) -> np.ndarray:
    """Cumulative quadratic forms for ``D = 1..Dmax``, one row per coefficient sequence.

    Expanding the square gives ``sum_k A(k) c_m(k)`` with ``A`` the
    autocorrelation of ``gamma`` and ``c_m`` Ramanujan's sum, so each modulus
    costs ``O(N)`` instead of an FFT of length ``q d^2``. ``gamma`` may be one
    sequence of length ``2N + 1`` or a 2-D batch of them.
    """
    g = np.atleast_2d(np.asarray(gamma, dtype=np.complex128))
    if g.shape[1] % 2 == 0:
        raise ValueError("gamma must have odd length 2N + 1")
    N = g.shape[1] // 2
    if N > 10**4:
        raise ValueError("N capped at 10^4")
    if Dmax < 1 or q < 1:
        raise ValueError("D and q must be positive")
    # A[j, k + 2N] = sum_n gamma_{n+k} conj(gamma_n)
    A = np.array([np.correlate(row, row, mode="full") for row in g])
    kmax = 1 << (2 * N).bit_length()  # rounded up so rows are shared across N
    k = np.abs(np.arange(-2 * N, 2 * N + 1))
    C = np.array([_ramanujan_row(q * d * d, kmax)[k] for d in range(1, Dmax + 1)], dtype=np.float64)
    per_d = (A @ C.T).real
    return np.cumsum(per_d, axis=1)


def phi_moment_square_moduli(b: int, N: int, K: int, q: int, D: int, beta: Real = 0) -> float:
    """``sum_{d <= D} sum_{h (q d^2)}^* Phi_N^(2K)(h/(q d^2) + beta)`` by direct evaluation."""
    _check_size(D, q, 10**4)
    if K * max(N - 1, 0) * (b - 1) > 64:
        raise ValueError("moment exceeds the coefficient budget K(N-1)(b-1) <= 64")
    fb = Fraction(beta)
    parts = []
    for d in range(1, D + 1):
        m = q * d * d
        # h/m + beta = (h * den + num * m) / (m * den) exactly
        den = fb.denominator
        h = arith.units(m).astype(object) * den + fb.numerator * m
        vals = phi_big_at_fractions(h, m * den, b, N)
        parts.append(math.fsum((vals ** (2 * K)).tolist()))
    return math.fsum(parts)


def moment_square_moduli_rhs(b: int, N: int, K: int, q: int, D: int) -> float:
    """Leading shape ``(q D^3 + K b^(2N) sqrt D) b^(2(K-1)N) (1 + q/(K b^(2N)))`` of the bound."""
    B = b ** (2 * N)
    return (q * D**3 + K * B * math.sqrt(D)) * b ** (2 * (K - 1) * N) * (1 + q / (K * B))
