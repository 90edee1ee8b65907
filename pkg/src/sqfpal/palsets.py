"""Enumeration and exact counting over palindrome families.

Blocks ``Pi_b(L)`` (palindromes in ``[b^L, b^(L+1))``) are generated by
mirroring a half-counter of ``ceil((L+1)/2)`` digits. Counts in residue classes
use a digit DP over the free half: the palindrome value is
``sum_j d_j (b^j + b^(L-j))`` so its class modulo ``M`` is a convolution of
per-digit shifts.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator

import numpy as np

from . import arith
from .digits import mirror

CAP = 10**18
_CHUNK = 1 << 18


class Variant(str, enum.Enum):
    ALL = "all"
    STAR = "star"
    EVEN = "even"


@dataclass(frozen=True)
class PalindromeQuery:
    base: int
    L: int | None = None
    x: int | None = None
    variant: Variant = Variant.ALL
    modulus: int | None = None
    residue: int | None = None
    coprime_to_base: bool = True

    def __post_init__(self) -> None:
        if (self.L is None) == (self.x is None):
            raise ValueError("give exactly one of a block exponent L or an upper bound x")
        if self.residue is not None and self.modulus is None:
            raise ValueError("a residue needs a modulus")
        if self.modulus is not None and self.modulus < 1:
            raise ValueError("modulus must be positive")


def _half(L: int) -> int:
    return (L + 2) // 2


def _check_block(b: int, L: int) -> None:
    if b < 2:
        raise ValueError("base must be >= 2")
    if L < 0:
        raise ValueError("block exponent must be >= 0")
    if b ** (L + 1) > CAP:
        raise ValueError(f"block b^(L+1) = {b}^{L + 1} exceeds 10^18")


def block_size(b: int, L: int) -> int:
    """``|Pi_b(L)| = (b - 1) b^(ceil((L+1)/2) - 1)``."""
    return (b - 1) * b ** (_half(L) - 1)


def iter_pal_block(b: int, L: int) -> Iterator[int]:
    _check_block(b, L)
    h = _half(L)
    for p in range(b ** (h - 1), b**h):
        yield mirror(p, b, L)


def pal_block_array(b: int, L: int, start: int | None = None, stop: int | None = None) -> np.ndarray:
    """Palindromes of ``Pi_b(L)`` with half-counter in ``[start, stop)`` as sorted int64."""
    _check_block(b, L)
    h = _half(L)
    lo, hi = b ** (h - 1), b**h
    start = lo if start is None else max(start, lo)
    stop = hi if stop is None else min(stop, hi)
    if stop <= start:
        return np.zeros(0, dtype=np.int64)
    pref = np.arange(start, stop, dtype=np.int64)
    rest = L + 1 - h
    top = pref // (b ** (h - rest))
    low = np.zeros_like(pref)
    for _ in range(rest):
        low = low * b + top % b
        top //= b
    return pref * (b**rest) + low


def iter_block_chunks(b: int, L: int, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
    h = _half(L)
    lo, hi = b ** (h - 1), b**h
    for s in range(lo, hi, chunk):
        yield pal_block_array(b, L, s, min(s + chunk, hi))


def _weights(b: int, L: int) -> list[int]:
    return [b**j + b ** (L - j) if 2 * j != L else b**j for j in range(_half(L))]


def _shift_add(hist: np.ndarray, w: int, digits: range) -> np.ndarray:
    M = hist.size
    out = np.zeros_like(hist)
    for d in digits:
        out += np.roll(hist, (d * w) % M)
    return out


def residue_histogram(b: int, L: int, M: int, upto: int | None = None) -> np.ndarray:
    """Counts of ``l`` in ``Pi_b(L)`` (and ``l <= upto`` if given) by ``l mod M``."""
    _check_block(b, L)
    if M < 1:
        raise ValueError("modulus must be positive")
    h = _half(L)
    ws = [w % M for w in _weights(b, L)]
    hist = np.zeros(M, dtype=np.int64)
    if upto is not None and upto < b**L:
        return hist
    if upto is None or upto >= b ** (L + 1) - 1:
        hist[0] = 1
        for j in range(h - 1, -1, -1):
            hist = _shift_add(hist, ws[j], range(1 if j == 0 else 0, b))
        return hist
    # suffix[i] = distribution of the free digits at positions i+1..h-1
    suffix = [None] * h
    cur = np.zeros(M, dtype=np.int64)
    cur[0] = 1
    for i in range(h - 1, -1, -1):
        suffix[i] = cur
        cur = _shift_add(cur, ws[i], range(b))
    prefix = upto // b ** (L + 1 - h)
    pdig = []
    p = prefix
    for _ in range(h):
        p, d = divmod(p, b)
        pdig.append(d)
    pdig.reverse()  # pdig[i] is the digit at position L - i, which equals d_i
    offset = 0
    for i in range(h):
        lo = 1 if i == 0 else 0
        for d in range(lo, pdig[i]):
            hist += np.roll(suffix[i], (offset + d * ws[i]) % M)
        offset = (offset + pdig[i] * ws[i]) % M
    if mirror(prefix, b, L) <= upto:
        hist[offset] += 1
    return hist


def _blocks_upto(b: int, x: int) -> range:
    top = 0
    while b ** (top + 1) <= x:
        top += 1
    return range(0, top + 1)


def _count_block_upto(b: int, L: int, x: int) -> int:
    if x < b**L:
        return 0
    if x >= b ** (L + 1) - 1:
        return block_size(b, L)
    h = _half(L)
    prefix = x // b ** (L + 1 - h)
    n = prefix - b ** (h - 1)
    return n + (mirror(prefix, b, L) <= x)


def count_upto(b: int, x: float, variant: Variant | str = Variant.ALL) -> int:
    """Number of base-``b`` palindromes in ``[1, x]`` of the given family."""
    variant = Variant(variant)
    x = math.floor(x)
    if x < 1:
        return 0
    if x > CAP:
        raise ValueError("x exceeds 10^18")
    total = 0
    if variant is Variant.STAR:
        mb = b**3 - b
        good = np.gcd(np.arange(mb), mb) == 1
        for L in _blocks_upto(b, x):
            total += int(residue_histogram(b, L, mb, upto=x)[good].sum())
        return total
    for L in _blocks_upto(b, x):
        if variant is Variant.EVEN and L % 2:
            continue
        total += _count_block_upto(b, L, x)
    return total


def ap_histogram(b: int, L: int, q: int, coprime_to_base: bool = True) -> np.ndarray:
    """``|Pi_b(L, q, a)|`` for every ``a mod q``."""
    if q < 1:
        raise ValueError("modulus must be positive")
    M = q * b // gcd(q, b) if coprime_to_base else q
    hist = residue_histogram(b, L, M)
    r = np.arange(M)
    if coprime_to_base:
        hist = np.where(np.gcd(r, b) == 1, hist, 0)
    return np.bincount(r % q, weights=hist, minlength=q).astype(np.int64)


def count_in_ap(b: int, L: int, q: int, a: int, coprime_to_base: bool = True) -> int:
    return int(ap_histogram(b, L, q, coprime_to_base)[a % q])


def bs_max_ratio(b: int, L: int, q: int) -> float:
    """``max_a |Pi_b(L,q,a)| / (|Pi_b(L)|/sqrt(q) + 1)``."""
    return float(ap_histogram(b, L, q).max()) / (block_size(b, L) / math.sqrt(q) + 1)


def count_divisible(b: int, L: int, m: int) -> int:
    return int(residue_histogram(b, L, m)[0])


def iter_ap_chunks(b: int, L: int, q: int, a: int, coprime_to_base: bool = True) -> Iterator[np.ndarray]:
    for arr in iter_block_chunks(b, L):
        keep = arr % q == a % q
        if coprime_to_base:
            keep &= np.gcd(arr, b) == 1
        yield arr[keep]


def square_part_array(values: np.ndarray) -> np.ndarray:
    """Largest ``s`` with ``s^2 | v`` for each positive ``v`` (below 10^18)."""
    vals = np.asarray(values, dtype=np.int64)
    s = np.ones_like(vals)
    if vals.size == 0:
        return s
    cof = vals.copy()
    bound = round(int(vals.max()) ** (1 / 3)) + 2
    for p in arith.prime_sieve(bound):
        p = int(p)
        hit = cof % p == 0
        if not hit.any():
            continue
        idx = np.flatnonzero(hit)
        c = cof[idx]
        e = np.zeros(idx.size, dtype=np.int64)
        while True:
            more = c % p == 0
            if not more.any():
                break
            c[more] //= p
            e[more] += 1
        cof[idx] = c
        s[idx] *= p ** (e // 2)
    # the remaining cofactor has at most two prime factors above the bound
    r = np.floor(np.sqrt(cof.astype(np.float64))).astype(np.int64)
    r -= (r * r > cof).astype(np.int64)
    r += ((r + 1) * (r + 1) <= cof).astype(np.int64)
    sq = (r * r == cof) & (cof > 1)
    s[sq] *= r[sq]
    return s


@lru_cache(maxsize=64)
def _square_parts(b: int, L: int, q: int, a: int) -> tuple[tuple[int, int], ...]:
    counts: Counter[int] = Counter()
    for arr in iter_ap_chunks(b, L, q, a):
        vals, cnt = np.unique(square_part_array(arr), return_counts=True)
        counts.update(dict(zip(vals.tolist(), cnt.tolist())))
    return tuple(sorted(counts.items()))


def _dyadic_range(N: float) -> range:
    return range(math.floor(N / 2) + 1, math.floor(N) + 1)


def _pairs_by_square_parts(b: int, L: int, q: int, a: int, N: float) -> int:
    ns = _dyadic_range(N)
    if not ns:
        return 0
    total = 0
    for s, mult in _square_parts(b, L, q, a % q):
        if s < ns.start:
            continue
        total += mult * sum(1 for d in arith.divisors(s) if d in ns)
    return total


def _pairs_by_residues(b: int, L: int, q: int, a: int, N: float) -> int:
    total = 0
    for n in _dyadic_range(N):
        if gcd(n, b) != 1:
            continue
        n2 = n * n
        M = math.lcm(n2, q, b)
        hist = residue_histogram(b, L, M)
        r = np.arange(M)
        keep = (r % n2 == 0) & (r % q == a % q) & (np.gcd(r, b) == 1)
        total += int(hist[keep].sum())
    return total


def _predicted_costs(b: int, L: int, q: int, N: float) -> tuple[float, float]:
    h = _half(L)
    ns = [n for n in _dyadic_range(N) if gcd(n, b) == 1]
    by_res = float(sum(h * b * math.lcm(n * n, q, b) for n in ns))
    trial = len(arith.prime_sieve(round(b ** ((L + 1) / 3)) + 2))
    by_pal = float(block_size(b, L)) * (trial + 4)
    return by_res, by_pal


def count_square_pairs(b: int, L: int, q: int, a: int, N: float, strategy: str = "auto") -> int:
    """``sum_{N/2 < n <= N} #{l in Pi_b(L, q, a) : n^2 | l}``, exactly.

    ``strategy`` is ``"residues"`` (digit DP modulo ``lcm(n^2, q, b)`` for each
    ``n``), ``"palindromes"`` (square part of every palindrome in the class) or
    ``"auto"`` for whichever has the smaller predicted cost.
    """
    _check_block(b, L)
    if q < 1:
        raise ValueError("modulus must be positive")
    if gcd(q, b) != 1:
        raise ValueError(f"modulus {q} must be coprime to the base {b}")
    if math.floor(N / 2) + 1 > math.isqrt(b ** (L + 1) - 1):
        return 0
    if strategy == "auto":
        by_res, by_pal = _predicted_costs(b, L, q, N)
        strategy = "residues" if by_res <= by_pal else "palindromes"
    if strategy == "residues":
        return _pairs_by_residues(b, L, q, a, N)
    if strategy == "palindromes":
        return _pairs_by_square_parts(b, L, q, a, N)
    raise ValueError(f"unknown strategy {strategy!r}")


def palindromes_upto(b: int, x: float) -> np.ndarray:
    """Sorted array of all base-``b`` palindromes in ``[1, x]``."""
    x = math.floor(x)
    parts = [np.zeros(0, dtype=np.int64)]
    for L, s, t in segments(b, x):
        arr = pal_block_array(b, L, s, t)
        parts.append(arr[arr <= x])
    return np.concatenate(parts)


def star_members(b: int, x: int, start_block: int = 0) -> np.ndarray:
    """Sorted members of ``P*_b(x)``: palindromes ``<= x`` coprime to ``b^3 - b``."""
    x = math.floor(x)
    if x < 1:
        return np.zeros(0, dtype=np.int64)
    mb = b**3 - b
    parts = []
    for L in _blocks_upto(b, x):
        if L < start_block:
            continue
        for arr in iter_block_chunks(b, L):
            arr = arr[(arr <= x) & (np.gcd(arr, mb) == 1)]
            if arr.size:
                parts.append(arr)
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def segments(b: int, x: int, chunk: int = _CHUNK) -> list[tuple[int, int, int]]:
    """Disjoint half-counter segments ``(L, start, stop)`` covering ``P_b(x)`` in order."""
    x = math.floor(x)
    out = []
    if x < 1:
        return out
    for L in _blocks_upto(b, x):
        h = _half(L)
        lo, hi = b ** (h - 1), b**h
        if L == _blocks_upto(b, x)[-1]:
            hi = min(hi, x // b ** (L + 1 - h) + 1)
        for s in range(lo, hi, chunk):
            out.append((L, s, min(s + chunk, hi)))
    return out
