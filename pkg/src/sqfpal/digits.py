"""Base-b digit arithmetic, the digit reversal map and (quasi-)palindromes."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

import numpy as np


def _check_base(b: int) -> None:
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")


@dataclass(frozen=True)
class DigitVector:
    """Little-endian base-``base`` digits; ``digits[j]`` is the j-th digit."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        if not self.digits:
            raise ValueError("a digit vector needs at least one digit")
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")

    @property
    def length(self) -> int:
        return len(self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, j: int) -> int:
        return self.digits[j]


def digits_of(n: int, b: int, length: int | None = None) -> DigitVector:
    """Expand ``n`` in base ``b``.

    With ``length`` given the vector is zero padded to exactly that many
    digits; otherwise the minimal expansion is returned (``[0]`` for zero).
    """
    _check_base(b)
    if n < 0:
        raise ValueError("negative integers have no digit vector here")
    if length is not None:
        if length < 1 or n >= b**length:
            raise ValueError(f"{n} does not fit in {length} base-{b} digits")
    out = []
    m = n
    while m:
        m, r = divmod(m, b)
        out.append(r)
    if not out:
        out.append(0)
    if length is not None:
        out.extend([0] * (length - len(out)))
    return DigitVector(b, tuple(out))


def value_of(dv: DigitVector) -> int:
    v = 0
    for d in reversed(dv.digits):
        v = v * dv.base + d
    return v


def rho(n: int, b: int, L: int) -> int:
    """Reverse the first ``L + 1`` base-``b`` digits of ``n`` in ``[0, b**(L+1))``."""
    _check_base(b)
    if L < 0:
        raise ValueError("L must be >= 0")
    if not 0 <= n < b ** (L + 1):
        raise ValueError(f"rho needs 0 <= n < b^(L+1), got n={n}")
    r = 0
    for _ in range(L + 1):
        n, d = divmod(n, b)
        r = r * b + d
    return r


def rho_array(n: np.ndarray, b: int, L: int) -> np.ndarray:
    """Vectorised :func:`rho` for int64 arrays (``b^(L+1) < 2^63``)."""
    n = np.asarray(n, dtype=np.int64)
    if n.size and (n.min() < 0 or n.max() >= b ** (L + 1)):
        raise ValueError("rho needs 0 <= n < b^(L+1)")
    r = np.zeros_like(n)
    for _ in range(L + 1):
        n, d = np.divmod(n, b)
        r = r * b + d
    return r


def num_digits(n: int, b: int) -> int:
    """Number of base-``b`` digits of ``n >= 1``, i.e. ``floor(log_b n) + 1``."""
    k = 0
    while n:
        n //= b
        k += 1
    return k


def is_palindrome(n: int, b: int) -> bool:
    if n < 1:
        raise ValueError("palindromes are positive integers")
    ds = digits_of(n, b).digits
    return ds == ds[::-1]


def is_quasi_palindrome(n: int, b: int, lam: int) -> bool:
    """True when the lowest ``lam`` digits of ``n`` mirror its highest ``lam``."""
    if n < 1:
        raise ValueError("quasi-palindromes are positive integers")
    if lam < 1:
        raise ValueError("level must be >= 1")
    ds = digits_of(n, b).digits
    top = len(ds) - 1
    return all(ds[j] == ds[top - j] for j in range(min(lam, len(ds))))


@dataclass(frozen=True)
class QuasiSkeleton:
    base: int
    L: int
    lam: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


def _check_level(L: int, lam: int) -> None:
    if not 1 <= lam <= L // 2:
        raise ValueError(f"level must satisfy 1 <= lam <= L/2, got lam={lam}, L={L}")


def gen_quasi_skeleton(b: int, L: int, lam: int) -> QuasiSkeleton:
    """All ``sum_{j<lam} (b^j + b^(L-j)) k_j`` with digits ``k_j`` and ``(k_0, b) = 1``."""
    _check_base(b)
    _check_level(L, lam)
    weights = [b**j + b ** (L - j) for j in range(lam)]
    partial = [k0 * weights[0] for k0 in range(1, b) if gcd(k0, b) == 1]
    for w in weights[1:]:
        partial = [p + k * w for p in partial for k in range(b)]
    return QuasiSkeleton(b, L, lam, tuple(sorted(partial)))


def quasi_cover_enumerate(b: int, L: int, lam: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(a, m, a + b^lam * m)`` for ``a`` in the skeleton and ``0 <= m < b^(L+1-2 lam)``.

    The third components are exactly the integers of ``[b^L, b^(L+1))`` whose
    last digit is a unit mod ``b`` and whose outer ``lam`` digits mirror.
    """
    skel = gen_quasi_skeleton(b, L, lam)
    step = b**lam
    span = b ** (L + 1 - 2 * lam)
    for a in skel.members:
        for m in range(span):
            yield a, m, a + step * m


def quasi_cover_array(b: int, L: int, lam: int) -> np.ndarray:
    """Sorted third components of :func:`quasi_cover_enumerate` as one int64 array."""
    skel = np.array(gen_quasi_skeleton(b, L, lam).members, dtype=np.int64)
    m = np.arange(b ** (L + 1 - 2 * lam), dtype=np.int64) * b**lam
    return np.sort((skel[:, None] + m[None, :]).ravel())


def mirror(prefix: int, b: int, L: int) -> int:
    """The palindrome in ``[b^L, b^(L+1))`` whose top ``ceil((L+1)/2)`` digits are ``prefix``."""
    half = (L + 2) // 2
    rest = L + 1 - half
    top = prefix // b ** (half - rest)
    low = 0
    for _ in range(rest):
        top, d = divmod(top, b)
        low = low * b + d
    return prefix * b**rest + low
