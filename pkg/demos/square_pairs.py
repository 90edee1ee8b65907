"""Pairs (n, l) with l an 11-digit palindrome and n^2 | l, over dyadic n ~ N.

The count is compared with |Pi_10(10)| N^(-3/16); the table also shows where
the profile is not monotone.

Run:  python3 demos/square_pairs.py     (about a minute)
"""

from sqfpal import palsets
from sqfpal.checks import square_pair_profile

print("|Pi_10(10)| =", palsets.block_size(10, 10))
print(f"{'N':>8} {'pairs':>8} {'ratio':>10}")
prev = None
for N, count, ratio in square_pair_profile(b=10, L=10):
    flag = "  <- up" if prev is not None and count > prev else ""
    print(f"{N:>8} {count:>8} {ratio:>10.4f}{flag}")
    prev = count
