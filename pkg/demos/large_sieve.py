"""Large sieve with square moduli q d^2: the spacing count and the quadratic form
against the normaliser Delta_eps(D, N, q).

Run:  python3 demos/large_sieve.py
"""

import numpy as np

from sqfpal import largesieve

rng = np.random.default_rng(1)
print(f"{'D':>3} {'N':>4} {'q':>3} {'sup count':>10} {'form/energy':>12} {'Delta':>10}")
for D, N, q in [(2, 10, 1), (3, 20, 2), (5, 50, 3), (8, 50, 5)]:
    gamma = np.exp(2j * np.pi * rng.random(2 * N + 1))
    form = largesieve.ls_quadratic_form(gamma, D, q)
    delta = largesieve.delta_bound(D, N, q, 0.1)
    sup = largesieve.spacing_sup(D, N, q)
    print(f"{D:>3} {N:>4} {q:>3} {sup:>10} {form.value / form.energy:>12.2f} {delta:>10.1f}")

# the same quadratic form through Ramanujan sums, for D = 1..8 at once
gamma = np.exp(2j * np.pi * rng.random(101))
by_ramanujan = largesieve.ls_quadratic_form_all_D(gamma, 8, 3)[0]
by_fft = [largesieve.ls_quadratic_form(gamma, D, 3).value for D in range(1, 9)]
print()
print("largest route difference over D <= 8:", max(abs(a - b) for a, b in zip(by_ramanujan, by_fft)))
