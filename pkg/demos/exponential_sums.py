"""The complete exponential sums behind the level-of-distribution argument.

Prints a few quadratic Kloosterman sums, checks the Salie-type evaluation
modulo q^2 and the twisted multiplicativity, and shows the forced zeros of
the unit-restricted Gauss sum.

Run:  python3 demos/exponential_sums.py
"""

from sqfpal import expsums

for c, d, q in [(1, 2, 3), (1, 1, 4), (2, 5, 7), (3, 1, 25)]:
    r = expsums.k2(c, d, q)
    print(f"K2({c},{d};{q}) = {r.value:.6f}   |K2| = {abs(r):.6f}")

print()
for c, d, q in [(1, 2, 3), (3, 4, 5), (2, 7, 9)]:
    s = expsums.k2_salie(c, d, q)
    print(f"mod {q}^2, c={c}, d={d}: short sum {s.via_formula:.6f}, full sum {s.via_definition:.6f}, agree={s.agree}")

print()
for c, d, q, r in [(1, 2, 3, 4), (5, 7, 9, 25)]:
    m = expsums.k2_crt_check(c, d, q, r)
    print(f"K2({c},{d};{q}*{r}) split over the factors: agree={m.agree}")

print()
zeros = [q for q in range(2, 101) if expsums.gauss_star_structure_check(1, q).predicted_vanish]
print("moduli <= 100 where G*(1;q) must vanish:", zeros)
