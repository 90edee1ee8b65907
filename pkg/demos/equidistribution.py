"""Square-free palindromes in residue classes against the predicted main term.

Run:  python3 demos/equidistribution.py
"""

from sqfpal import equidist, palsets

cfg = equidist.ExperimentConfig(base=10, xs=(10**6, 10**8, 10**10), moduli=(7, 13, 17, 19))
rep = equidist.run_experiment(cfg)

print(f"{'x':>12} {'|P*|':>8} {'max rel err':>12} {'sigma_hat':>10} {'E':>10}")
for agg in rep.aggregates:
    print(
        f"{agg['x']:>12} {agg['star_count']:>8} {agg['max_rel_err']:>12.4f}"
        f" {agg['sigma_hat']:>10.3f} {agg['E']:>10.2f}"
    )

# the individual classes mod 7 at the largest scale
print()
print("x = 10^10, q = 7")
for x, q, a, count, main, err, rel, _ in rep.rows:
    if x == 10**10 and q == 7:
        print(f"  a={a}: {count:6d} square-free vs {main:9.2f} predicted ({(count - main) / main:+.4f})")

print()
print("all palindromes <= 10^10:", palsets.count_upto(10, 10**10))
print("coprime to b^3 - b:     ", palsets.count_upto(10, 10**10, "star"))
