"""Command line entry point: ``sqfpal <subcommand> [flags]``.

Exit codes: 0 success, 1 a ``verify`` check failed, 2 usage or domain error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction

import numpy as np

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Integer flag value; scientific notation such as ``1e10`` is accepted if exact."""
    try:
        d = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def parse_int_list(text: str) -> list[int]:
    return [parse_int(t) for t in text.split(",") if t.strip()]


def parse_real(text: str) -> Fraction:
    """Real flag value kept exact: ``0.25``, ``1/3`` and ``1e-3`` all become fractions."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")


# --- output -------------------------------------------------------------------


def _emit(fmt: str | None, columns: list[str], rows: list[list], out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        doc = {"schema": 1, "columns": columns, "rows": [[_plain(v) for v in r] for r in rows]}
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    if fmt is None and len(rows) == 1 and len(columns) == 1:
        out.write(f"{_txt(rows[0][0])}\n")
        return
    buf = io.StringIO()
    if fmt in ("csv", "tsv"):
        buf.write("# schema=1\n")
    w = csv.writer(buf, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_txt(v) for v in r])
    out.write(buf.getvalue())


def _txt(v) -> str:
    if isinstance(v, complex):
        return repr(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


def _plain(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, Fraction):
        return str(v)
    if hasattr(v, "item"):
        return v.item()
    return v


# --- subcommands -------------------------------------------------------------


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError(f"{args.cmd} needs " + ", ".join("--" + m for m in missing))


def cmd_enumerate(args) -> int:
    from . import palsets

    from .harmonics import even_palindromes

    b = args.base
    if args.block_L is not None:
        vals = palsets.pal_block_array(b, args.block_L)
        if args.variant == "star":
            vals = vals[np.gcd(vals, b**3 - b) == 1]
    else:
        _need(args, "max-x")
        pick = {"all": palsets.palindromes_upto, "star": palsets.star_members, "even": even_palindromes}
        vals = pick[args.variant](b, args.max_x)
    if args.modulus is not None:
        vals = vals[vals % args.modulus == (args.residue or 0) % args.modulus]
    _emit(args.out or "csv", ["n"], [[int(v)] for v in vals])
    return EXIT_OK


def cmd_count(args) -> int:
    from . import palsets

    if args.block_L is not None:
        n = palsets.block_size(args.base, args.block_L)
    else:
        _need(args, "max-x")
        n = palsets.count_upto(args.base, args.max_x, args.variant)
    _emit(args.out, ["count"], [[n]])
    return EXIT_OK


def cmd_ap_count(args) -> int:
    from . import palsets

    _need(args, "block-L", "modulus")
    keep = not args.no_coprime
    if args.residue is not None:
        n = palsets.count_in_ap(args.base, args.block_L, args.modulus, args.residue, keep)
        _emit(args.out, ["count"], [[n]])
    else:
        h = palsets.ap_histogram(args.base, args.block_L, args.modulus, keep)
        _emit(args.out or "csv", ["a", "count"], [[a, int(c)] for a, c in enumerate(h)])
    return EXIT_OK


def cmd_square_pairs(args) -> int:
    from . import palsets

    _need(args, "block-L", "nmax")
    q = args.modulus or 1
    a = args.residue or 0
    if args.dyadic:
        from .checks import square_pair_profile

        rows = [[N, c, r] for N, c, r in square_pair_profile(args.base, args.block_L, q, a, args.nmax)]
        _emit(args.out or "csv", ["N", "count", "ratio"], rows)
    else:
        n = palsets.count_square_pairs(args.base, args.block_L, q, a, args.nmax, args.strategy)
        _emit(args.out, ["count"], [[n]])
    return EXIT_OK


def cmd_expsum(args) -> int:
    from . import expsums

    _need(args, "modulus")
    q, c, d = args.modulus, args.c, args.d
    kind = args.kind
    if kind == "gauss":
        g = expsums.gauss_star_structure_check(c, q)
        _emit(args.out or "csv", ["value", "abs", "predicted_vanish", "bound_ok"], [[g.value, abs(g.value), g.predicted_vanish, g.bound_ok]])
    elif kind in ("k2", "kummer"):
        r = (expsums.k2 if kind == "k2" else expsums.kummer2)(c, d, q)
        _emit(args.out or "csv", ["value", "abs"], [[r.value, abs(r.value)]])
    elif kind == "salie":
        r = expsums.k2_salie(c, d, q)
        _emit(args.out or "csv", ["via_formula", "via_definition", "agree"], [list(r)])
    elif kind == "crt":
        _need(args, "modulus2")
        r = expsums.k2_crt_check(c, d, q, args.modulus2)
        _emit(args.out or "csv", ["lhs", "rhs", "agree"], [list(r)])
    elif kind == "correlation":
        r = expsums.correlation_check(c, d, q)
        _emit(args.out or "csv", ["sum_form", "ramanujan_form", "bound", "ok"], [list(r)])
    elif kind == "twisted":
        _need(args, "nmax")
        r = expsums.twisted_incomplete_k2(float(args.alpha), args.a, c, q, args.nmax)
        _emit(args.out or "csv", ["value", "bound1", "bound2"], [[r.value, r.bound1, r.bound2]])
    return EXIT_OK


def cmd_harmonics(args) -> int:
    from . import harmonics

    kind = args.kind
    if kind == "phi":
        _need(args, "nmax")
        v = harmonics.phi_big(args.alpha, args.base, args.nmax)
        _emit(args.out, ["phi"], [[v]])
    elif kind == "moment":
        _need(args, "nmax")
        v = harmonics.phi_moment_exact(args.base, args.nmax, args.K)
        _emit(args.out, ["moment"], [[v]])
    elif kind == "pal-sum":
        _need(args, "nmax")
        r = harmonics.pal_exp_sum_check(args.alpha, args.base, args.nmax)
        _emit(args.out or "csv", ["lhs", "rhs", "holds"], [list(r)])
    elif kind == "incomplete":
        _need(args, "max-x")
        r = harmonics.incomplete_sum_check(args.alpha, args.base, args.max_x)
        _emit(args.out or "csv", ["lhs", "rhs", "holds"], [list(r)])
    return EXIT_OK


def cmd_sieve(args) -> int:
    from . import largesieve

    _need(args, "dmax", "nmax")
    q, D, N = args.modulus or 1, args.dmax, args.nmax
    eps = float(args.epsilon)
    delta = largesieve.delta_bound(D, N, q, eps)
    if args.kind == "delta":
        _emit(args.out, ["delta"], [[delta]])
    elif args.kind == "spacing":
        v = largesieve.spacing_count(D, N, q, args.alpha)
        _emit(args.out or "csv", ["count", "delta"], [[v, delta]])
    elif args.kind == "sup":
        v = largesieve.spacing_sup(D, N, q)
        _emit(args.out or "csv", ["sup", "delta", "ratio"], [[v, delta, v / delta]])
    elif args.kind == "quadratic":
        rng = np.random.default_rng(args.seed)
        g = rng.standard_normal(2 * N + 1) + 1j * rng.standard_normal(2 * N + 1)
        r = largesieve.ls_quadratic_form(g, D, q)
        _emit(args.out or "csv", ["value", "energy", "ratio"], [[r.value, r.energy, r.value / (delta * r.energy)]])
    return EXIT_OK


def cmd_equidist(args) -> int:
    from . import equidist

    _need(args, "xs")
    if (args.moduli is None) == (args.qmax is None):
        raise UsageError("equidist needs exactly one of --moduli or --qmax")
    cfg = equidist.ExperimentConfig(
        base=args.base,
        xs=tuple(args.xs),
        moduli=tuple(args.moduli) if args.moduli is not None else None,
        Q=args.qmax,
        dyadic=not args.all_q,
        D=args.dmax,
        y_policy=args.y_policy,
        out=args.out or "csv",
        threads=args.threads,
        seed=args.seed,
        baseline=args.baseline,
    )
    rep = equidist.run_experiment(cfg)
    sys.stdout.write(rep.render(cfg.out))
    if args.summary:
        for a in rep.aggregates:
            sys.stderr.write(json.dumps(a) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import checks

    names = list(checks.REGISTRY) if args.name == "all" else [args.name]
    if args.name != "all" and args.name not in checks.REGISTRY:
        raise UsageError(f"unknown check {args.name!r}; choose from: all, " + ", ".join(checks.REGISTRY))
    opts = dict(
        qmax=args.qmax,
        nmax=args.nmax,
        Nmax=args.nmax,
        xmax=args.max_x,
        Lmax=args.block_L,
        trials=args.trials,
        seed=args.seed,
        threads=args.threads_given,
        path=args.baseline,
    )
    failed = 0
    for name in names:
        res = checks.run(name, **opts)
        print(res.line(), flush=True)
        failed += not res.passed
    if len(names) > 1:
        print(f"{len(names) - failed}/{len(names)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_baseline(args) -> int:
    from . import baselines, checks

    old = baselines.load(args.baseline)
    new = checks.calibrate()
    lines = baselines.diff(old, new)
    for line in lines:
        print(line)
    if not lines:
        print("baselines unchanged")
    if args.check:
        return EXIT_FAIL if lines else EXIT_OK
    baselines.save(new, args.baseline)
    print(f"wrote {args.baseline or baselines.DEFAULT_PATH}")
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--base", type=parse_int, default=10)
    p.add_argument("--out", choices=("csv", "json", "tsv"), default=None)
    p.add_argument("--threads", type=parse_int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--seed", type=parse_int, default=None)
    p.add_argument("--baseline", metavar="PATH", default=None, help="baseline JSON file (default: packaged)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sqfpal", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"sqfpal {__version__}")
    sub = ap.add_subparsers(dest="cmd", metavar="subcommand")
    sub.required = True

    p = sub.add_parser("enumerate", help="list palindromes", epilog="CSV columns: n")
    _common(p)
    p.add_argument("--max-x", type=parse_int)
    p.add_argument("--block-L", type=parse_int)
    p.add_argument("--variant", choices=("all", "star", "even"), default="all")
    p.add_argument("--modulus", type=parse_int)
    p.add_argument("--residue", type=parse_int)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("count", help="count palindromes up to x or in a block", epilog="CSV columns: count")
    _common(p)
    p.add_argument("--max-x", type=parse_int)
    p.add_argument("--block-L", type=parse_int)
    p.add_argument("--variant", choices=("all", "star", "even"), default="all")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser(
        "ap-count",
        help="block palindromes coprime to the base in a residue class",
        epilog="CSV columns: count (with --residue) or a,count",
    )
    _common(p)
    p.add_argument("--block-L", type=parse_int)
    p.add_argument("--modulus", type=parse_int)
    p.add_argument("--residue", type=parse_int)
    p.add_argument("--no-coprime", action="store_true", help="drop the (l, b) = 1 filter")
    p.set_defaults(fn=cmd_ap_count)

    p = sub.add_parser(
        "square-pairs",
        help="pairs (n, l) with n ~ N and n^2 | l over a block class",
        epilog="CSV columns: count, or N,count,ratio with --dyadic",
    )
    _common(p)
    p.add_argument("--block-L", type=parse_int)
    p.add_argument("--modulus", type=parse_int)
    p.add_argument("--residue", type=parse_int)
    p.add_argument("--nmax", type=parse_int, help="N (with --dyadic: the first N of the profile)")
    p.add_argument("--strategy", choices=("auto", "residues", "palindromes"), default="auto")
    p.add_argument("--dyadic", action="store_true", help="profile over N, 2N, 4N, ...")
    p.set_defaults(fn=cmd_square_pairs)

    p = sub.add_parser(
        "expsum",
        help="Gauss, Kloosterman and Kummer sums and their identities",
        epilog="CSV columns depend on KIND: gauss value,abs,predicted_vanish,bound_ok; k2|kummer value,abs; "
        "salie via_formula,via_definition,agree; crt lhs,rhs,agree; correlation sum_form,ramanujan_form,bound,ok; "
        "twisted value,bound1,bound2",
    )
    _common(p)
    p.add_argument("kind", choices=("gauss", "k2", "kummer", "salie", "crt", "correlation", "twisted"))
    p.add_argument("--modulus", type=parse_int)
    p.add_argument("--modulus2", type=parse_int, help="second modulus for crt")
    p.add_argument("--c", type=parse_int, default=1)
    p.add_argument("--d", type=parse_int, default=0)
    p.add_argument("--a", type=parse_int, default=1)
    p.add_argument("--alpha", type=parse_real, default=Fraction(0))
    p.add_argument("--nmax", type=parse_int)
    p.set_defaults(fn=cmd_expsum)

    p = sub.add_parser(
        "harmonics",
        help="digit harmonics and their moments",
        epilog="CSV columns: phi | moment | lhs,rhs,holds",
    )
    _common(p)
    p.add_argument("kind", choices=("phi", "moment", "pal-sum", "incomplete"))
    p.add_argument("--alpha", type=parse_real, default=Fraction(0))
    p.add_argument("--nmax", type=parse_int, help="N")
    p.add_argument("--K", type=parse_int, default=1)
    p.add_argument("--max-x", type=parse_int)
    p.set_defaults(fn=cmd_harmonics)

    p = sub.add_parser(
        "sieve",
        help="large sieve with square moduli",
        epilog="CSV columns: delta | count,delta | sup,delta,ratio | value,energy,ratio",
    )
    _common(p)
    p.add_argument("kind", choices=("delta", "spacing", "sup", "quadratic"))
    p.add_argument("--dmax", type=parse_int, help="D")
    p.add_argument("--nmax", type=parse_int, help="N")
    p.add_argument("--modulus", type=parse_int, help="q")
    p.add_argument("--alpha", type=parse_real, default=Fraction(0))
    p.add_argument("--epsilon", type=parse_real, default=Fraction(1, 10))
    p.set_defaults(fn=cmd_sieve)

    p = sub.add_parser(
        "equidist",
        help="square-free palindromes in progressions against the main term",
        epilog="CSV columns: x,q,a,count,main_term,abs_err,rel_err,sigma_hat",
    )
    _common(p)
    p.add_argument("--xs", type=parse_int_list)
    p.add_argument("--moduli", type=parse_int_list)
    p.add_argument("--qmax", type=parse_int, help="use moduli q ~ Q (Q/2 < q <= Q) coprime to b^3 - b")
    p.add_argument("--all-q", action="store_true", help="with --qmax, use every q <= Q")
    p.add_argument("--dmax", type=parse_int, help="add the square-divisor aggregate over d ~ D")
    p.add_argument("--y-policy", choices=("sweep", "endpoint"), default="sweep")
    p.add_argument("--summary", action="store_true", help="per-scale aggregates on stderr")
    p.set_defaults(fn=cmd_equidist)

    p = sub.add_parser("verify", help="run a registered check or all of them")
    _common(p)
    p.add_argument("name", help="check name or 'all'")
    p.add_argument("--qmax", type=parse_int)
    p.add_argument("--nmax", type=parse_int)
    p.add_argument("--max-x", type=parse_int)
    p.add_argument("--block-L", type=parse_int)
    p.add_argument("--trials", type=parse_int)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("baseline", help="regenerate the frozen regression constants and show the diff")
    _common(p)
    p.add_argument("--check", action="store_true", help="only report drift; exit 1 if any")
    p.set_defaults(fn=cmd_baseline)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.threads_given = args.threads
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    if args.seed is None:
        from .checks import DEFAULT_SEED

        args.seed = DEFAULT_SEED
    try:
        return args.fn(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"sqfpal {args.cmd}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        print(f"sqfpal {args.cmd}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        where = getattr(exc, "filename", None)
        print(f"sqfpal {args.cmd}: I/O error{f' on {where}' if where else ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
