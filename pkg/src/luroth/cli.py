"""Command-line entry point: ``luroth <subcommand> [flags]``.

Exit status is 0 on success, 1 on invalid input and 2 when a budget or the
working precision runs out.  Scalar commands print a bare result by default;
``--format csv`` adds ``# key=value`` provenance lines and ``--format json``
adds a ``params`` object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import construction as con
from . import experiments as exp
from . import expansion, moran, runlength
from .errors import BudgetError, DomainError, LurothError


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for budget exhaustion here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- output


def _jsonable(v):
    if isinstance(v, Fraction):
        return expansion.format_rational(v)
    if isinstance(v, moran.CertifiedValue):
        return {"value": float(v.value), "error_bound": float(v.error_bound)}
    if isinstance(v, tuple):
        return list(v)
    return v


def _params(args) -> dict:
    skip = {"command", "func", "format", "out"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def _emit(args, text: Optional[str] = None, rows: Optional[list[dict]] = None,
          record: Optional[dict] = None) -> None:
    """Write one result in the requested format.

    text: the bare answer for --format text.  rows: table for csv.  record: object for json.
    """
    fmt = args.format or ("text" if text is not None else "csv")
    out = io.StringIO()
    if fmt == "text":
        if text is None:
            raise UsageError(f"{args.command} has no plain-text form; use --format csv or json")
        out.write(text + "\n")
    elif fmt == "csv":
        for k, v in _params(args).items():
            out.write(f"# {k}={_jsonable(v)}\n")
        if rows is None:
            rows = [record] if record is not None else [{"result": text}]
        if rows:
            writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: "" if v is None else _jsonable(v) for k, v in row.items()})
    else:
        payload = {"command": args.command, "params": {k: _jsonable(v) for k, v in _params(args).items()}}
        if record is not None:
            payload["result"] = record
        elif rows is not None:
            payload["rows"] = rows
        else:
            payload["result"] = text
        out.write(json.dumps(payload, default=_jsonable, indent=None) + "\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out.getvalue())
    else:
        sys.stdout.write(out.getvalue())


# ---------------------------------------------------------------- commands


def _require(args, *names):
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            raise UsageError(f"{args.command} requires --{name}")


def cmd_expand(args):
    _require(args, "x", "n")
    word = expansion.digits(args.x, args.n)
    _emit(args, text=expansion.format_digits(word),
          record={"digits": list(word)}, rows=[{"position": i + 1, "digit": d} for i, d in enumerate(word)])


def cmd_reconstruct(args):
    _require(args, "digits")
    value = expansion.evaluate(args.digits)
    _emit(args, text=expansion.format_rational(value), record={"value": value})


def cmd_cylinder(args):
    if args.digits is None:
        _require(args, "x", "n")
        args.digits = expansion.digits(args.x, args.n)
    iv = expansion.cylinder(args.digits)
    rec = {"word": expansion.format_digits(args.digits), "left": iv.left, "right": iv.right, "length": iv.length}
    _emit(args, text=f"({expansion.format_rational(iv.left)}, {expansion.format_rational(iv.right)}]", record=rec)


def cmd_runlength(args):
    if args.digits is None:
        _require(args, "x", "n")
        args.digits = expansion.digits(args.x, args.n)
    traj = runlength.run_trajectory(args.digits)
    rows = [{"n": n, "ell": ell, "ratio_linear": ell / n,
             "ratio_log2": ell / runlength._denominator(n, "log2") if n >= 2 else None}
            for n, ell in enumerate(traj, start=1)]
    _emit(args, text=str(traj[-1]), rows=rows)


def cmd_solve_s(args):
    _require(args, "u")
    if args.M is None:
        value = moran.solve_s(args.u, tol=args.tol)
    else:
        value = moran.solve_sM(args.u, args.M, tol=args.tol)
    _emit(args, text=moran.format_certified(value, args.tol), record={"s": value})


def cmd_dim(args):
    _require(args, "alpha", "beta")
    params = moran.DimParams(args.alpha, args.beta)
    value = moran.dim_E(params, tol=args.tol)
    case = moran.dim_case(params)
    text = moran.format_certified(value, args.tol) if case == "middle" else str(int(value.value))
    rec = {"case": case, "dim": value}
    if case == "middle":
        rec["zeta"] = moran.zeta(params)
    _emit(args, text=text, record=rec)


def cmd_dim_surface(args):
    rows = exp.dim_surface(args.resolution, tol=args.tol)
    _emit(args, rows=rows)


def _schedule(args) -> con.Schedule:
    _require(args, "alpha", "beta", "M", "k-max")
    return con.build_schedule(args.alpha, args.beta, args.M, args.k_max)


def cmd_schedule(args):
    sched = _schedule(args)
    rows = []
    for k in range(sched.k_max):
        rows.append({"k": k + 1, "n": sched.n[k], "m": sched.m[k],
                     "p": sched.p[k] if k < sched.k_max - 1 else None,
                     "n_prime": sched.n_prime[k], "u": sched.u[k], "u_float": float(sched.u[k])})
    _emit(args, rows=rows, record=sched.to_dict() if args.format == "json" else None)


def cmd_construct(args):
    sched = _schedule(args)
    if args.seed is None and args.fill is None:
        raise UsageError("construct needs --seed (seeded fill) or --fill (constant fill)")
    depth = args.depth or sched.g_horizon
    word = con.generate_point(sched, depth, fill=args.fill, seed=args.seed)
    report = con.run_profile_check(word, sched)
    rec = {"digits": expansion.format_digits(word), "profile_ok": report.ok,
           "blocks_checked": report.blocks_checked, "first_mismatch": report.first_mismatch,
           "deleted": con.deleted_count(sched, depth)}
    _emit(args, text=expansion.format_digits(word), record=rec)


def cmd_enumerate(args):
    sched = _schedule(args)
    _require(args, "depth")
    words = con.enumerate_D_n(sched, args.depth)
    intervals = con.fundamental_intervals_at(sched, args.depth)
    gaps = con.gap_table(sched, args.depth)
    mu = con.mu_levels(sched, args.depth, con.mu_exponents(sched, tol=args.tol))[args.depth]
    rows = [{"word": expansion.format_digits(w), "left": iv.left, "length": iv.length,
             "mu": float(m), "gap": g} for w, iv, m, g in zip(words, intervals, mu, gaps)]
    _emit(args, rows=rows)


def cmd_mu_check(args):
    sched = _schedule(args)
    _require(args, "depth")
    exponents = con.mu_exponents(sched, tol=args.tol)
    levels = con.mu_levels(sched, args.depth, exponents)
    rows = []
    for n in range(1, args.depth + 1):
        parent, child = levels[n - 1], levels[n]
        branching = child.size // parent.size
        err = float(abs(child.reshape(parent.size, branching).sum(axis=1) - parent).max())
        rows.append({"depth": n, "words": child.size, "total_mass": float(child.sum()),
                     "max_additivity_error": err})
    _emit(args, rows=rows)


def cmd_gap_check(args):
    sched = _schedule(args)
    _require(args, "depth")
    rows = []
    for n in range(1, args.depth + 1):
        intervals = con.fundamental_intervals_at(sched, n)
        gaps = con.gap_table(sched, n)
        ratios = [g / iv.length for iv, g in zip(intervals, gaps) if g is not None]
        worst = min(ratios) if ratios else None
        rows.append({"depth": n, "words": len(intervals), "min_gap_over_length": worst,
                     "bound": Fraction(1, sched.M - 1),
                     "holds": worst is None or worst >= Fraction(1, sched.M - 1)})
    _emit(args, rows=rows)


def cmd_holder(args):
    sched = _schedule(args)
    _require(args, "depth", "seed")
    fit = con.holder_estimate(sched, args.depth, args.pairs, args.seed, sampling=args.sampling)
    rec = {"slope": fit.slope, "slope_stderr": fit.slope_stderr, "intercept": fit.intercept,
           "pairs": fit.pairs, "order_violations": fit.order_violations,
           "max_inflation_ratio": fit.max_inflation_ratio,
           "log_dx_min": fit.log_dx_range[0], "log_dx_max": fit.log_dx_range[1]}
    _emit(args, text=f"{fit.slope:.6f} ± {fit.slope_stderr:.2g}", record=rec)


def cmd_lln(args):
    _require(args, "seed", "n")
    config = exp.ExperimentConfig(seed=args.seed, trials=args.trials, n=args.n)
    summary = exp.lln_experiment(config)
    row = {k: summary[k] for k in ("n", "trials", "mean", "median", "std", "iqr")}
    row.update({f"q{k}": v for k, v in summary["quantiles"].items()})
    _emit(args, rows=[row], record=summary if args.format == "json" else None)


COMMANDS = {
    "expand": (cmd_expand, "first n digits of x"),
    "reconstruct": (cmd_reconstruct, "rational value of a finite digit string"),
    "cylinder": (cmd_cylinder, "cylinder interval of a digit string"),
    "runlength": (cmd_runlength, "longest-run trajectory of a digit string"),
    "solve-s": (cmd_solve_s, "root of the pressure equation (truncated with --M)"),
    "dim": (cmd_dim, "dimension of the exceptional set E(alpha, beta)"),
    "dim-surface": (cmd_dim_surface, "dimension over a grid of (alpha, beta)"),
    "schedule": (cmd_schedule, "integer schedule of the Cantor construction"),
    "construct": (cmd_construct, "digits of a point of G(M) and its run profile"),
    "enumerate": (cmd_enumerate, "admissible words with interval, mass and gap"),
    "mu-check": (cmd_mu_check, "additivity and total mass of mu per depth"),
    "gap-check": (cmd_gap_check, "gap versus length of fundamental intervals"),
    "holder": (cmd_holder, "fitted Hölder exponent of the deletion map"),
    "lln": (cmd_lln, "Monte Carlo of ell_n / log2 n"),
}

TOL_COMMANDS = {"solve-s", "dim", "dim-surface", "enumerate", "mu-check"}
SCHEDULE_COMMANDS = {"schedule", "construct", "enumerate", "mu-check", "gap-check", "holder"}


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _tol(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"tolerance must lie in (0, 1), got {text}")
    return value


def _nonneg_real(text: str) -> Fraction:
    value = expansion.to_rational(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="luroth", description="Lüroth digit run lengths and exceptional-set dimensions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (func, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("text", "csv", "json"))
        p.add_argument("--out", help="write output to this path instead of stdout")
        if name in TOL_COMMANDS:
            p.add_argument("--tol", type=_tol, default=moran.DEFAULT_TOL)
        if name in {"expand", "cylinder", "runlength"}:
            p.add_argument("--x", type=expansion.to_rational, help="point of (0, 1] as p/q")
        if name in {"expand", "cylinder", "runlength", "lln"}:
            p.add_argument("--n", type=_positive)
        if name in {"reconstruct", "cylinder", "runlength"}:
            p.add_argument("--digits", type=expansion.parse_digits, help="comma-separated, e.g. 3,2,2")
        if name == "solve-s":
            p.add_argument("--u", type=_nonneg_real)
            p.add_argument("--M", type=int)
        if name == "dim" or name in SCHEDULE_COMMANDS:
            p.add_argument("--alpha", type=expansion.to_rational)
            p.add_argument("--beta", type=expansion.to_rational)
        if name in SCHEDULE_COMMANDS:
            p.add_argument("--M", type=int, default=3)
            p.add_argument("--k-max", type=_positive, default=4)
            p.add_argument("--depth", type=_positive)
        if name == "dim-surface":
            p.add_argument("--resolution", type=int, default=10)
        if name in {"construct", "holder", "lln"}:
            p.add_argument("--seed", type=int)
        if name == "construct":
            p.add_argument("--fill", type=int, help="constant free digit instead of a seeded fill")
        if name == "holder":
            p.add_argument("--pairs", type=_positive, default=1000)
            p.add_argument("--sampling", choices=con.HOLDER_SAMPLING, default="stratified")
        if name == "lln":
            p.add_argument("--trials", type=_positive, default=200)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LurothError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
