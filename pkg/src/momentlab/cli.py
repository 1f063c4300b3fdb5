"""Command-line front end.

Subcommands
-----------
table     exact distribution row as k,count pairs (CSV) or a dense array (JSON)
moment    exact and/or two-term asymptotic factorial moment at one size
transfer  log-power coefficient estimate vs. the exact series oracle
simulate  Monte Carlo factorial moment with standard error (seeded, exact
          reproducibility independent of --threads)
compare   convergence report of asymptotic vs. exact moments over an n-grid
verify    coefficient cross-check for s = 1..10, all models; exit 4 on failure

Conventions: natural logarithms everywhere (the gamma-constant corrections
only hold for ln); CSV has a header row, counts as exact decimal integers,
rationals as "p/q", reals with 15 significant digits, LF line endings; JSON
carries a "schema": 1 field.  Output is deterministic: identical flags (and
seed) give byte-identical bytes, data on stdout, diagnostics on stderr.
Exit codes: 0 success, 2 invalid arguments, 3 resource limit exceeded,
4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .expansions import asymptotic_moment, coefficient_crosscheck
from .moments import factorial_moment, quicksort_mean
from .simulate import estimate_factorial_moment
from .tables import Model, RowLimitError, distribution_table, row_limit
from .transfer import (
    LogPowerTerm,
    OrderLimitError,
    SeriesBudgetError,
    exact_coefficient,
    highprec_coefficient,
    transfer_term,
)

CROSSCHECK_TOLERANCE = 1e-10
CROSSCHECK_MAX_S = 10

# cycles rows are cheap up to here; beyond, the high-precision series oracle
# supplies exact moments
_CYCLES_TABLE_CUTOFF = 200


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _fmt_real(x) -> str:
    return format(float(x), ".15g")


def _fmt_exact(value) -> str:
    if isinstance(value, (Fraction, int)):
        return str(value)
    return _fmt_real(value)


@dataclass(frozen=True)
class ReportRow:
    model: str
    s: int
    n: int
    exact: str
    asym: float
    abs_err: float
    rel_err: float | None  # None when exact == 0
    source: str  # table | closed-form | oracle


def _exact_moment(model: Model, n: int, s: int):
    """Exact s-th moment at n with its provenance label.

    Prefers tables; falls back to the high-precision series oracle for
    cycles (the moment series is exactly the log-power series there) and
    to the certified closed form for the quicksort mean.
    """
    if model is Model.CYCLES and n > _CYCLES_TABLE_CUTOFF:
        return highprec_coefficient(1, s, n), "oracle"
    if model is Model.QUICKSORT and n > row_limit(model):
        if s == 1:
            return quicksort_mean(n), "closed-form"
        raise RowLimitError(
            f"quicksort moments with s >= 2 need exact rows; n={n} is over the cap"
        )
    return factorial_moment(distribution_table(model, n), s), "table"


def compare_rows(
    model: Model, s: int, grid: list[int], *, high_precision: bool = False
) -> list[ReportRow]:
    """Convergence study: one ReportRow per grid point.

    ``high_precision`` evaluates the asymptotic side and the error
    arithmetic in >= 200-bit floats instead of doubles.
    """
    rows = []
    for n in grid:
        exact, source = _exact_moment(model, n, s)
        asym = asymptotic_moment(model, n, s, high_precision=high_precision)
        if high_precision:
            with mp.workdps(60):
                exact_hp = (
                    mp.mpf(exact.numerator) / exact.denominator
                    if isinstance(exact, Fraction)
                    else exact
                )
                abs_err = abs(asym - exact_hp)
                rel_err = float(abs_err / abs(exact_hp)) if exact_hp != 0 else None
                abs_err, asym = float(abs_err), float(asym)
        else:
            exact_f = float(exact)
            abs_err = abs(asym - exact_f)
            rel_err = abs_err / abs(exact_f) if exact_f != 0 else None
        rows.append(
            ReportRow(
                model.value, s, n, _fmt_exact(exact), asym, abs_err, rel_err, source
            )
        )
    return rows


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _emit_csv(header: list[str], rows: list[list[str]]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, ensure_ascii=False, indent=2))
    sys.stdout.write("\n")


def _opt(value, formatter=_fmt_real):
    return "" if value is None else formatter(value)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_table(args) -> int:
    table = distribution_table(Model(args.model), args.n)
    if args.format == "csv":
        _emit_csv(
            ["k", "count"],
            [[str(k), str(c)] for k, c in enumerate(table.counts) if c],
        )
    else:
        _emit_json(
            {
                "schema": 1,
                "command": "table",
                "model": args.model,
                "n": args.n,
                "counts": list(table.counts),
            }
        )
    return 0


def _cmd_moment(args) -> int:
    model = Model(args.model)
    want_exact = args.mode in ("exact", "both")
    want_asym = args.mode in ("asym", "both")
    if want_asym and (args.n < 2 or args.s < 1):
        raise CommandError(2, "asymptotic moments require --n >= 2 and --s >= 1")
    exact = factorial_moment(distribution_table(model, args.n), args.s) if want_exact else None
    asym = asymptotic_moment(model, args.n, args.s) if want_asym else None
    if args.format == "csv":
        _emit_csv(
            ["model", "s", "n", "exact", "asym"],
            [[args.model, str(args.s), str(args.n), _opt(exact, _fmt_exact), _opt(asym)]],
        )
    else:
        _emit_json(
            {
                "schema": 1,
                "command": "moment",
                "model": args.model,
                "s": args.s,
                "n": args.n,
                "mode": args.mode,
                "exact": None if exact is None else _fmt_exact(exact),
                "asym": None if asym is None else float(asym),
            }
        )
    return 0


def _cmd_transfer(args) -> int:
    if args.alpha < 1 or args.beta < 0:
        raise CommandError(2, "--alpha must be >= 1 and --beta >= 0")
    if args.n < 2:
        raise CommandError(2, "--n must be >= 2")
    if args.order is not None and args.order < 0:
        raise CommandError(2, "--order must be nonnegative")
    term = LogPowerTerm(Fraction(1), args.alpha, args.beta)
    estimate = transfer_term(
        term, args.n, order=args.order, high_precision=args.precision == "high"
    )
    oracle = exact_coefficient(args.alpha, args.beta, args.n)
    estimate_f = float(estimate)
    oracle_f = float(oracle)
    abs_err = abs(estimate_f - oracle_f)
    rel_err = abs_err / abs(oracle_f) if oracle_f != 0 else None
    if args.format == "csv":
        _emit_csv(
            ["alpha", "beta", "n", "order", "estimate", "oracle", "abs_err", "rel_err"],
            [
                [
                    str(args.alpha),
                    str(args.beta),
                    str(args.n),
                    "" if args.order is None else str(args.order),
                    _fmt_real(estimate_f),
                    _fmt_real(oracle_f),
                    _fmt_real(abs_err),
                    _opt(rel_err),
                ]
            ],
        )
    else:
        _emit_json(
            {
                "schema": 1,
                "command": "transfer",
                "alpha": args.alpha,
                "beta": args.beta,
                "n": args.n,
                "order": args.order,
                "estimate": estimate_f,
                "oracle": oracle_f,
                "oracle_exact": str(oracle),
                "abs_err": abs_err,
                "rel_err": rel_err,
            }
        )
    return 0


def _cmd_simulate(args) -> int:
    if args.trials < 2:
        raise CommandError(2, "--trials must be at least 2")
    if args.seed < 0 or args.seed >= 1 << 64:
        raise CommandError(2, "--seed must be a 64-bit unsigned integer")
    if args.threads < 1:
        raise CommandError(2, "--threads must be positive")
    est = estimate_factorial_moment(
        Model(args.model), args.n, args.s, args.trials, args.seed, threads=args.threads
    )
    if args.format == "csv":
        _emit_csv(
            ["model", "s", "n", "trials", "seed", "mean", "stderr"],
            [
                [
                    args.model,
                    str(est.s),
                    str(est.n),
                    str(est.trials),
                    str(est.seed),
                    _fmt_real(est.mean),
                    _fmt_real(est.stderr),
                ]
            ],
        )
    else:
        _emit_json(
            {
                "schema": 1,
                "command": "simulate",
                "model": args.model,
                "s": est.s,
                "n": est.n,
                "trials": est.trials,
                "seed": est.seed,
                "mean": est.mean,
                "stderr": est.stderr,
            }
        )
    return 0


def _parse_grid(spec: str) -> list[int]:
    try:
        grid = [int(part) for part in spec.split(",") if part.strip() != ""]
    except ValueError:
        raise CommandError(2, f"--n-grid must be comma-separated integers, got {spec!r}")
    if not grid:
        raise CommandError(2, "--n-grid is empty")
    if any(n < 2 for n in grid):
        raise CommandError(2, "--n-grid entries must be >= 2")
    return grid


def _cmd_compare(args) -> int:
    if args.s < 1:
        raise CommandError(2, "--s must be >= 1")
    grid = _parse_grid(args.n_grid)
    rows = compare_rows(
        Model(args.model), args.s, grid, high_precision=args.precision == "high"
    )
    if args.format == "csv":
        _emit_csv(
            ["model", "s", "n", "exact", "asym", "abs_err", "rel_err", "source"],
            [
                [
                    r.model,
                    str(r.s),
                    str(r.n),
                    r.exact,
                    _fmt_real(r.asym),
                    _fmt_real(r.abs_err),
                    _opt(r.rel_err),
                    r.source,
                ]
                for r in rows
            ],
        )
    else:
        _emit_json(
            {
                "schema": 1,
                "command": "compare",
                "model": args.model,
                "s": args.s,
                "rows": [
                    {
                        "n": r.n,
                        "exact": r.exact,
                        "asym": r.asym,
                        "abs_err": r.abs_err,
                        "rel_err": r.rel_err,
                        "source": r.source,
                    }
                    for r in rows
                ],
            }
        )
    return 0


def _cmd_verify(args) -> int:
    rows = []
    failures = 0
    for model in Model:
        for s in range(1, CROSSCHECK_MAX_S + 1):
            check = coefficient_crosscheck(model, s)
            for which, scale, pair, err in (
                ("leading", check.leading_scale, check.leading, check.rel_errors()[0]),
                ("second", check.second_scale, check.second, check.rel_errors()[1]),
            ):
                ok = err <= CROSSCHECK_TOLERANCE
                if not ok:
                    failures += 1
                rows.append(
                    {
                        "model": model.value,
                        "s": s,
                        "coefficient": which,
                        "scale": scale,
                        "from_transfer": pair[0],
                        "from_theorem": pair[1],
                        "rel_err": err,
                        "status": "ok" if ok else "FAIL",
                    }
                )
    if args.format == "csv":
        _emit_csv(
            [
                "model",
                "s",
                "coefficient",
                "scale",
                "from_transfer",
                "from_theorem",
                "rel_err",
                "status",
            ],
            [
                [
                    r["model"],
                    str(r["s"]),
                    r["coefficient"],
                    r["scale"],
                    _fmt_real(r["from_transfer"]),
                    _fmt_real(r["from_theorem"]),
                    _fmt_real(r["rel_err"]),
                    r["status"],
                ]
                for r in rows
            ],
        )
    else:
        _emit_json(
            {
                "schema": 1,
                "command": "verify",
                "tolerance": CROSSCHECK_TOLERANCE,
                "results": rows,
                "passed": failures == 0,
            }
        )
    if failures:
        print(f"verify: {failures} coefficient check(s) failed", file=sys.stderr)
        return 4
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _add_model(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--model", choices=[m.value for m in Model], required=True,
        help="which cost statistic",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentlab",
        description=(
            "Exact cost distributions, factorial moments, and asymptotic "
            "estimates for permutation cycle counts, inversion counts, and "
            "randomized-quicksort comparisons.  All logarithms are natural "
            "logs (base e), including in quicksort outputs.  The MOMENTLAB_ROW_LIMIT "
            "environment variable overrides the per-model row caps."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="exact distribution row")
    _add_model(p)
    p.add_argument("--n", type=int, required=True, help="input size (n >= 0)")
    _add_format(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("moment", help="factorial moment at one size")
    _add_model(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True, help="moment order (s >= 0)")
    p.add_argument("--mode", choices=["exact", "asym", "both"], default="both")
    _add_format(p)
    p.set_defaults(func=_cmd_moment)

    p = sub.add_parser(
        "transfer",
        help="log-power coefficient: asymptotic estimate vs exact series oracle",
    )
    p.add_argument("--alpha", type=int, required=True, help="power of 1/(1-u), >= 1")
    p.add_argument("--beta", type=int, required=True, help="power of log(1/(1-u)), >= 0")
    p.add_argument("--n", type=int, required=True, help="coefficient index (n >= 2)")
    p.add_argument(
        "--order", type=int, default=None,
        help="truncate the correction bracket at this order (default: full)",
    )
    p.add_argument("--precision", choices=["double", "high"], default="double")
    _add_format(p)
    p.set_defaults(func=_cmd_transfer)

    p = sub.add_parser("simulate", help="Monte Carlo factorial moment")
    _add_model(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True, help="64-bit unsigned seed")
    p.add_argument(
        "--threads", type=int, default=1,
        help="worker processes; never changes the result, only the wall time",
    )
    _add_format(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compare", help="exact vs asymptotic over an n-grid")
    _add_model(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument(
        "--n-grid", required=True,
        help="comma-separated sizes, e.g. 100,1000,10000 (used literally)",
    )
    p.add_argument("--precision", choices=["double", "high"], default="double")
    _add_format(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser(
        "verify",
        help="cross-check transferred expansion coefficients against the "
        "stated asymptotics for s = 1..10",
    )
    _add_format(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (RowLimitError, OrderLimitError, SeriesBudgetError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
