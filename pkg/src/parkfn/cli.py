"""Command-line harness for counting, decomposition, sampling, and
exact-vs-asymptotic comparison experiments.

Every command is deterministic given its flags: CSV uses LF line endings,
17-significant-digit decimals for reals, exact decimal strings for integers,
and num/den strings for rationals, so outputs are fit for golden-file
comparison.  Report-style commands (hist, compare) also render a matplotlib
figure next to each CSV unless --no-plot is given.

Exit codes: 0 success, 1 usage/domain error (message on stderr), 2 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .abel import AbelSpec, abel_multinomial, abel_special
from .asymptotics import (
    Regime,
    asym_boundary,
    asym_displacement,
    asym_mixed_moment,
    asym_moments_c0,
    asym_var_cov,
)
from .core import (
    ABParams,
    BudgetExceededError,
    InternalInvariantError,
    UVector,
    check_u_parking,
    enumerate_pf,
    enumeration_budget,
)
from .counting import (
    count_pf_composition,
    exact_joint_moment,
    exact_moment,
    first_coord_distribution,
)
from .goncarov import count_pf, count_pf_ab
from .multishuffle import maximal_v, decompose, DecompositionError
from .sampler import SamplerState, estimate_statistics

SCHEMA_VERSION = 1


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we map usage errors to 1
        raise UsageError(message)


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, str)):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    raise TypeError(f"unsupported cell type {type(value)!r}")


class Report:
    """One output table; knows how to serialize itself as CSV or JSON."""

    def __init__(self, command: str, columns: Sequence[str]):
        self.command = command
        self.columns = list(columns)
        self.rows: list[list[str]] = []

    def add(self, *cells):
        if len(cells) != len(self.columns):
            raise InternalInvariantError("report row width mismatch")
        self.rows.append([_format_cell(c) for c in cells])

    def as_csv(self) -> str:
        lines = [",".join(self.columns)]
        lines.extend(",".join(row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def as_json(self) -> str:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "columns": self.columns,
            "rows": [dict(zip(self.columns, row)) for row in self.rows],
        }
        return json.dumps(payload, indent=2) + "\n"

    def write(self, path: Path | None, fmt: str, stdout) -> None:
        text = self.as_json() if fmt == "json" else self.as_csv()
        if path is None:
            stdout.write(text)
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, newline="")


def _add_problem_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--u", help="comma-separated strictly increasing thresholds")
    parser.add_argument("--a", type=int, help="arithmetic offset a")
    parser.add_argument("--b", type=int, help="arithmetic step b")
    parser.add_argument("--c", help="rate c with a = c*m + b (rational, e.g. 1 or 1/2)")
    parser.add_argument("--m", type=int, help="number of cars m")


def _problem_from_args(args) -> tuple[UVector | None, ABParams | None]:
    """Resolve the problem spec: exactly one of u / (a,b,m) / (b,c,m)."""
    gave_u = args.u is not None
    gave_ab = args.a is not None
    gave_c = args.c is not None
    if gave_u + gave_ab + gave_c != 1:
        raise UsageError("give exactly one of --u, --a (with --b --m), or --c (with --b --m)")
    if gave_u:
        if args.b is not None or args.m is not None or args.a is not None:
            raise UsageError("--u cannot be combined with --a/--b/--c/--m")
        return UVector(_parse_int_list(args.u)), None
    if args.b is None or args.m is None:
        raise UsageError("arithmetic problems need both --b and --m")
    if gave_ab:
        params = ABParams(args.a, args.b, args.m)
    else:
        try:
            rate = Fraction(args.c)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse --c {args.c!r} as a rational") from exc
        params = ABParams.from_rate(args.b, rate, args.m)
    return None, params


def _regime_of(params: ABParams) -> Regime:
    if params.c is not None:
        return Regime(params.b, params.c, params.m)
    rate = Fraction(params.a - params.b, params.m)
    if rate < 0:
        raise UsageError(f"a={params.a} < b={params.b}: no regime c >= 0 matches")
    return Regime(params.b, rate, params.m)


def _derived_paths(base: Path, tag: str) -> tuple[Path, Path]:
    """Sibling CSV path for a secondary table, plus the figure path for a CSV."""
    return base.with_name(f"{base.stem}_{tag}{base.suffix}"), base.with_suffix(".png")


def _cmd_count(args, stdout) -> int:
    u, params = _problem_from_args(args)
    if u is None:
        u = params.uvector
    report = Report("count", ["method", "count"])
    results = {
        "goncarov": count_pf(u),
        "composition": count_pf_composition(u),
    }
    if params is not None:
        results["closed_form"] = count_pf_ab(params.a, params.b, params.m)
    top, m = u[len(u) - 1], len(u)
    if top**m <= enumeration_budget():
        results["enumeration"] = sum(1 for _ in enumerate_pf(u))
    if len(set(results.values())) != 1:
        raise InternalInvariantError(f"count cross-check failed: {results}")
    for method, value in results.items():
        report.add(method, value)
    report.write(args.output, args.format, stdout)
    return 0


def _cmd_enumerate(args, stdout) -> int:
    u, params = _problem_from_args(args)
    if u is None:
        u = params.uvector
    report = Report("enumerate", [f"pi_{i + 1}" for i in range(len(u))])
    for pi in enumerate_pf(u):
        report.add(*pi)
    report.write(args.output, args.format, stdout)
    return 0


def _cmd_check(args, stdout) -> int:
    u, params = _problem_from_args(args)
    if u is None:
        u = params.uvector
    pi = _parse_int_list(args.pi)
    report = Report("check", ["pi", "is_parking_function"])
    report.add(" ".join(map(str, pi)), check_u_parking(u, pi))
    report.write(args.output, args.format, stdout)
    return 0


def _cmd_decompose(args, stdout) -> int:
    u, params = _problem_from_args(args)
    if u is None:
        u = params.uvector
    suffix = _parse_int_list(args.suffix)
    report = Report("decompose", ["field", "value"])
    found = maximal_v(u, suffix)
    if found is None:
        report.add("status", "empty")
    else:
        v, k = found
        report.add("status", "ok")
        report.add("v", " ".join(map(str, v)))
        report.add("k", " ".join(str(i + 1) for i in k))  # 1-based for display
        parts = decompose(u, v, suffix)
        for j, word in enumerate(parts.components, start=1):
            report.add(f"component_{j}", " ".join(map(str, word)))
        report.add("interleaving", " ".join(str(t + 1) for t in parts.interleaving))
    report.write(args.output, args.format, stdout)
    return 0


def _require_ab(params: ABParams | None, command: str) -> ABParams:
    if params is None:
        raise UsageError(f"{command} works on arithmetic parameters; give --a/--b/--m or --c/--b/--m")
    return params


def _cmd_sample(args, stdout) -> int:
    _, params = _problem_from_args(args)
    params = _require_ab(params, "sample")
    state = SamplerState(params, args.seed)
    report = Report("sample", [f"pi_{i + 1}" for i in range(params.m)])
    for _ in range(args.n):
        report.add(*state.sample())
    report.write(args.output, args.format, stdout)
    return 0


def _cmd_hist(args, stdout) -> int:
    _, params = _problem_from_args(args)
    params = _require_ab(params, "hist")
    stats = estimate_statistics(params, args.n, seed=args.seed)

    coord = Report("hist", ["value", "count"])
    for value in range(1, params.max_pref + 1):
        coord.add(value, stats.hist_coord.get(value, 0))
    disp = Report("hist", ["value", "count"])
    for value in sorted(stats.hist_disp):
        disp.add(value, stats.hist_disp[value])

    if args.output is None:
        coord.write(None, args.format, stdout)
        return 0
    disp_path, coord_png = _derived_paths(args.output, "disp")
    coord.write(args.output, args.format, stdout)
    disp.write(disp_path, args.format, stdout)
    stdout.write(f"wrote {args.output} and {disp_path}\n")
    if not args.no_plot:
        from . import figures

        label = f"a={params.a} b={params.b} m={params.m} n={args.n} seed={args.seed}"
        figures.render_histogram(
            coord_png,
            list(range(1, params.max_pref + 1)),
            [stats.hist_coord.get(v, 0) for v in range(1, params.max_pref + 1)],
            f"first coordinate, {label}",
            "preference value",
            plateau_end=params.a,
        )
        disp_png = disp_path.with_suffix(".png")
        values = sorted(stats.hist_disp)
        figures.render_histogram(
            disp_png,
            values,
            [stats.hist_disp[v] for v in values],
            f"displacement, {label}",
            "displacement",
        )
        stdout.write(f"wrote {coord_png} and {disp_png}\n")
    return 0


def _cmd_moments(args, stdout) -> int:
    _, params = _problem_from_args(args)
    params = _require_ab(params, "moments")
    report = Report("moments", ["statistic", "exact", "decimal"])
    e1 = exact_moment(params, 1)
    e2 = exact_moment(params, 2)
    report.add("mean_coord", e1, float(e1))
    report.add("second_moment_coord", e2, float(e2))
    var1 = e2 - e1 * e1
    report.add("var_coord", var1, float(var1))
    m = params.m
    disp_mean = Fraction(params.b * m * (m - 1), 2) + params.a * m - m * e1
    report.add("mean_displacement", disp_mean, float(disp_mean))
    if m >= 2:
        e11 = exact_joint_moment(params, 1, 1)
        cov = e11 - e1 * e1
        report.add("joint_moment_coords", e11, float(e11))
        report.add("cov_coords", cov, float(cov))
        disp_var = m * var1 + m * (m - 1) * cov
        report.add("var_displacement", disp_var, float(disp_var))
    report.write(args.output, args.format, stdout)
    return 0


_COMPARE_STATS = ("mean", "second", "var", "joint", "cov", "boundary", "displacement")


@dataclass(frozen=True)
class AsymptoticReport:
    """One exact-vs-predicted comparison row of the compare command."""

    statistic: str
    exact: float
    predicted: float

    @property
    def abs_err(self) -> float:
        return abs(self.exact - self.predicted)

    @property
    def rel_err(self) -> float:
        return self.abs_err / abs(self.exact) if self.exact != 0 else float("inf")


def _cmd_compare(args, stdout) -> int:
    _, params = _problem_from_args(args)
    params = _require_ab(params, "compare")
    regime = _regime_of(params)
    wanted = _COMPARE_STATS if args.stats == "all" else tuple(args.stats.split(","))
    unknown = set(wanted) - set(_COMPARE_STATS)
    if unknown:
        raise UsageError(f"unknown compare statistics {sorted(unknown)}; pick from {_COMPARE_STATS}")
    special = regime.is_special
    if special:
        c0_e1, c0_e2, c0_e11 = asym_moments_c0(params.b, params.m)

    report = Report("compare", ["statistic", "exact", "predicted", "abs_err", "rel_err"])

    def add(name: str, exact: float, predicted: float) -> None:
        row = AsymptoticReport(name, exact, predicted)
        report.add(row.statistic, row.exact, row.predicted, row.abs_err, row.rel_err)

    e1 = e2 = e11 = None
    if {"mean", "var", "cov", "displacement"} & set(wanted):
        e1 = exact_moment(params, 1)
    if {"second", "var", "displacement"} & set(wanted):
        e2 = exact_moment(params, 2)
    if {"joint", "cov", "displacement"} & set(wanted) and params.m >= 2:
        e11 = exact_joint_moment(params, 1, 1)

    if "mean" in wanted:
        add("mean_coord", float(e1), c0_e1 if special else asym_mixed_moment(regime, (1,)))
    if "second" in wanted:
        add("second_moment_coord", float(e2), c0_e2 if special else asym_mixed_moment(regime, (2,)))
    if "var" in wanted:
        add("var_coord", float(e2 - e1 * e1), asym_var_cov(regime)[0])
    if "joint" in wanted and e11 is not None:
        add("joint_moment_coords", float(e11), c0_e11 if special else asym_mixed_moment(regime, (1, 1)))
    if "cov" in wanted and e11 is not None:
        add("cov_coords", float(e11 - e1 * e1), asym_var_cov(regime)[1])
    if "boundary" in wanted:
        dist = first_coord_distribution(params)
        add("prob_coord_max", float(dist.prob(params.max_pref)), asym_boundary(regime, "right", 0))
        add("prob_coord_min", float(dist.prob(1)), asym_boundary(regime, "left", 0))
    if "displacement" in wanted and e11 is not None:
        m = params.m
        mean_d = Fraction(params.b * m * (m - 1), 2) + params.a * m - m * e1
        var_d = m * (e2 - e1 * e1) + m * (m - 1) * (e11 - e1 * e1)
        pred_mean, pred_var = asym_displacement(regime)
        add("mean_displacement", float(mean_d), pred_mean)
        add("var_displacement", float(var_d), pred_var)

    report.write(args.output, args.format, stdout)
    if args.output is not None and not args.no_plot:
        from . import figures

        names = [row[0] for row in report.rows]
        errs = [float(row[4]) for row in report.rows]
        png = args.output.with_suffix(".png")
        figures.render_comparison(
            png, names, errs, f"exact vs asymptotic, a={params.a} b={params.b} m={params.m}"
        )
        stdout.write(f"wrote {png}\n")
    return 0


def _abel_battery(trials: int, seed: int):
    """Randomized identity checks; yields (identity, trials, failures)."""
    import random

    rnd = random.Random(seed)

    def spec(min_m: int = 1, p1_nonneg: bool = False) -> AbelSpec:
        m = rnd.randint(min_m, 4)
        n = rnd.randint(0, 8)
        x = tuple(Fraction(rnd.randint(1, 10)) for _ in range(m))
        p = tuple(rnd.randint(-2, 3) for _ in range(m))
        if p1_nonneg:
            p = (abs(p[0]),) + p[1:]
        return AbelSpec(x, p, n)

    failures = 0
    for _ in range(trials):
        s = spec(min_m=2)
        i, j = rnd.sample(range(s.m), 2)
        x = list(s.x)
        p = list(s.p)
        x[i], x[j] = x[j], x[i]
        p[i], p[j] = p[j], p[i]
        if abel_multinomial(s) != abel_multinomial(AbelSpec(x, p, s.n)):
            failures += 1
    yield "symmetry", trials, failures

    failures = 0
    for _ in range(trials):
        s = spec()
        if s.n == 0:
            continue
        rhs = Fraction(0)
        for i in range(s.m):
            x = list(s.x)
            p = list(s.p)
            x[i] += 1
            p[i] += 1
            rhs += abel_multinomial(AbelSpec(x, p, s.n - 1))
        if abel_multinomial(s) != rhs:
            failures += 1
    yield "convolution", trials, failures

    from math import comb, factorial

    failures = 0
    for _ in range(trials):
        s = spec(p1_nonneg=True)
        rhs = Fraction(0)
        for t in range(s.n + 1):
            shifted = AbelSpec((s.x[0] + t,) + s.x[1:], (s.p[0] - 1,) + s.p[1:], s.n - t)
            rhs += comb(s.n, t) * factorial(t) * (s.x[0] + t) * abel_multinomial(shifted)
        if abel_multinomial(s) != rhs:
            failures += 1
    yield "first_variable_reduction", trials, failures

    failures = 0
    for _ in range(trials):
        m = rnd.randint(1, 4)
        n = rnd.randint(0, 8)
        x = tuple(Fraction(rnd.randint(1, 10)) for _ in range(m))
        direct = abel_multinomial(AbelSpec(x, (-1,) * m, n))
        if direct != abel_special(x, n, "all_minus_one"):
            failures += 1
        direct = abel_multinomial(AbelSpec(x, (-1,) * (m - 1) + (0,), n))
        if direct != abel_special(x, n, "last_zero"):
            failures += 1
    yield "closed_forms", trials, failures


def _cmd_abel_check(args, stdout) -> int:
    report = Report("abel-check", ["identity", "trials", "failures"])
    all_ok = True
    for identity, trials, failures in _abel_battery(args.trials, args.seed):
        report.add(identity, trials, failures)
        status = "PASS" if failures == 0 else "FAIL"
        all_ok &= failures == 0
        stdout.write(f"{status} {identity}: {failures}/{trials} failures\n")
    report.write(args.output, args.format, stdout)
    if not all_ok:
        raise InternalInvariantError("Abel identity battery failed")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="parkfn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, problem=True):
        if problem:
            _add_problem_flags(p)
        p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed (default 0)")
        p.add_argument("--output", "-o", type=Path, default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("count", help="exact |PF| via all applicable formulas, cross-checked")
    common(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("enumerate", help="list every parking function (small u)")
    common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("check", help="validate a preference vector")
    common(p)
    p.add_argument("--pi", required=True, help="comma-separated preference vector")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decompose", help="maximal compatible vector and multi-shuffle parts")
    common(p)
    p.add_argument("--suffix", required=True, help="comma-separated fixed suffix")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("sample", help="emit uniform random parking functions")
    common(p)
    p.add_argument("--n", type=int, default=1, help="number of samples")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("hist", help="coordinate and displacement histograms (CSV + figure)")
    common(p)
    p.add_argument("--n", type=int, default=100000, help="number of samples")
    p.add_argument("--no-plot", action="store_true", help="skip figure rendering")
    p.set_defaults(func=_cmd_hist)

    p = sub.add_parser("moments", help="exact moment table")
    common(p)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("compare", help="exact vs asymptotic report (CSV + figure)")
    common(p)
    p.add_argument("--stats", default="all",
                   help=f"comma list from {','.join(_COMPARE_STATS)} (default all)")
    p.add_argument("--no-plot", action="store_true", help="skip figure rendering")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("abel-check", help="randomized Abel identity battery")
    common(p, problem=False)
    p.add_argument("--trials", type=int, default=60, help="trials per identity")
    p.set_defaults(func=_cmd_abel_check)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, sys.stdout)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, BudgetExceededError, DecompositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
