"""Command line interface: ``scoresig <command> [options]``.

Exit status is 0 on success, 1 for usage errors (bad flags or option
values) and 2 for data errors (unreadable or invalid score files).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

from ._parallel import JOBS_ENV, default_jobs
from .aso import AsoConfig, aso, multi_aso
from .classic import bootstrap_test, permutation_test
from .errors import ConfigError, ScoreSigError
from .io import parse_scores
from .sample_size import PowerConfig, aso_uncertainty_reduction, bootstrap_power_analysis
from .sim import PRESETS, emit_plot_data, emit_statistics, emit_table, get_preset
from .sim.experiments import TEST_NAMES
from .sim.tables import _grid, _tests_in, X_HEADERS

USAGE_ERROR, DATA_ERROR = 1, 2
FORMATS = ("table", "json", "csv", "latex")
# config field -> flag, so config errors name what the user typed
FLAGS = {
    "alpha": "--alpha",
    "num_bootstrap": "--bootstrap-iters",
    "dt": "--dt",
    "seed": "--seed",
    "lift": "--lift",
    "num_test_resamples": "--resamples",
    "num_simulations_aso": "--simulations-aso",
    "num_simulations_other": "--simulations-other",
    "aso_bootstrap": "--aso-bootstrap",
    "sample_sizes": "--sizes",
}
VERDICT_NOTE = "eps_min < tau means: reject H0, A is better than B"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


class _Formatter(argparse.ArgumentDefaultsHelpFormatter):
    """Show defaults, except for options whose help already explains a missing value."""

    def __init__(self, prog):
        super().__init__(prog, max_help_position=32, width=100)

    def _get_help_string(self, action):
        if action.default is None or isinstance(action.default, bool):
            return action.help
        return super()._get_help_string(action)


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


# ---------------------------------------------------------------- rendering


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _render_record(record: dict, fmt: str, text_lines: list[str]) -> str:
    """A flat result as json, csv, latex or aligned text."""
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    flat = {k: v for k, v in record.items() if not isinstance(v, (dict, list))}
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(flat)
        writer.writerow([repr(v) if isinstance(v, float) else v for v in flat.values()])
        return out.getvalue()
    if fmt == "latex":
        rows = [k.replace("_", r"\_") + f" & {_fmt(v)} " + r"\\" for k, v in flat.items()]
        return "\n".join([r"\begin{tabular}{lr}", r"\toprule", *rows, r"\bottomrule", r"\end{tabular}"]) + "\n"
    return "\n".join(text_lines) + "\n"


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_group(path: str, group: str | None, fmt: str | None):
    return parse_scores(path, fmt).group(group)


# ---------------------------------------------------------------- commands


def cmd_aso(args) -> str:
    a = _load_group(args.a, args.a_group, args.input_format)
    b = _load_group(args.b, args.b_group, args.input_format)
    config = AsoConfig(
        alpha=args.alpha, num_bootstrap=args.bootstrap_iters, dt=args.dt, seed=args.seed, num_jobs=args.jobs
    )
    result = aso(a, b, config)
    reject = result.rejects(args.tau)
    verdict = "reject H0: A is better than B" if reject else "fail to reject H0"
    record = result.to_dict()
    record.update(tau=args.tau, reject=reject, verdict=verdict, note=VERDICT_NOTE)
    lines = [
        f"eps_min          {result.eps_min:.4f}",
        f"violation_ratio  {result.violation_ratio:.4f}",
        f"sigma_hat        {result.sigma_hat:.4f}",
        f"n, m             {result.n}, {result.m}",
        f"verdict at tau={args.tau:g}: {verdict}",
        f"({VERDICT_NOTE})",
    ]
    return _render_record(record, args.format, lines)


def _comparison_text(table, tau) -> list[str]:
    width = max(len(n) for n in table.names)
    lines = [" " * width + "  " + "  ".join(f"{n:>{max(len(n), 6)}}" for n in table.names)]
    for name, row in zip(table.names, table.eps_min):
        cells = "  ".join(f"{v:>{max(len(n), 6)}.4f}" for n, v in zip(table.names, row))
        lines.append(f"{name:<{width}}  {cells}")
    lines.append(f"alpha={table.corrected_alpha:g} (correction: {table.correction}); row better than column when eps_min < {tau:g}")
    return lines


def cmd_multi_aso(args) -> str:
    groups = parse_scores(args.scores, args.input_format).groups
    config = AsoConfig(
        alpha=args.alpha, num_bootstrap=args.bootstrap_iters, dt=args.dt, seed=args.seed, num_jobs=args.jobs
    )
    table = multi_aso(groups, config, use_bonferroni=not args.no_bonferroni)
    if args.format == "json":
        return json.dumps({**table.to_dict(), "tau": args.tau, "note": VERDICT_NOTE}, indent=2) + "\n"
    if args.format == "latex":
        return table.to_latex()
    if args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["", *table.names])
        for name, row in zip(table.names, table.eps_min):
            writer.writerow([name, *(repr(float(v)) for v in row)])
        return out.getvalue()
    return "\n".join(_comparison_text(table, args.tau)) + "\n"


def _p_value_command(test, args) -> str:
    a = _load_group(args.a, args.a_group, args.input_format)
    b = _load_group(args.b, args.b_group, args.input_format)
    result = test(a, b, args.resamples, seed=args.seed, num_jobs=args.jobs)
    record = result.to_dict()
    lines = [
        f"delta (mean A - mean B)  {result.statistic:.4f}",
        f"p-value                  {result.p_value:.4f}",
        f"resamples                {result.num_resamples}",
    ]
    return _render_record(record, args.format, lines)


def cmd_bootstrap(args) -> str:
    return _p_value_command(bootstrap_test, args)


def cmd_permutation(args) -> str:
    return _p_value_command(permutation_test, args)


def cmd_power(args) -> str:
    scores = _load_group(args.scores, args.group, args.input_format)
    config = PowerConfig(
        lift=args.lift,
        num_bootstrap=args.bootstrap_iters,
        alpha=args.alpha,
        test=args.test,
        seed=args.seed,
        num_test_resamples=args.resamples,
        additive=args.additive,
        num_jobs=args.jobs,
    )
    power = bootstrap_power_analysis(scores, config)
    record = {"power": power, "lift": config.lift, "additive": config.additive, "test": config.test,
              "alpha": config.alpha, "num_bootstrap": config.num_bootstrap, "seed": config.seed, "n": len(scores)}
    lines = [f"power  {power:.4f}", f"(lift {config.lift:g}, {config.test} test, alpha {config.alpha:g}; aim for about 0.8)"]
    return _render_record(record, args.format, lines)


def cmd_uncertainty(args) -> str:
    factor = aso_uncertainty_reduction(args.m_old, args.n_old, args.m_new, args.n_new)
    record = {"factor": factor, "m_old": args.m_old, "n_old": args.n_old, "m_new": args.m_new, "n_new": args.n_new}
    return _render_record(record, args.format, [f"{factor:.3f}"])


def _table_text(table) -> str:
    tests = _tests_in(table)
    header = [X_HEADERS[table.x_label], "Threshold", *(TEST_NAMES[t] for t in tests)]
    rows = [[f"{x:g}", f"{th:.2f}", *(f"{rates[t]:.3f}" for t in tests)] for (x, th), rates in _grid(table).items()]
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in [header, *rows]) + "\n"


def cmd_simulate(args) -> str:
    preset = get_preset(args.preset)
    overrides = {"seed": args.seed, "num_jobs": args.jobs}
    if args.simulations_aso:
        overrides["num_simulations_aso"] = args.simulations_aso
    if args.simulations_other:
        overrides["num_simulations_other"] = args.simulations_other
    if args.aso_bootstrap:
        overrides["aso_bootstrap"] = args.aso_bootstrap
    if args.sizes:
        overrides["sample_sizes"] = tuple(args.sizes)
    config = replace(preset.config, **overrides)
    table = preset.run(config)
    if args.plot_data:
        Path(args.plot_data).write_text(emit_plot_data(table, config.alpha, config.tau))
    if args.statistics:
        Path(args.statistics).write_text(emit_statistics(table))
    return _table_text(table) if args.format == "table" else emit_table(table, args.format)


# ---------------------------------------------------------------- parser


def _common(p, resampling=True):
    p.add_argument("--format", choices=FORMATS, default="table", help="output format")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--seed", type=_u64, default=1234, help="master random seed")
    p.add_argument("--jobs", type=_positive_int, default=None,
                   help=f"worker count; results do not depend on it (default: ${JOBS_ENV} or 1)")
    p.add_argument("--input-format", choices=("csv", "json"), default=None,
                   help="score file format (default: from the file extension)")


def _pair_inputs(p):
    p.add_argument("--a", required=True, help="score file of algorithm A ('-' for stdin)")
    p.add_argument("--b", required=True, help="score file of algorithm B")
    p.add_argument("--a-group", help="group to read from the A file if it holds several")
    p.add_argument("--b-group", help="group to read from the B file if it holds several")


def _aso_options(p):
    p.add_argument("--alpha", type=float, default=0.05, help="significance level")
    p.add_argument("--tau", type=float, default=0.2, help="rejection threshold on eps_min")
    p.add_argument("--dt", type=float, default=0.005, help="integration step")
    p.add_argument("--bootstrap-iters", type=_positive_int, default=1000, help="bootstrap iterations")


def build_parser() -> argparse.ArgumentParser:
    fmt = _Formatter
    parser = _Parser(prog="scoresig", description="Significance tests for comparing score samples.", formatter_class=fmt)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("aso", help="Almost Stochastic Order test of A better than B", formatter_class=fmt)
    _pair_inputs(p)
    _aso_options(p)
    _common(p)
    p.set_defaults(func=cmd_aso)

    p = sub.add_parser("multi-aso", help="pairwise ASO over all groups of one file", formatter_class=fmt)
    p.add_argument("--scores", required=True, help="score file with one group per column / key")
    p.add_argument("--no-bonferroni", action="store_true", help="do not divide alpha by k(k-1)")
    _aso_options(p)
    _common(p)
    p.set_defaults(func=cmd_multi_aso)

    for name, func, text in (("bootstrap", cmd_bootstrap, "bootstrap test"), ("permutation", cmd_permutation, "permutation test")):
        p = sub.add_parser(name, help=f"one-sided {text} of mean A > mean B", formatter_class=fmt)
        _pair_inputs(p)
        p.add_argument("--resamples", type=_positive_int, default=1000, help="number of resamples")
        _common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("power", help="bootstrap power analysis of one score sample", formatter_class=fmt)
    p.add_argument("--scores", required=True, help="score file")
    p.add_argument("--group", help="group to read if the file holds several")
    p.add_argument("--lift", type=float, default=1.25, help="multiplicative lift applied to every score")
    p.add_argument("--additive", action="store_true", help="add the lift instead of multiplying")
    p.add_argument("--bootstrap-iters", type=_positive_int, default=1000, help="power-analysis iterations")
    p.add_argument("--resamples", type=_positive_int, default=1000, help="resamples of each inner test")
    p.add_argument("--alpha", type=float, default=0.05, help="significance level")
    p.add_argument("--test", choices=("bootstrap", "permutation"), default="bootstrap", help="inner test")
    _common(p)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("uncertainty", help="ASO uncertainty reduction from larger samples", formatter_class=fmt)
    for flag in ("--m-old", "--n-old", "--m-new", "--n-new"):
        p.add_argument(flag, type=_positive_int, required=True)
    _common(p)
    p.set_defaults(func=cmd_uncertainty)

    p = sub.add_parser("simulate", help="Type I / II error-rate experiments", formatter_class=fmt)
    p.add_argument("--preset", required=True, choices=sorted(PRESETS), help="experiment to run")
    p.add_argument("--simulations-aso", type=_positive_int, help="override ASO simulations (preset: 500)")
    p.add_argument("--simulations-other", type=_positive_int, help="override simulations of other tests (preset: 1000)")
    p.add_argument("--aso-bootstrap", type=_positive_int, help="override ASO bootstrap iterations (preset: 500)")
    p.add_argument("--sizes", type=_positive_int, nargs="+", help="override sample sizes")
    p.add_argument("--plot-data", help="also write x,test,rate plot data (alpha for tests, tau for ASO)")
    p.add_argument("--statistics", help="also write every simulated p-value / eps_min")
    _common(p)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        args.jobs = args.jobs or default_jobs()
    except ValueError as exc:
        print(f"scoresig: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        text = args.func(args)
    except ConfigError as exc:
        flag = FLAGS.get(str(exc).split(" ", 1)[0])
        where = f" {flag}" if flag else ""
        print(f"scoresig {args.command}: error:{where} {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ScoreSigError, OSError) as exc:
        print(f"scoresig {args.command}: data error: {exc}", file=sys.stderr)
        return DATA_ERROR
    _write(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
