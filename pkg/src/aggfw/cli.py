"""Batch experiment front end.

Subcommands: ``generate`` (benchmark instances), ``run-fw`` / ``run-sfw``
(single runs with CSV and optional SVG emission), ``sweep`` (multi-seed
aggregation) and ``bounds`` (certificate report).  The CSV files are the
source of truth; charts are a convenience render.  Exit codes: 0 on
success, 2 on configuration errors, 3 on numerical failures.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import rng as _rng
from .bounds import (
    compute_constants,
    gap_bound_basic,
    gap_bound_refined,
    mcdiarmid_tail,
    sample_size_for_confidence,
    sfw_tail,
    sfw_tail_constants,
)
from .frank_wolfe import CanonicalStep, LineSearchFwStep, LineSearchSfwStep, fw_run
from .measures import select_best
from .miqp import (
    MiqpInstance,
    ReferenceSolverError,
    generate,
    load_instance,
    save_instance,
)
from .stochastic_fw import ConstantSchedule, QuadraticSchedule, sfw_run, stopping_time_run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

CSV_COLUMNS = ("k", "value", "beta", "omega", "n_k", "active_count", "wall_ms")

_PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02")


class ConfigError(Exception):
    """Inconsistent or unusable experiment configuration."""


# --- formatting & atomic output ---------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(value)
    return str(value)


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(text)
    os.replace(tmp, path)


def write_csv(path: str, rows: list[dict]) -> None:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt(row.get(col)) for col in CSV_COLUMNS))
    _write_atomic(path, "\n".join(lines) + "\n")


def fw_rows(records) -> list[dict]:
    rows = []
    for rec in records:
        rows.append(
            {
                "k": rec.k,
                "value": rec.objective,
                "beta": rec.beta,
                "omega": rec.omega,
                "n_k": None,
                "active_count": None,
                "wall_ms": rec.wall_ms,
            }
        )
    return rows


def sfw_rows(records) -> list[dict]:
    rows = []
    for rec in records:
        terminal = math.isnan(rec.omega) and rec.n_draws == 0
        rows.append(
            {
                "k": rec.k,
                "value": rec.objective,
                "beta": rec.beta,
                "omega": rec.omega,
                "n_k": None if terminal else rec.n_draws,
                "active_count": None if terminal else rec.active_count,
                "wall_ms": rec.wall_ms,
            }
        )
    return rows


# --- SVG rendering -----------------------------------------------------


def render_line_chart(
    path: str,
    series: list[tuple[str, list[float], list[float]]],
    title: str,
    x_label: str,
    y_label: str,
    log_log: bool = True,
) -> None:
    """Minimal deterministic SVG line chart with a fixed 800x600 viewBox."""
    width, height = 800.0, 600.0
    left, right, top, bottom = 80.0, 20.0, 50.0, 60.0

    cleaned = []
    for label, xs, ys in series:
        pts = [(float(x), float(y)) for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)]
        if log_log:
            pts = [(x, y) for x, y in pts if x > 0 and y > 0]
        if pts:
            cleaned.append((label, pts))
    if not cleaned and log_log:
        return render_line_chart(path, series, title, x_label, y_label, log_log=False)

    all_x = [x for _, pts in cleaned for x, _ in pts] or [1.0]
    all_y = [y for _, pts in cleaned for _, y in pts] or [1.0]

    def limits(values):
        lo, hi = min(values), max(values)
        if log_log:
            lo, hi = math.log10(lo), math.log10(hi)
        if hi - lo < 1e-12:
            lo, hi = lo - 0.5, hi + 0.5
        return lo, hi

    x_lo, x_hi = limits(all_x)
    y_lo, y_hi = limits(all_y)

    def px(x):
        t = math.log10(x) if log_log else x
        return left + (t - x_lo) / (x_hi - x_lo) * (width - left - right)

    def py(y):
        t = math.log10(y) if log_log else y
        return height - bottom - (t - y_lo) / (y_hi - y_lo) * (height - top - bottom)

    def ticks(lo, hi):
        if log_log:
            return [10.0**e for e in range(math.ceil(lo - 1e-9), math.floor(hi + 1e-9) + 1)]
        step = (hi - lo) / 5.0
        return [lo + i * step for i in range(6)]

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:g} {height:g}">',
        f'<rect width="{width:g}" height="{height:g}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" font-size="18">{title}</text>',
        f'<rect x="{left:g}" y="{top:g}" width="{width - left - right:g}" '
        f'height="{height - top - bottom:g}" fill="none" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="{height - 12:.1f}" text-anchor="middle" '
        f'font-size="14">{x_label}</text>',
        f'<text x="20" y="{height / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 20 {height / 2:.1f})">{y_label}</text>',
    ]
    for tick in ticks(x_lo, x_hi):
        tx = px(tick)
        label = f"1e{int(round(math.log10(tick)))}" if log_log else f"{tick:.3g}"
        parts.append(
            f'<line x1="{tx:.2f}" y1="{height - bottom:.1f}" x2="{tx:.2f}" '
            f'y2="{height - bottom + 5:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{tx:.2f}" y="{height - bottom + 20:.1f}" text-anchor="middle" '
            f'font-size="12">{label}</text>'
        )
    for tick in ticks(y_lo, y_hi):
        ty = py(tick)
        label = f"1e{int(round(math.log10(tick)))}" if log_log else f"{tick:.3g}"
        parts.append(
            f'<line x1="{left - 5:.1f}" y1="{ty:.2f}" x2="{left:.1f}" y2="{ty:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{left - 8:.1f}" y="{ty + 4:.2f}" text-anchor="end" font-size="12">{label}</text>'
        )
    for idx, (label, pts) in enumerate(cleaned):
        color = _PALETTE[idx % len(_PALETTE)]
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        parts.append(
            f'<text x="{width - right - 10:.1f}" y="{top + 18 + 16 * idx:.1f}" text-anchor="end" '
            f'font-size="12" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    _write_atomic(path, "\n".join(parts) + "\n")


# --- configuration helpers ----------------------------------------------


def parse_rule(name: str, problem) -> CanonicalStep | LineSearchFwStep | LineSearchSfwStep:
    if name == "canonical":
        return CanonicalStep()
    if name == "ls-fw":
        return LineSearchFwStep()
    if name == "ls-sfw":
        return LineSearchSfwStep.from_constants(compute_constants(problem))
    raise ConfigError(f"unknown step rule {name!r} (expected canonical, ls-fw or ls-sfw)")


def parse_schedule(text: str):
    kind, _, arg = text.partition(":")
    try:
        if kind == "const":
            return ConstantSchedule(int(arg))
        if kind == "quad":
            return QuadraticSchedule(float(arg))
    except ValueError as exc:
        raise ConfigError(f"bad schedule parameter in {text!r}: {exc}") from exc
    raise ConfigError(f"unknown schedule {text!r} (expected const:n or quad:A)")


def parse_seeds(value) -> list[int]:
    try:
        if isinstance(value, (list, tuple)):
            seeds = [int(part) for part in value]
        else:
            seeds = [int(part) for part in str(value).split(",") if part != ""]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad seed list {value!r}: {exc}") from exc
    if not seeds:
        raise ConfigError("at least one seed is required")
    return seeds


def _merge_config(args: argparse.Namespace) -> dict:
    """Resolve option values: command line wins over the JSON config file."""
    config = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as handle:
                config = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
        if not isinstance(config, dict):
            raise ConfigError(f"config file {args.config} must hold a JSON object")
    merged = dict(config)
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            merged[key] = value
    return merged


def _require(merged: dict, key: str):
    if merged.get(key) is None:
        raise ConfigError(f"missing required option --{key.replace('_', '-')}")
    return merged[key]


def _load_problem(merged: dict) -> MiqpInstance:
    path = _require(merged, "instance")
    try:
        return load_instance(path)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load instance from {path}: {exc}") from exc


def _reference_gap_values(problem: MiqpInstance, records) -> tuple[list[float], list[float]]:
    tol = 1e-7 if problem.n_agents >= 100 else 1e-9
    reference = problem.relaxed_optimum(tol=tol)
    ks = [rec.k for rec in records]
    gaps = [rec.objective - reference.value for rec in records]
    return ks, gaps


# --- subcommands ----------------------------------------------------------


def cmd_generate(merged: dict) -> int:
    m = int(_require(merged, "m"))
    n = int(_require(merged, "n"))
    seed = int(_require(merged, "seed"))
    out = _require(merged, "out")
    instance = generate(m, n, seed)
    save_instance(instance, out)
    constants = compute_constants(instance)
    print(f"instance written to {out}")
    print(f"M={m} N={n} seed={seed}")
    print(f"C0 = {constants.c0:.6g}")
    print(f"C1 = {constants.c1:.6g}")
    print(f"basic gap bound C1/(2N) = {gap_bound_basic(constants):.6g}")
    print(f"refined gap bound D[q^N]/(2N^2) = {gap_bound_refined(constants):.6g}")
    return EXIT_OK


def cmd_run_fw(merged: dict) -> int:
    problem = _load_problem(merged)
    n_iters = int(_require(merged, "iters"))
    seeds = parse_seeds(merged.get("seeds", "0"))
    if len(seeds) != 1:
        raise ConfigError("run-fw takes exactly one seed")
    rule_name = merged.get("rule", "canonical")
    if rule_name == "ls-sfw":
        raise ConfigError("the ls-sfw rule drives the stochastic solver, not run-fw")
    out_dir = _require(merged, "out")
    csv_path = os.path.join(out_dir, "fw.csv")
    if n_iters == 0:
        write_csv(csv_path, [])
        print(f"empty run: wrote header-only {csv_path}")
        return EXIT_OK
    rule = parse_rule(rule_name, problem)
    profile, records = fw_run(problem, n_iters, rule=rule)
    write_csv(csv_path, fw_rows(records))
    print(f"fw: {n_iters} iterations, final relaxed objective {records[-1].objective:.6g}, "
          f"final dual gap {records[-1].beta:.3g}")
    print(f"wrote {csv_path}")

    select_n = int(merged.get("select_n") or 0)
    if select_n > 0:
        decisions, value = select_best(
            problem, profile, select_n, _rng.stream(seeds[0], _rng.SELECTION, 0, n_iters)
        )
        print(f"selection over {select_n} draws: J = {value:.6g}")
    if merged.get("svg"):
        ks, gaps = _reference_gap_values(problem, records)
        render_line_chart(
            os.path.join(out_dir, "fw.svg"),
            [("relaxed gap", ks, gaps)],
            title="Frank-Wolfe convergence",
            x_label="iteration k",
            y_label="gap",
        )
        print(f"wrote {os.path.join(out_dir, 'fw.svg')}")
    return EXIT_OK


def cmd_run_sfw(merged: dict) -> int:
    problem = _load_problem(merged)
    n_iters = int(_require(merged, "iters"))
    seeds = parse_seeds(merged.get("seeds", "0"))
    if len(seeds) != 1:
        raise ConfigError("run-sfw takes exactly one seed")
    stopping = bool(merged.get("stopping_time"))
    if stopping and merged.get("schedule") is not None:
        raise ConfigError("--stopping-time chooses its own draw counts; drop --schedule")
    out_dir = _require(merged, "out")
    csv_path = os.path.join(out_dir, "sfw.csv")
    if n_iters == 0:
        write_csv(csv_path, [])
        print(f"empty run: wrote header-only {csv_path}")
        return EXIT_OK
    keep = merged.get("keep_if_worse")
    keep = True if keep is None else bool(keep)
    if stopping:
        profile, records = stopping_time_run(problem, n_iters, seeds[0])
    else:
        rule_name = merged.get("rule", "canonical")
        if rule_name == "ls-fw":
            raise ConfigError("the ls-fw rule drives the deterministic solver, not run-sfw")
        rule = parse_rule(rule_name, problem)
        schedule = parse_schedule(merged.get("schedule") or "const:1")
        profile, records = sfw_run(
            problem, n_iters, schedule, seeds[0], rule=rule, keep_if_worse=keep
        )
    write_csv(csv_path, sfw_rows(records))
    print(f"sfw: {n_iters} iterations, final objective {records[-1].objective:.6g}")
    print(f"wrote {csv_path}")
    if merged.get("svg"):
        ks, gaps = _reference_gap_values(problem, records)
        render_line_chart(
            os.path.join(out_dir, "sfw.svg"),
            [("objective gap", ks, gaps)],
            title="Stochastic Frank-Wolfe convergence",
            x_label="iteration k",
            y_label="gap",
        )
        print(f"wrote {os.path.join(out_dir, 'sfw.svg')}")
    return EXIT_OK


def cmd_sweep(merged: dict) -> int:
    problem = _load_problem(merged)
    n_iters = int(_require(merged, "iters"))
    if n_iters < 1:
        raise ConfigError("sweep needs at least one iteration")
    seeds = parse_seeds(_require(merged, "seeds"))
    algorithm = merged.get("algorithm", "sfw")
    if algorithm not in ("fw", "sfw"):
        raise ConfigError(f"unknown algorithm {algorithm!r} (expected fw or sfw)")
    stopping = bool(merged.get("stopping_time"))
    if stopping and algorithm != "sfw":
        raise ConfigError("--stopping-time implies the sfw algorithm")
    if merged.get("schedule") is not None and algorithm != "sfw":
        raise ConfigError("--schedule implies the sfw algorithm")
    out_dir = _require(merged, "out")
    keep = merged.get("keep_if_worse")
    keep = True if keep is None else bool(keep)

    tol = 1e-7 if problem.n_agents >= 100 else 1e-9
    reference = problem.relaxed_optimum(tol=tol)

    per_seed = []
    for seed in seeds:
        if algorithm == "fw":
            rule_name = merged.get("rule", "canonical")
            if rule_name == "ls-sfw":
                raise ConfigError("the ls-sfw rule drives the stochastic solver")
            _, records = fw_run(problem, n_iters, rule=parse_rule(rule_name, problem))
            rows = fw_rows(records)
        elif stopping:
            _, records = stopping_time_run(problem, n_iters, seed)
            rows = sfw_rows(records)
        else:
            rule_name = merged.get("rule", "canonical")
            if rule_name == "ls-fw":
                raise ConfigError("the ls-fw rule drives the deterministic solver")
            schedule = parse_schedule(merged.get("schedule") or "const:1")
            _, records = sfw_run(
                problem, n_iters, schedule, seed,
                rule=parse_rule(rule_name, problem), keep_if_worse=keep,
            )
            rows = sfw_rows(records)
        write_csv(os.path.join(out_dir, f"seed_{seed}.csv"), rows)
        per_seed.append(np.array([rec.objective - reference.value for rec in records]))

    gaps = np.stack(per_seed)  # (seeds, iterations + 1)
    lines = ["k,mean,std,min,max,count"]
    for k in range(gaps.shape[1]):
        column = gaps[:, k]
        std = column.std(ddof=1) if len(seeds) > 1 else 0.0
        lines.append(
            f"{k},{_fmt(float(column.mean()))},{_fmt(float(std))},"
            f"{_fmt(float(column.min()))},{_fmt(float(column.max()))},{len(seeds)}"
        )
    summary_path = os.path.join(out_dir, "summary.csv")
    _write_atomic(summary_path, "\n".join(lines) + "\n")
    print(f"swept {len(seeds)} seeds; wrote {summary_path}")
    if merged.get("svg"):
        ks = list(range(gaps.shape[1]))
        render_line_chart(
            os.path.join(out_dir, "sweep.svg"),
            [
                ("mean gap", ks, gaps.mean(axis=0).tolist()),
                ("max gap", ks, gaps.max(axis=0).tolist()),
            ],
            title=f"{algorithm} sweep over {len(seeds)} seeds",
            x_label="iteration k",
            y_label="gap",
        )
        print(f"wrote {os.path.join(out_dir, 'sweep.svg')}")
    return EXIT_OK


def _parse_float_list(value, fallback: list[float]) -> list[float]:
    if value is None:
        return fallback
    try:
        if isinstance(value, (list, tuple)):
            return [float(v) for v in value] or fallback
        return [float(v) for v in str(value).split(",") if v] or fallback
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad number list {value!r}: {exc}") from exc


def cmd_bounds(merged: dict) -> int:
    problem = _load_problem(merged)
    constants = compute_constants(problem)
    n = constants.n_agents
    n_iters = int(merged.get("iters") or min(2 * n, 200))
    schedule_text = merged.get("schedule") or "const:1"
    schedule = parse_schedule(schedule_text)
    eps_list = _parse_float_list(merged.get("eps"), [gap_bound_basic(constants)])
    zeta_list = _parse_float_list(merged.get("zeta"), [0.1])
    if any(not 0 < z < 1 for z in zeta_list):
        raise ConfigError(f"confidence levels must lie in (0, 1), got {zeta_list}")

    v_k, m_k = sfw_tail_constants(n_iters, constants.c0, schedule, n)
    report = {
        "n_agents": n,
        "n_blocks": problem.n_blocks,
        "total_dim": constants.total_dim,
        "c0": constants.c0,
        "c1": constants.c1,
        "gap_bound_basic": gap_bound_basic(constants),
        "gap_bound_refined": gap_bound_refined(constants),
        "selection_tail": {
            str(eps): mcdiarmid_tail(n, eps, constants.c0) for eps in eps_list
        },
        "selection_sample_size": {
            str(zeta): sample_size_for_confidence(min(n_iters, n), n, zeta, constants.c0, constants.c1)
            for zeta in zeta_list
        },
        "sfw": {
            "iterations": n_iters,
            "schedule": schedule_text,
            "v_K": v_k,
            "m_K": m_k,
            "expectation_bound": 4.0 * constants.c1 / n_iters,
            "tail": {str(eps): sfw_tail(n_iters, eps, n, constants.c0, schedule) for eps in eps_list},
        },
    }
    if isinstance(schedule, QuadraticSchedule):
        report["sfw"]["success_probability"] = 1.0 - math.exp(-schedule.a / 12.0)

    print(f"constants: C0 = {constants.c0:.6g}, C1 = {constants.c1:.6g} "
          f"(N={n}, M={problem.n_blocks}, q={constants.total_dim})")
    print(f"randomization gap  C1/(2N)        = {report['gap_bound_basic']:.6g}")
    print(f"randomization gap  D[q^N]/(2N^2)  = {report['gap_bound_refined']:.6g}")
    for eps in eps_list:
        print(f"selection tail     exp(-2N eps^2/C0^2) @ eps={eps:g} = "
              f"{report['selection_tail'][str(eps)]:.6g}")
    for zeta in zeta_list:
        print(f"selection draws    n(zeta={zeta:g}, k={min(n_iters, n)}) = "
              f"{report['selection_sample_size'][str(zeta)]}")
    print(f"sfw expectation    4 C1/K @ K={n_iters} = {report['sfw']['expectation_bound']:.6g}")
    print(f"sfw tail constants v_K = {v_k:.6g}, m_K = {m_k:.6g} (schedule {schedule_text})")
    for eps in eps_list:
        print(f"sfw tail           @ eps={eps:g} = {report['sfw']['tail'][str(eps)]:.6g}")
    if "success_probability" in report["sfw"]:
        print(f"sfw schedule success probability 1-exp(-A/12) = "
              f"{report['sfw']['success_probability']:.6g}")
    if merged.get("out"):
        _write_atomic(merged["out"], json.dumps(report, indent=2) + "\n")
        print(f"wrote {merged['out']}")
    return EXIT_OK


# --- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aggfw",
        description="Frank-Wolfe solvers for large-scale aggregative optimization",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="draw and store a benchmark instance")
    gen.add_argument("--m", type=int, help="number of aggregate blocks M")
    gen.add_argument("--n", type=int, help="number of agents N")
    gen.add_argument("--seed", type=int, help="instance seed")
    gen.add_argument("--out", help="output JSON path")
    gen.add_argument("--config", help="JSON config file (command line wins)")

    def add_run_options(p, with_fw_rule: bool):
        p.add_argument("--instance", help="instance JSON path")
        p.add_argument("--iters", type=int, help="iteration count K")
        p.add_argument("--seeds", help="comma-separated seed list")
        p.add_argument("--rule", choices=("canonical", "ls-fw", "ls-sfw"),
                       help="step-size rule")
        p.add_argument("--select-n", dest="select_n", type=int,
                       help="selection draws after the run (run-fw)")
        p.add_argument("--schedule", help="candidate draws: const:n or quad:A")
        p.add_argument("--keep-if-worse", dest="keep_if_worse",
                       action=argparse.BooleanOptionalAction,
                       help="keep the iterate when all candidates are worse")
        p.add_argument("--stopping-time", dest="stopping_time",
                       action=argparse.BooleanOptionalAction,
                       help="draw candidates until the acceptance inequality holds")
        p.add_argument("--out", help="output directory")
        p.add_argument("--svg", action=argparse.BooleanOptionalAction,
                       help="also render an SVG chart")
        p.add_argument("--config", help="JSON config file (command line wins)")

    add_run_options(sub.add_parser("run-fw", help="one deterministic Frank-Wolfe run"), True)
    add_run_options(sub.add_parser("run-sfw", help="one stochastic Frank-Wolfe run"), False)

    sweep = sub.add_parser("sweep", help="multi-seed runs with mean/std aggregation")
    add_run_options(sweep, True)
    sweep.add_argument("--algorithm", choices=("fw", "sfw"), help="solver to sweep")

    bounds = sub.add_parser("bounds", help="print the certificate report")
    bounds.add_argument("--instance", help="instance JSON path")
    bounds.add_argument("--iters", type=int, help="iteration count K for the bounds")
    bounds.add_argument("--schedule", help="candidate draws: const:n or quad:A")
    bounds.add_argument("--eps", help="comma-separated epsilon list")
    bounds.add_argument("--zeta", help="comma-separated confidence levels")
    bounds.add_argument("--out", help="JSON report path")
    bounds.add_argument("--config", help="JSON config file (command line wins)")

    return parser


_DISPATCH = {
    "generate": cmd_generate,
    "run-fw": cmd_run_fw,
    "run-sfw": cmd_run_sfw,
    "sweep": cmd_sweep,
    "bounds": cmd_bounds,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        merged = _merge_config(args)
        return _DISPATCH[args.command](merged)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ReferenceSolverError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
