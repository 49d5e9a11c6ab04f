"""Command line entry point: ``p2pgrowth analytic|simulate|compare``.

Exit codes: 0 success, 1 execution error, 2 usage error or failed check.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import secrets
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import discouragement as dq
from . import experiments as ex
from . import growth
from .errors import ModelError
from .model import validate_params
from .netsim import (
    CSV_COLUMNS,
    SimConfig,
    dumps_trace,
    measure_w_root,
    run_replications,
    trace_csv_rows,
)

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class ConfigError(Exception):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _emit(rows, fmt: str, output: str | None, command: str) -> None:
    if fmt == "json":
        text = json.dumps({"schema_version": SCHEMA_VERSION, "command": command,
                           "rows": [{"index": i, "value": v} for i, v in rows]}, indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "value"])
        for i, v in rows:
            w.writerow([i, _fmt(v)])
        text = buf.getvalue()
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --- analytic ----------------------------------------------------------------

def cmd_analytic(args) -> int:
    params = validate_params(args.lam, args.mu)
    what = args.what
    if what == "pmf":
        if args.t is None:
            raise UsageError("pmf needs --t")
        if params.mu == 0:
            rows = [(k, growth.pure_birth_pmf(k, args.t, params.lam)) for k in range(args.k_max + 1)]
        else:
            law = dq.bd_transient_dist(args.t, params, args.tol)
            rows = [(k, law.pmf(k)) for k in range(args.k_max + 1)]
    elif what == "embedded":
        if args.n is None:
            raise UsageError("embedded needs --n")
        if params.mu == 0:
            row = growth.embedded_pmf_table(args.n).rows[args.n]
        else:
            row = dq.bd_embedded_table(params, args.n).rows[args.n]
        rows = list(enumerate(row.tolist()))
    elif what == "steady":
        if params.mu == 0:
            raise UsageError("steady needs mu > 0 (no stationary law when mu = 0)")
        if args.n is None:
            raise UsageError("steady needs --n")
        if args.l is not None:
            rows = list(enumerate(dq.steady_state_conditional(args.n, args.l, params).probs.tolist()))
        else:
            rows = [(k, dq.steady_state_unconditional(args.n, k, params, args.l_cap))
                    for k in range(args.k_max + 1)]
    else:  # bounds
        if args.n is None or args.epsilon is None:
            raise UsageError("bounds needs --n and --epsilon")
        fn = growth.out_degree_tail_bound if args.degree == "out" else growth.in_degree_tail_bound
        rows = [(side, fn(args.n, args.epsilon, side)) for side in ("upper", "lower")]
    _emit(rows, args.format, args.output, f"analytic {what}")
    return 0


# --- simulate ----------------------------------------------------------------

def _load_schema(name: str) -> dict:
    return json.loads(resources.files("p2pgrowth").joinpath(f"schemas/{name}").read_text())


def load_config(path: str, schema: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        jsonschema.validate(data, _load_schema(schema))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{path}: at {where}: {exc.message}") from None
    return data


def _resolve_seed(cli_seed, config_seed) -> int:
    if cli_seed is not None:
        return cli_seed
    if config_seed is not None:
        return config_seed
    seed = secrets.randbits(63)
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def sim_config_from_dict(data: dict, seed: int) -> SimConfig:
    params = validate_params(data["lambda"], data["mu"])
    horizon = data["horizon"]
    times = list(data.get("snapshot_times", []))
    if "snapshot_every" in data:
        if "time" not in horizon:
            raise ConfigError("snapshot_every needs a time horizon")
        step = data["snapshot_every"]
        count = int(math.floor(horizon["time"] / step + 1e-9))
        times = sorted(set(times) | {round(i * step, 12) for i in range(1, count + 1)})
    return SimConfig(
        params,
        horizon=horizon.get("time"),
        max_arrivals=horizon.get("arrivals"),
        snapshot_times=tuple(times),
        replication_count=data.get("replications", 1),
        master_seed=seed,
        population_cap=data.get("population_cap", 100_000),
        record_occupancy=data.get("record_occupancy", False),
        burn_in=data.get("burn_in"),
    )


def summarize(config: SimConfig, traces) -> dict:
    burn = config.effective_burn_in
    per_rep = []
    for tr in traces:
        vals = [s.live_count for s in tr.snapshots if s.time >= burn]
        if vals:
            per_rep.append(float(np.mean(vals)))
    checked = sum(tr.chain_arcs_checked for tr in traces)
    present = sum(tr.chain_arcs_present for tr in traces)
    summary = {
        "schema_version": SCHEMA_VERSION,
        "config_hash": config.config_hash(),
        "seed": config.master_seed,
        "replications": len(traces),
        "arrivals": sum(tr.arrivals for tr in traces),
        "deaths": sum(tr.deaths for tr in traces),
        "orphan_recoveries": sum(tr.snapshots[-1].orphan_recovery_count_cumulative
                                 for tr in traces if tr.snapshots),
        "chain_arcs_checked": checked,
        "chain_arc_presence": present / checked if checked else None,
        "live_count_mean": float(np.mean(per_rep)) if per_rep else None,
        "live_count_std_error": (float(np.std(per_rep, ddof=1) / math.sqrt(len(per_rep)))
                                 if len(per_rep) > 1 else None),
    }
    if config.params.mu > 0:
        end = max(tr.end_time for tr in traces)
        try:
            est = measure_w_root(traces, (burn, end))
            summary["w_root_mean"] = est.mean
            summary["w_root_std_error"] = est.std_error if math.isfinite(est.std_error) else None
        except ModelError:
            pass
    return summary


def cmd_simulate(args) -> int:
    data = load_config(args.config, "simulate_config.schema.json")
    seed = _resolve_seed(args.seed, data.get("seed"))
    config = sim_config_from_dict(data, seed)
    out = Path(args.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"{out}: cannot create output directory: {exc.strerror}") from None
    traces = run_replications(config, args.jobs)
    for tr in traces:
        (out / f"trace_{tr.stream_id:05d}.json").write_text(dumps_trace(tr), encoding="utf-8")
    with open(out / "traces.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for tr in traces:
            w.writerows(trace_csv_rows(tr))
    summary = summarize(config, traces)
    (out / "summary.json").write_text(json.dumps(summary, indent=1, sort_keys=True) + "\n",
                                      encoding="utf-8")
    print(json.dumps(summary, indent=1, sort_keys=True))
    return 0


# --- compare -----------------------------------------------------------------

def run_check(check: dict, seed: int, jobs: int) -> ex.CheckResult:
    kind = check["kind"]

    def params():
        return validate_params(check.get("lambda", 1.0), check.get("mu", 1.0))

    def ns():
        n = check.get("n", 20)
        return n if isinstance(n, list) else [n]

    if kind == "urn_vs_embedded":
        return ex.urn_vs_embedded(ns()[0], check.get("samples", 10**6), seed, check.get("tv_max", 0.005))
    if kind == "out_degree_mean":
        return ex.out_degree_mean(ns()[0], check.get("samples", 10**5), seed, check.get("rel_tol", 0.02))
    if kind == "out_degree_tails":
        return ex.out_degree_tails(ns(), check.get("epsilon", [0.3, 0.5, 0.8]),
                                   check.get("samples", 10**5), seed, check.get("n_se", 3.0))
    if kind == "in_degree_tails":
        return ex.in_degree_tails(check.get("ranks", [100, 1000]), check.get("epsilon", [0.3, 0.5, 0.8]),
                                  check.get("samples", 10**4), seed, check.get("mean", "exact"),
                                  check.get("n_se", 3.0))
    if kind == "in_degree_scaling":
        return ex.in_degree_scaling(check.get("n", [1000, 3000, 10000]), check.get("replications", 200), seed)
    if kind == "spanning_tree_mean":
        return ex.spanning_tree_mean(ns()[0], check.get("samples", 10**4), seed, check.get("n_se", 3.0))
    if kind == "jump_chain":
        return ex.jump_chain_law(params(), ns()[0], check.get("samples", 10**6), seed,
                                 check.get("tv_max", 0.005))
    if kind == "steady_occupancy":
        return ex.steady_occupancy(params(), check.get("jumps", 10**7), seed, check.get("tv_max", 0.01))
    if kind == "first_node_marginal":
        return ex.first_node_marginal(params(), check.get("t", 1.0), check.get("replications", 10**5),
                                      seed, check.get("tv_max", 0.01), jobs)
    if kind == "live_count_poisson":
        return ex.live_count_poisson(params(), check.get("horizon", 2 * 10**4), seed,
                                     check.get("tv_max", 0.01))
    if kind == "w_root":
        return ex.w_root_ratio(params(), check.get("horizon", 200.0), seed,
                               check.get("replications", 1), check.get("band", 0.2), jobs=jobs)
    raise ConfigError(f"unknown check kind {kind!r}")


def cmd_compare(args) -> int:
    data = load_config(args.config, "compare_config.schema.json")
    seed = _resolve_seed(args.seed, data.get("seed"))
    results = [run_check(c, seed, args.jobs) for c in data["checks"]]
    report = {
        "schema_version": SCHEMA_VERSION,
        "seed": seed,
        "passed": all(r.passed for r in results),
        "checks": [{"name": r.name, "passed": r.passed, "metrics": r.metrics, "rows": r.rows}
                   for r in results],
    }
    table = [r.line() for r in results] + [f"overall: {'PASS' if report['passed'] else 'FAIL'}"]
    print("\n".join(table))
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.txt").write_text("\n".join(table) + "\n", encoding="utf-8")
        (out / "report.json").write_text(json.dumps(report, indent=1, sort_keys=True) + "\n",
                                         encoding="utf-8")
        with open(out / "report_long.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["check", "passed", "metric", "value"])
            for r in results:
                for k, v in r.metrics.items():
                    w.writerow([r.name, int(r.passed), k, _fmt(v) if isinstance(v, float) else v])
    return 0 if report["passed"] else 2


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="p2pgrowth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analytic", help="evaluate analytic distributions and bounds")
    a.add_argument("what", choices=["pmf", "embedded", "steady", "bounds"])
    a.add_argument("--lambda", dest="lam", type=float, default=1.0)
    a.add_argument("--mu", type=float, default=0.0)
    a.add_argument("--t", type=float)
    a.add_argument("--k-max", type=int, default=10)
    a.add_argument("--n", type=int)
    a.add_argument("--l", type=int)
    a.add_argument("--l-cap", type=int, default=200)
    a.add_argument("--epsilon", type=float)
    a.add_argument("--degree", choices=["out", "in"], default="out")
    a.add_argument("--tol", type=float, default=1e-9)
    a.add_argument("--format", choices=["csv", "json"], default="csv")
    a.add_argument("--output")
    a.set_defaults(func=cmd_analytic)

    s = sub.add_parser("simulate", help="run network simulations from a JSON config")
    s.add_argument("config")
    s.add_argument("output", help="output directory")
    s.add_argument("--seed", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("compare", help="cross-validate simulations against analytic laws")
    c.add_argument("config")
    c.add_argument("--output", help="directory for report.json and report_long.csv")
    c.add_argument("--seed", type=int)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ConfigError, ModelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
