"""Cross-validation experiments: simulation ensembles against analytic laws.

Each function runs one experiment and returns a :class:`CheckResult` whose
``metrics`` are plain floats, so the same code backs ``p2pgrowth compare``,
the scripts in ``scripts/`` and the acceptance tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import discouragement as dq
from . import growth
from .model import DistVector, ModelParams, derive_stream
from .netsim import (
    SimConfig,
    measure_w_root,
    run_replications,
    sample_bd_jump_chain_states,
    sample_growth_in_degrees,
    sample_growth_lag_frequencies,
    sample_urn_states,
    simulate_network,
    single_node_occupancy,
)
from .statcheck import EmpiricalDist, mean_ci, tail_exceedance, tv_between, tv_distance


@dataclass
class CheckResult:
    name: str
    passed: bool
    metrics: dict = field(default_factory=dict)
    rows: list[dict] = field(default_factory=list)

    def line(self) -> str:
        shown = ", ".join(
            f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}" for k, v in self.metrics.items()
        )
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {shown}"


def urn_vs_embedded(n: int, samples: int, seed: int, tv_max: float = 0.005) -> CheckResult:
    z = sample_urn_states(n, samples, derive_stream(seed, n))
    tv = tv_distance(EmpiricalDist.from_samples(z), growth.embedded_pmf_table(n).row(n))
    return CheckResult(f"urn_vs_embedded[n={n}]", tv < tv_max,
                       {"tv": tv, "tv_max": tv_max, "samples": samples})


def out_degree_mean(n: int, samples: int, seed: int, rel_tol: float = 0.02) -> CheckResult:
    z = sample_urn_states(n, samples, derive_stream(seed, 0))
    ci = mean_ci(z)
    formula = growth.mean_out_degree_asymptotic(n)
    ratio = ci.mean / formula
    return CheckResult(f"out_degree_mean[n={n}]", abs(ratio - 1) < rel_tol,
                       {"empirical_mean": ci.mean, "std_error": ci.std_error,
                        "formula": formula, "ratio": ratio, "rel_tol": rel_tol})


def _tail_rows(samples, mean: float, epsilons, bound_fn, label: dict, n_se: float):
    rows = []
    for eps in epsilons:
        for side in ("upper", "lower"):
            thr = (1 + eps) * mean if side == "upper" else (1 - eps) * mean
            tf = tail_exceedance(samples, thr, side)
            bound = bound_fn(eps, side)
            rows.append({**label, "epsilon": eps, "side": side, "mean_used": mean,
                         "threshold": thr, "freq": tf.freq, "wilson_se": tf.std_error,
                         "bound": bound, "ok": tf.freq <= bound + n_se * tf.std_error})
    return rows


def out_degree_tails(ns, epsilons, samples: int, seed: int, n_se: float = 3.0) -> CheckResult:
    """Empirical urn-chain tails against exp(-eps^2 m / 3)."""
    rows = []
    for n in ns:
        z = sample_urn_states(n, samples, derive_stream(seed, 100 + n))
        mean = growth.mean_out_degree_asymptotic(n)
        rows += _tail_rows(z, mean, epsilons,
                           lambda eps, side, n=n: growth.out_degree_tail_bound(n, eps, side),
                           {"n": n}, n_se)
    worst = max(r["freq"] - r["bound"] for r in rows)
    return CheckResult("out_degree_tails", all(r["ok"] for r in rows),
                       {"cases": len(rows), "max_freq_minus_bound": worst}, rows)


def in_degree_tails(ranks, epsilons, samples: int, seed: int, mean: str = "exact",
                    n_se: float = 3.0) -> CheckResult:
    """In-degree of the node of rank i (i - 1 earlier nodes) against its tail bounds.

    ``mean="exact"`` centres events and bounds on the exact expectation from
    the urn table; ``"asymptotic"`` uses (2 sqrt 2 / 3) sqrt(i - 1).
    """
    rows = []
    table = growth.embedded_pmf_table(max(ranks))
    for i in ranks:
        deg = sample_growth_in_degrees(i, samples, derive_stream(seed, 200 + i))[:, i - 1]
        m = (growth.in_degree_mean_exact(i - 1, table) if mean == "exact"
             else growth.in_degree_mean_asymptotic(i - 1))
        rows += _tail_rows(deg, m, epsilons,
                           lambda eps, side, i=i, m=m: growth.in_degree_tail_bound(i, eps, side, m),
                           {"rank": i, "empirical_mean": float(deg.mean())}, n_se)
    worst = max(r["freq"] - r["bound"] for r in rows)
    return CheckResult(f"in_degree_tails[mean={mean}]", all(r["ok"] for r in rows),
                       {"cases": len(rows), "max_freq_minus_bound": worst}, rows)


def in_degree_scaling(ns, reps: int, seed: int, stability: float = 0.05,
                      theta_lags=(101, 300, 1000, 3000), theta_tol: float = 0.10) -> CheckResult:
    """E(in-degree)/sqrt(n) across n, plus arc frequencies against 1/sqrt(2(d-1)+1)."""
    n_nodes = max(ns) + 1
    deg = sample_growth_in_degrees(n_nodes, reps, derive_stream(seed, 300))
    consts = {n: float(deg[:, n].mean()) / math.sqrt(n) for n in ns}
    spread = (max(consts.values()) - min(consts.values())) / float(np.mean(list(consts.values())))
    lag_freq = sample_growth_lag_frequencies(n_nodes, reps, derive_stream(seed, 301),
                                             max_lag=max(theta_lags))
    rows = []
    for d in theta_lags:
        predicted = growth.arc_probability_asymptotic(1, d + 1)
        rows.append({"lag": d, "empirical": float(lag_freq[d]), "asymptotic": predicted,
                     "rel_gap": float(lag_freq[d]) / predicted - 1})
    theta_ok = all(abs(r["rel_gap"]) < theta_tol for r in rows)
    metrics = {f"const[n={n}]": c for n, c in consts.items()}
    last = consts[max(ns)]
    metrics.update({
        "spread": spread,
        "ratio_to_2sqrt2_over_3": last / (2 * math.sqrt(2) / 3),
        "ratio_to_sqrt2": last / math.sqrt(2),
        "max_theta_rel_gap": max(abs(r["rel_gap"]) for r in rows),
    })
    return CheckResult("in_degree_scaling", spread < stability and theta_ok, metrics, rows)


def spanning_tree_mean(n: int, runs: int, seed: int, n_se: float = 3.0) -> CheckResult:
    """Simulated E(T_{n+1}) against the product of the same sample's mean in-degrees."""
    deg = sample_growth_in_degrees(n + 1, runs, derive_stream(seed, 400 + n))[:, 1:]
    counts = np.prod(deg.astype(float), axis=1)
    ci = mean_ci(counts)
    product = float(np.prod(deg.mean(axis=0)))
    z = (ci.mean - product) / ci.std_error
    return CheckResult(f"spanning_tree_mean[n={n}]", abs(z) <= n_se, {
        "mean_T": ci.mean, "std_error": ci.std_error, "product_of_mean_in_degrees": product,
        "z": z, "asymptotic": math.exp(growth.expected_spanning_trees_log(n)),
        "mean_log_T": float(np.log(counts).mean()),
    })


def jump_chain_law(params: ModelParams, n: int, samples: int, seed: int,
                   tv_max: float = 0.005) -> CheckResult:
    states = sample_bd_jump_chain_states(n, params, samples, derive_stream(seed, n))
    row = dq.bd_embedded_table(params, n).row(n)
    tv = tv_distance(EmpiricalDist.from_samples(states), row)
    return CheckResult(f"jump_chain[alpha={params.alpha:g},n={n}]", tv < tv_max,
                       {"tv": tv, "tv_max": tv_max})


def steady_occupancy(params: ModelParams, n_jumps: int, seed: int,
                     tv_max: float = 0.01) -> CheckResult:
    occ = single_node_occupancy(n_jumps, params, derive_stream(seed, 0))
    law = dq.steady_state_conditional(1, None, params)
    tv = tv_between(occ, law.dense()) + 0.5 * law.mass_deficit
    return CheckResult(f"steady_occupancy[lam/mu={params.lam / params.mu:g}]", tv < tv_max,
                       {"tv": tv, "tv_max": tv_max, "jumps": n_jumps})


def transient_law(params: ModelParams, t: float) -> DistVector:
    if params.mu == 0:
        k_max = int(4 * math.ceil(params.lam * t) + 50)
        return growth.pure_birth_dist(t, params.lam, k_max)
    return dq.bd_transient_dist(t, params)


def first_node_marginal(params: ModelParams, t: float, replications: int, seed: int,
                        tv_max: float = 0.01, jobs: int = 1) -> CheckResult:
    """Root out-degree at time t in full network runs against the transient law."""
    config = SimConfig(params, horizon=t, replication_count=replications, master_seed=seed)
    traces = run_replications(config, jobs)
    degrees = [tr.snapshots[-1].root_out_degree for tr in traces]
    tv = tv_distance(EmpiricalDist.from_samples(degrees), transient_law(params, t))
    return CheckResult(f"first_node_marginal[lam={params.lam:g},mu={params.mu:g},t={t:g}]",
                       tv < tv_max, {"tv": tv, "tv_max": tv_max, "replications": replications})


def live_count_poisson(params: ModelParams, horizon: float, seed: int,
                       tv_max: float = 0.01) -> CheckResult:
    """Time-weighted live population after burn-in against Poisson(lam/mu)."""
    config = SimConfig(params, horizon=horizon, master_seed=seed, record_occupancy=True)
    trace = simulate_network(config, derive_stream(seed, 0))
    occ = np.asarray(trace.live_count_occupancy)
    occ = occ / occ.sum()
    ks = np.arange(len(occ) + 50)
    tv = tv_between(occ, stats.poisson.pmf(ks, params.lam / params.mu))
    return CheckResult(f"live_count_poisson[lam/mu={params.lam / params.mu:g}]", tv < tv_max,
                       {"tv": tv, "tv_max": tv_max, "arrivals": trace.arrivals})


def w_root_ratio(params: ModelParams, measure_time: float, seed: int, replications: int = 1,
                 band: float = 0.2, snapshot_step: float | None = None, jobs: int = 1) -> CheckResult:
    """Time-averaged extra-work functional after a 10/mu burn-in, over sqrt(lam/mu)."""
    burn = 10.0 / params.mu
    step = snapshot_step or 0.1 / params.mu
    times = tuple(np.arange(burn, burn + measure_time + step / 2, step))
    config = SimConfig(params, horizon=times[-1], snapshot_times=times,
                       replication_count=replications, master_seed=seed)
    traces = run_replications(config, jobs)
    est = measure_w_root(traces, (burn, times[-1]))
    target = dq.root_extra_work_mean(params)
    at_arrival = float(np.mean([s.w_root_at_arrival for tr in traces for s in tr.snapshots]))
    ratio = est.mean / target
    return CheckResult(f"w_root[lam/mu={params.lam / params.mu:g}]", abs(ratio - 1) <= band, {
        "mean": est.mean, "std_error": est.std_error, "target": target, "ratio": ratio,
        "ratio_at_arrival_in_degree": at_arrival / target, "band": band,
    })
