"""Scan the root's extra-work functional over lam/mu and print ratios to sqrt(lam/mu).

Two variants are reported: the in-degree at the snapshot (recovery arcs
included) and the in-degree each node had right after it arrived.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from p2pgrowth import validate_params
from p2pgrowth.experiments import w_root_ratio


@dataclass(frozen=True)
class ScanConfig:
    loads: tuple[float, ...] = (2.0, 5.0, 10.0, 20.0, 50.0, 100.0)
    measure_time: float = 300.0
    replications: int = 4
    seed: int = 1


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--loads", type=float, nargs="+", default=ScanConfig.loads)
    p.add_argument("--measure-time", type=float, default=ScanConfig.measure_time)
    p.add_argument("--replications", type=int, default=ScanConfig.replications)
    p.add_argument("--seed", type=int, default=ScanConfig.seed)
    a = p.parse_args()
    cfg = ScanConfig(tuple(a.loads), a.measure_time, a.replications, a.seed)
    print("rho,w_root_mean,std_error,ratio,ratio_at_arrival")
    for rho in cfg.loads:
        r = w_root_ratio(validate_params(rho, 1.0), cfg.measure_time, cfg.seed, cfg.replications)
        m = r.metrics
        print(f"{rho:g},{m['mean']:.6g},{m['std_error']:.3g},{m['ratio']:.4f},"
              f"{m['ratio_at_arrival_in_degree']:.4f}")


if __name__ == "__main__":
    main()
