"""Exact and simulated E(in-degree)/sqrt(n) for the growth model without churn."""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass

from p2pgrowth import derive_stream, growth
from p2pgrowth.netsim import sample_growth_in_degrees


@dataclass(frozen=True)
class ConstantConfig:
    ns: tuple[int, ...] = (10, 100, 1000, 3000)
    sim_n: int = 10_000
    reps: int = 100
    seed: int = 3


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sim-n", type=int, default=ConstantConfig.sim_n)
    p.add_argument("--reps", type=int, default=ConstantConfig.reps)
    p.add_argument("--seed", type=int, default=ConstantConfig.seed)
    a = p.parse_args()
    cfg = ConstantConfig(sim_n=a.sim_n, reps=a.reps, seed=a.seed)
    table = growth.embedded_pmf_table(max(cfg.ns))
    print("n,source,mean_over_sqrt_n")
    for n in cfg.ns:
        print(f"{n},exact,{growth.in_degree_mean_exact(n, table) / math.sqrt(n):.5f}")
    deg = sample_growth_in_degrees(cfg.sim_n + 1, cfg.reps, derive_stream(cfg.seed, 0))
    for n in (cfg.sim_n // 10, cfg.sim_n // 3, cfg.sim_n):
        print(f"{n},simulated,{deg[:, n].mean() / math.sqrt(n):.5f}")
    print(f"reference 2*sqrt(2)/3 = {2 * math.sqrt(2) / 3:.5f}, sqrt(2) = {math.sqrt(2):.5f}")


if __name__ == "__main__":
    main()
