"""Simulated E(T_{n+1}) against the product of mean in-degrees, for several n."""
from __future__ import annotations

import argparse

from p2pgrowth.experiments import spanning_tree_mean


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ns", type=int, nargs="+", default=[4, 6, 8, 10, 15])
    p.add_argument("--runs", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=5)
    a = p.parse_args()
    print("n,mean_T,std_error,product_of_means,ratio,z")
    for n in a.ns:
        m = spanning_tree_mean(n, a.runs, a.seed).metrics
        ratio = m["mean_T"] / m["product_of_mean_in_degrees"]
        print(f"{n},{m['mean_T']:.6g},{m['std_error']:.3g},"
              f"{m['product_of_mean_in_degrees']:.6g},{ratio:.4f},{m['z']:+.1f}")


if __name__ == "__main__":
    main()
