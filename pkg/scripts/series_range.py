"""Where does the double-precision transient series for mu > 0 stay usable?

For each (lam, mu) pair and time t, prints the normalisation error or the
error the solver raised instead.
"""
from __future__ import annotations

import argparse

from p2pgrowth import ModelError, validate_params
from p2pgrowth.discouragement import bd_transient_dist


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--times", type=float, nargs="+", default=[0.5, 1, 2, 3, 4, 5])
    p.add_argument("--tol", type=float, default=1e-9)
    a = p.parse_args()
    print("lambda,mu,t,outcome")
    for lam, mu in [(1.0, 1.0), (2.0, 1.0), (1.0, 2.0), (1.0, 0.1)]:
        for t in a.times:
            try:
                law = bd_transient_dist(t, validate_params(lam, mu), a.tol)
                outcome = f"ok deficit={law.mass_deficit:.1e}"
            except ModelError as exc:
                outcome = f"{type(exc).__name__}"
            print(f"{lam:g},{mu:g},{t:g},{outcome}")


if __name__ == "__main__":
    main()
