"""Annealer against the sampling + polish oracle on two-qubit families.

    python3 scripts/oracle_check.py --metric js --family werner
"""
import argparse

import numpy as np

from qjsd.annealing import minimize_distance_batch
from qjsd.families import FAMILIES, family_state
from qjsd.oracle import brute_force_minimum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", choices=FAMILIES, default="werner")
    ap.add_argument("--metric", choices=("js", "bures"), default="js")
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--grid", default="0.4,0.5,0.6,0.7,0.8,0.9,1.0")
    args = ap.parse_args()

    params = [float(x) for x in args.grid.split(",")]
    states = [family_state(args.family, x) for x in params]
    annealed = minimize_distance_batch(states, args.metric, calibrate=False)
    print(f"{'param':>6} {'oracle':>12} {'annealed':>12} {'diff':>10} {'sampled':>12}")
    diffs = []
    for x, rho, res in zip(params, states, annealed):
        orc = brute_force_minimum(rho, args.metric, samples=args.samples)
        diffs.append(res.raw_value - orc.value)
        print(f"{x:6.2f} {orc.value:12.8f} {res.raw_value:12.8f} {diffs[-1]:+10.2e} {orc.sample_value:12.8f}")
    print(f"max |diff| = {np.max(np.abs(diffs)):.2e}")


if __name__ == "__main__":
    main()
