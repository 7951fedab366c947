"""Concurrence, E_JS and E_B along the Werner, MEM and PDC families.

Prints each curve against the linear entropy and the largest value of
E_JS - min(C, E_B) over interior points.  The default 21-point run takes a
few minutes on one core.

    python3 scripts/entanglement_curves.py --points 21
"""
import argparse
from dataclasses import replace

from qjsd.annealing import AnnealingSchedule
from qjsd.experiments import run_fig2_many
from qjsd.families import FAMILIES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--restarts", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    schedule = replace(AnnealingSchedule(), restarts=args.restarts)
    points = run_fig2_many(FAMILIES, args.points, schedule, args.seed)
    for fam in FAMILIES:
        rows = [p for p in points if p.family == fam]
        print(f"\n{fam}\n{'param':>6} {'S_L':>6} {'C':>7} {'E_JS':>7} {'E_B':>7}")
        for p in rows:
            print(f"{p.param:6.2f} {p.s_linear:6.3f} {p.concurrence:7.4f} {p.e_js:7.4f} {p.e_bures:7.4f}")
        gap = max(p.e_js - min(p.concurrence, p.e_bures) for p in rows[1:-1])
        print(f"max interior E_JS - min(C, E_B): {gap:+.4f}")


if __name__ == "__main__":
    main()
