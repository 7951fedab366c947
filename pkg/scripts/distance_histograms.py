"""Distance from Hilbert-Schmidt random states to I/N, per dimension.

    python3 scripts/distance_histograms.py --samples 10000 --out results/fig1
"""
import argparse
from pathlib import Path

from qjsd.experiments import run_fig1, write_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dims", default="2,3,4,6,8")
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--bins", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/fig1")
    args = ap.parse_args()

    dims = [int(d) for d in args.dims.split(",")]
    res = run_fig1(dims, args.samples, args.bins, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n, (centers, density) in res.histograms.items():
        write_csv(out / f"hist_dim{n}.csv", ("bin_center", "density"), zip(centers, density), args.seed)

    print(f"{'N':>3} {'mean':>8} {'std':>8} {'mode bin':>9}")
    for n, mean, std in res.summary:
        centers, density = res.histograms[n]
        print(f"{n:>3} {mean:8.4f} {std:8.4f} {centers[density.argmax()]:9.3f}")
    print("means increasing:", res.means_increasing)


if __name__ == "__main__":
    main()
