#!/usr/bin/env python3
"""
Write the bench CSVs under the calibration profile and print the headline
comparisons: latency per read length, fixed-131 speedups, power ratios.
"""

import argparse
import io

from memrace.cost import load_profiles, speedup_report
from memrace.harness import RunConfig, run_bench


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--profile", default="calibration")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    err = io.StringIO()
    for p in run_bench(RunConfig(mode="bench", out=args.out, profiles=[args.profile], seed=args.seed), err):
        print(f"wrote {p}")

    profiles, fpni = load_profiles([args.profile])
    lens = [1, 2, 4, 8, 16, 19, 32, 64, 131]
    rep = speedup_report(lens, profiles, 131, fpni=fpni)
    print(f"\n{'read_len':>8} {'proposed_s':>12} {'race/prop':>10} {'systolic/prop':>14}")
    for L in lens:
        print(f"{L:>8} {rep.row('proposed', L).latency_s:>12.4g} "
              f"{rep.speedup('race_cmos', L):>10.4g} {rep.speedup('systolic', L):>14.4g}")
    print(f"\npower ratio at 131: race_cmos {rep.power_ratio('race_cmos', 131):.3g}, "
          f"systolic {rep.power_ratio('systolic', 131):.3g}")


if __name__ == "__main__":
    main()
