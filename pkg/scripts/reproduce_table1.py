"""Recompute the f_s(inf) table for s = 1/2 .. 5 and the power-law fit.

    python scripts/reproduce_table1.py [--n-max 10000] [--out-dir results/]

With --out-dir, also writes the full f_s(N) series per spin (split by parity
for half-integer s) and table.csv / fit.json.
"""

import argparse
import csv
import json
import time
from fractions import Fraction
from pathlib import Path

from spinwitness.decidability import fraction_series, last_jump
from spinwitness.fitting import fit
from spinwitness.spins import TwiceSpin

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=10000)
    ap.add_argument("--out-dir", type=Path)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    with open(ROOT / "data" / "table1.csv") as fh:
        reference = {TwiceSpin.parse(r["s"]): r for r in csv.DictReader(fh)}
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)

    rows = []
    print(f"{'s':>4} {'bracket':>13} {'center':>9} {'half':>9} | {'ref':>8} {'ref half':>8}")
    for s in range(1, 11):
        t0 = time.perf_counter()
        series = fraction_series(s, 1, args.n_max)
        est = last_jump(series)
        ref = reference[s]
        print(f"{str(TwiceSpin(s)):>4} {est.N_lo:>6},{est.N_hi:<6} {est.center:9.5f} {est.half_width:9.6f}"
              f" | {ref['f']:>8} {ref['half_width']:>8}  ({time.perf_counter() - t0:.1f}s)")
        rows.append((TwiceSpin(s), est))
        if args.out_dir:
            for name, sub in series.classes().items():
                (args.out_dir / f"f_s{s}_{name}.csv").write_text(sub.to_csv())

    result = fit([(float(Fraction(s, 2)), est.center) for s, est in rows], seed=args.seed)
    p = result.params
    print(f"fit: a={p.a:.5f} b={p.b:.5f} c={p.c:.5f} ssr={p.ssr:.2e}")

    if args.out_dir:
        with open(args.out_dir / "table.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["s", "N_lo", "N_hi", "f_lo", "f_hi", "center", "half_width"])
            for s, est in rows:
                w.writerow([str(s), est.N_lo, est.N_hi, *(format(v, ".12g") for v in
                            (est.f_lo, est.f_hi, est.center, est.half_width))])
        (args.out_dir / "fit.json").write_text(json.dumps(result.report(), indent=2) + "\n")


if __name__ == "__main__":
    main()
