"""Disc gas with an attracting wall: pressure against radius for the two
couplings that bracket the sign change at a = 0.78, plus a finer coupling
sweep locating where P(0.78) changes sign.

    python scripts/reproduce_disc_gas.py --outdir results
"""

import argparse
import json
from pathlib import Path

from presslab import discgas
from presslab.cli import write_csv
from presslab.numkernel import find_root
from presslab.svg import line_plot


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--steps", type=int, default=201)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    curves = discgas.pressure_scan(0.5, 1.5, args.steps, [0.0, 0.5, 0.56, 0.57, 0.6])
    write_csv(["a", "beta_sigma", "pressure"],
              [[a, c.beta_sigma, p] for c in curves for a, p in c.points],
              args.outdir / "disc_gas_scan.csv")
    shown = [c for c in curves if c.beta_sigma in (0.56, 0.57)]
    (args.outdir / "disc_gas.svg").write_text(line_plot(
        [(f"beta*sigma = {c.beta_sigma:g}", c.a, c.pressure) for c in shown],
        title="Disc gas: pressure vs radius", xlabel="a", ylabel="d ln Z / da"))

    # coupling at which the pressure at a = 0.78 vanishes
    root = find_root(lambda bs: discgas.pressure(discgas.DiscParams(0.78, bs)), 0.5, 0.6, tol=1e-10)
    summary = {
        "critical_beta_sigma_at_0.78": root.root,
        "zero_crossings": {f"{c.beta_sigma:g}": c.zero_crossings() for c in curves},
    }
    text = json.dumps(summary, indent=2, sort_keys=True)
    (args.outdir / "disc_gas_summary.json").write_text(text + "\n")
    print(text)


if __name__ == "__main__":
    main()
