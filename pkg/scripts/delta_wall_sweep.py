"""Delta-well walls: bound-state pressure as a function of box half-width
for several well strengths, checked against -dE/dV at every point.

    python scripts/delta_wall_sweep.py --outdir results
"""

import argparse
from pathlib import Path

import numpy as np

from presslab import deltawall
from presslab.cli import write_csv
from presslab.svg import line_plot


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--b", type=float, default=0.5)
    ap.add_argument("--u0", type=str, default="1.2,1.5,2,3")
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    a_grid = np.linspace(args.b * 1.2, 4.0, 120)
    rows, series, worst = [], [], 0.0
    for u0 in (float(t) for t in args.u0.split(",")):
        ps = []
        for a in a_grid:
            rep = deltawall.bound_pressure(deltawall.DeltaWallParams(u0, float(a), args.b))
            worst = max(worst, rep.error_estimate / abs(rep.pressure))
            rows.append([float(a), u0, rep.pressure, rep.reference])
            ps.append(rep.pressure)
        series.append((f"u0 = {u0:g}", a_grid, ps))

    write_csv(["a", "u0", "P_center", "P_fd"], rows, args.outdir / "delta_wall_sweep.csv")
    (args.outdir / "delta_wall_sweep.svg").write_text(line_plot(
        series, title=f"Delta-well walls, b = {args.b:g}", xlabel="a", ylabel="P"))
    print(f"{len(rows)} points, all P < 0: {all(r[2] < 0 for r in rows)}, "
          f"max |P - P_fd|/|P| = {worst:.2e}")


if __name__ == "__main__":
    main()
