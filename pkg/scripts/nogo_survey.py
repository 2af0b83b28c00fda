"""No-go survey over several seeds, followed by the generalized check for a
few repulsive wall profiles.

    python scripts/nogo_survey.py --seeds 5 --trials 100
"""

import argparse
import json
import time

import numpy as np

from presslab import nogo
from presslab.qbox import WallModel

WALLS = {
    "gaussian repulsion": lambda d: 5.0 * np.exp(-np.asarray(d) ** 2 / 0.04),
    "soft step": lambda d: 2.0 / (1.0 + np.exp((np.asarray(d) - 0.1) / 0.02)),
    "exponential": lambda d: 3.0 * np.exp(-np.asarray(d) / 0.1),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--trials", type=int, default=100)
    args = ap.parse_args()

    total = nogo.NogoReport()
    for seed in range(args.seeds):
        t0 = time.perf_counter()
        rep = nogo.check_nogo(args.trials, seed=seed)
        total = total.merge(rep)
        print(f"seed {seed}: {rep.violations} violations, min P_n {rep.min_per_level_pressure:.4g}, "
              f"{time.perf_counter() - t0:.1f} s")
    print(json.dumps(total.to_dict(), indent=2, sort_keys=True))

    for name, profile in WALLS.items():
        rep = nogo.check_generalized_nogo(WallModel.smooth(profile))
        print(f"{name}: ok={rep.ok}, min mixture P {rep.min_total_pressure:.4g}, "
              f"formula gap {rep.max_formula_disagreement:.1e}")


if __name__ == "__main__":
    main()
