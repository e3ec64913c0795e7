"""Build every direct torsion section and every planner size for one random 4-point configuration."""

import argparse
import time

import numpy as np

from spheresect.configuration import Configuration, verify_output
from spheresect.elliptic import TORSION_TABLE, section_four_planned, section_four_torsion, spec_for_size


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--m-max", type=int, default=200)
    args = ap.parse_args()

    cfg = Configuration.random(4, np.random.default_rng(args.seed), min_sep=0.05)
    for m in sorted(TORSION_TABLE):
        t0 = time.perf_counter()
        rep = verify_output(cfg, section_four_torsion(cfg, spec_for_size(m)), m)
        print(f"torsion m={m:3d}  ok={rep['ok']}  min sep {rep['min_separation_new']:.2e}  "
              f"[{time.perf_counter() - t0:.2f}s]")
    for m in range(70, args.m_max + 1):
        if m % 24 not in (0, 6, 16, 22):
            continue
        t0 = time.perf_counter()
        out = section_four_planned(cfg, m)
        rep = verify_output(cfg, out, m)
        print(f"planner m={m:3d}  ok={rep['ok']}  base {out.parameters['base']} + {out.parameters['levels']} levels  "
              f"[{time.perf_counter() - t0:.2f}s]")


if __name__ == "__main__":
    main()
