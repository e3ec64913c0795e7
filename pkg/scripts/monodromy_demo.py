"""Track a section around each generator loop and print the induced permutations."""

import argparse
import time

from spheresect.feasibility import section_fn
from spheresect.monodromy import braid_relation_check, generator_loop, track


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--method", default=None, choices=("cross_ratio", "torsion", "spacelevel", "planner"))
    ap.add_argument("--steps", type=int, default=32)
    ap.add_argument("--relations", action="store_true", help="also check the braid relations")
    args = ap.parse_args()

    f = section_fn(args.n, args.m, args.method)
    for i in range(1, args.n):
        t0 = time.perf_counter()
        r = track(f, generator_loop(args.n, i), steps=args.steps)
        cycles = [c for c in r.permutation.cycles() if len(c) > 1]
        print(f"s{i}: {len(cycles)} nontrivial cycles, lengths {sorted(len(c) for c in cycles)}, "
              f"closure {r.closure_mismatch:.1e}, {r.steps} steps [{time.perf_counter() - t0:.1f}s]")
    if args.relations:
        for i in range(1, args.n - 1):
            rel = braid_relation_check(f, args.n, i, steps=args.steps)
            print(f"s{i} s{i + 1} s{i} = s{i + 1} s{i} s{i + 1} on new points: {rel['consistent']}")


if __name__ == "__main__":
    main()
