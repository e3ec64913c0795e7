"""Check the torsion-element identities in B_n exactly and print a table."""

import argparse
import json

from spheresect.identities import identity_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = ap.parse_args()

    results = [identity_suite(n) for n in range(args.n_min, args.n_max + 1)]
    if args.json:
        print(json.dumps(results, indent=2))
        return
    for r in results:
        for c in r["checks"]:
            print(f"n={r['n']}  {'ok  ' if c['holds'] else 'FAIL'}  {c['name']}  "
                  f"(|lhs|={c['lhs_length']}, |rhs|={c['rhs_length']})")
        print(f"n={r['n']}  all hold: {r['all_hold']}  [{r['seconds']:.2f}s]")


if __name__ == "__main__":
    main()
