"""Print the existence verdict for every (n, m) in a range, as a grid or CSV."""

import argparse
import csv
import sys

from spheresect.feasibility import Status, decide

SYMBOL = {Status.EXISTS: "+", Status.NOT_EXISTS: ".", Status.UNKNOWN: "?"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5, 6, 7, 8])
    ap.add_argument("--m-max", type=int, default=120)
    ap.add_argument("--csv", action="store_true", help="one row per (n, m) with citation")
    args = ap.parse_args()

    if args.csv:
        wr = csv.writer(sys.stdout, lineterminator="\n")
        wr.writerow(["n", "m", "status", "construction", "citation"])
        for n in args.n:
            for m in range(args.m_max + 1):
                v = decide(n, m)
                wr.writerow([n, m, v.status.value, v.recipe or "", v.citation])
        return
    print("+ constructive   . impossible   ? open")
    for n in args.n:
        row = "".join(SYMBOL[decide(n, m).status] for m in range(args.m_max + 1))
        counts = {s: row.count(SYMBOL[s]) for s in Status}
        print(f"n={n}: {row}")
        print(f"      exists {counts[Status.EXISTS]}, impossible {counts[Status.NOT_EXISTS]}, "
              f"open {counts[Status.UNKNOWN]}")


if __name__ == "__main__":
    main()
