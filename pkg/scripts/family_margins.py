"""Spectral gap between H and the other family members across (a, b, n).

    python scripts/family_margins.py --out results/margins.csv
"""
import argparse
import csv
import sys

from abfactor import verify as V

TRIPLES = [(2, 3, 30), (2, 3, 70), (3, 4, 40), (3, 4, 108), (3, 5, 60), (4, 5, 60), (4, 6, 80)]


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out")
    args = parser.parse_args()
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(out)
    writer.writerow(["a", "b", "n", "in_hypothesis", "members", "attachment", "rho", "gap"])
    for a, b, n in TRIPLES:
        r = V.verify_family_maximizer(n, a, b)
        for row in r.evidence:
            writer.writerow([a, b, n, int(r.in_hypothesis), r.summary["members"],
                             " ".join(f"{w}:{c}" for w, c in row["attachment"]),
                             f"{row['rho']:.12f}", f"{row['gap']:.3e}"])
        if r.violations or r.findings:
            print(f"({a},{b},{n}): {r.violations + r.findings}", file=sys.stderr)
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
