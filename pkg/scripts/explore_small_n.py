"""Below-threshold exploration over every connected graph on n vertices.

For each (a, b) the spectral condition and the size condition are checked on
the exhaustive stream; anything that fails is reported as a finding (these n
are far below the sizes where the results are claimed).

    python scripts/explore_small_n.py --max-n 8 --out results/explore.json
"""
import argparse
import json
from pathlib import Path

from abfactor import verify as V
from abfactor.streams import connected_graph6_lines

WINDOWS = [(1, 2), (1, 3), (2, 3)]


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--out", type=Path)
    args = parser.parse_args()
    rows = []
    for n in range(4, args.max_n + 1):
        for a, b in WINDOWS:
            spectral = (V.verify_theorem_stream(a, b, connected_graph6_lines(n), n)
                        if n - a - b - 1 >= max(a - 1, 1) else None)
            size = V.verify_edge_theorem(a, b, connected_graph6_lines(n), n) if n - b - 1 >= 2 else None
            row = {"n": n, "a": a, "b": b,
                   "spectral_checked": spectral.checked if spectral else None,
                   "spectral_findings": len(spectral.findings) if spectral else None,
                   "size_checked": size.checked if size else None,
                   "size_findings": len(size.findings) if size else None,
                   "size_examples": [f["graph6"] for f in size.findings[:5]] if size else []}
            rows.append(row)
            print(json.dumps(row))
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(rows, indent=2) + "\n")


if __name__ == "__main__":
    main()
