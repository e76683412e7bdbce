"""Write graph6 files of all connected graphs on n vertices.

    python scripts/generate_streams.py 9            # into $ABFACTOR_CACHE
    python scripts/generate_streams.py 7 --out data/
"""
import argparse
import shutil
import time
from pathlib import Path

from abfactor.streams import connected_graph6_file


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("max_n", type=int)
    parser.add_argument("--out", type=Path, help="also copy the files here")
    args = parser.parse_args()
    for n in range(1, args.max_n + 1):
        start = time.perf_counter()
        path = connected_graph6_file(n)
        with open(path) as fh:
            count = sum(1 for _ in fh)
        print(f"n={n}: {count} graphs  {path}  ({time.perf_counter() - start:.1f}s)")
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            shutil.copy(path, args.out / path.name)


if __name__ == "__main__":
    main()
