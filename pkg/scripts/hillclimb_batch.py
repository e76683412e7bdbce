"""Run the Perron-guided hill climb from many random starts.

    python scripts/hillclimb_batch.py --n 14 --a 1 --b 2 --seeds 20
"""
import argparse

from abfactor.verify import kelmans_hillclimb


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=12)
    parser.add_argument("--a", type=int, default=1)
    parser.add_argument("--b", type=int, default=2)
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument("--max-steps", type=int, default=500)
    args = parser.parse_args()
    reached = 0
    for seed in range(args.seeds):
        r = kelmans_hillclimb(args.n, args.a, args.b, seed, args.max_steps)
        s = r.summary
        reached += s["optimum_is_H"]
        print(f"seed {seed:3d}: {s['steps']:3d} steps, rho {s['best_rho']:.9f} / rho(H) {s['rho_H']:.9f}, "
              f"H={s['optimum_is_H']} violations={len(r.violations)}")
    print(f"{reached}/{args.seeds} runs ended at H")


if __name__ == "__main__":
    main()
