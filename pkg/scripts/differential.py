"""Engine-vs-oracle differential run over seeded random ball scenarios.

    python3 scripts/differential.py --count 100 --sets gamma,lim,lambda
"""

import argparse
import random
import time
from fractions import Fraction

from roughideal.engine import gamma_rough, lambda_rough, lim_rough
from roughideal.generators import random_ball_scenario
from roughideal.ideals import ideal
from roughideal.oracle import OracleConfig, compare, grid_sets

ENGINE = {"gamma": gamma_rough, "lim": lim_rough, "lambda": lambda_rough}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--first-seed", type=int, default=1000)
    ap.add_argument("--sets", default="gamma,lim,lambda")
    ap.add_argument("--prefix", type=int, default=10_000)
    ap.add_argument("--grid-step", type=Fraction, default=Fraction(1, 128))
    ap.add_argument("--collar", type=Fraction, default=Fraction(1, 64))
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()

    sets = args.sets.split(",")
    cfg = OracleConfig(prefix=args.prefix, grid_step=args.grid_step, collar=args.collar)
    t0 = time.perf_counter()
    tally = {s: {"pass": 0, "fail": 0, "boundary": 0, "estimator": 0, "genuine": 0} for s in sets}
    for i in range(args.count):
        rng = random.Random(args.first_seed + i)
        x, F = random_ball_scenario(rng)
        I = ideal(rng.choice(["Fin", "Z"]))
        grids = grid_sets(x, I, F, sets, cfg)
        for s in sets:
            rep = ENGINE[s](x, I, F, cfg)
            cmp = compare(rep.set, grids[s], cfg)
            t = tally[s]
            t["pass" if cmp.passed else "fail"] += 1
            for d in cmp.discrepancies:
                t[d.cause] += 1
            if args.verbose or not cmp.passed:
                print(f"#{i} {s} {I.kind} x={x.to_text()} F={F.to_text()} -> {rep.set_text()}")
                for line in cmp.lines()[:6]:
                    print("   ", line)
    for s, t in tally.items():
        print(f"{s:7s} " + " ".join(f"{k}={v}" for k, v in t.items()))
    print(f"elapsed {time.perf_counter() - t0:.1f}s")
    return 0 if all(t["fail"] == 0 for t in tally.values()) else 1


if __name__ == "__main__":
    raise SystemExit(main())
