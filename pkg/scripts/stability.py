"""Empirical ratio d_H(Gamma_x(Fin), Gamma_y(Fin)) / ||x - y||_inf over random periodic pairs.

    python3 scripts/stability.py --count 1000
"""

import argparse
import math
import random
from fractions import Fraction

from roughideal.engine import gamma_rough
from roughideal.exact_sets import hausdorff_distance
from roughideal.generators import eventually_periodic
from roughideal.ideals import FIN
from roughideal.rough_families import Degenerate


def _shape(s):
    T = sum(1 for c in s.cells if c.index.to_text().startswith("fin"))
    return T, max(len(s.cells) - T, 1)


def sup_distance(x, y) -> Fraction:
    (tx, px), (ty, py) = _shape(x), _shape(y)
    n = max(tx, ty) + math.lcm(px, py)
    return max(abs(a - b) for a, b in zip(x.prefix(n), y.prefix(n)))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ratios, violations = [], 0
    for i in range(args.count):
        rng = random.Random(args.seed + i)
        x, y = eventually_periodic(rng), eventually_periodic(rng)
        d = hausdorff_distance(gamma_rough(x, FIN, Degenerate()).set,
                               gamma_rough(y, FIN, Degenerate()).set)
        s = sup_distance(x, y)
        if d > s:
            violations += 1
            print(f"violation: x={x.to_text()} y={y.to_text()} d_H={d} sup={s}")
        if s:
            ratios.append(float(Fraction(d) / s))
    ratios.sort()
    print(f"pairs={args.count} violations={violations}")
    if ratios:
        mid = ratios[len(ratios) // 2]
        print(f"ratio min={ratios[0]:.3f} median={mid:.3f} max={ratios[-1]:.3f}")
    return 1 if violations else 0


if __name__ == "__main__":
    raise SystemExit(main())
