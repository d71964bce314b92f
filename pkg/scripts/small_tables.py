"""Small exact values: saturation, rainbow covers, modular colourings, intersecting graphs."""

import random
import sys
from itertools import combinations, product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import Saver, parser, timer  # noqa: E402
from combwork.core.budget import SearchBudget  # noqa: E402
from combwork.graph_intersect import EDGE, TRIANGLE, certify_g, exact_g  # noqa: E402
from combwork.one_factorizations import certify_r, exhaustive_r  # noqa: E402
from combwork.rado_modular import ModularInstance, certify_min_K, compute_d, min_K  # noqa: E402
from combwork.saturation_rainbow import (certify_min_saturated, certify_rainbow_cover,  # noqa: E402
                                         greedy_proper_colouring, greedy_rainbow_cover,
                                         min_saturated, nlogn_bound)


def main():
    p = parser(__doc__)
    p.add_argument("--budget", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    save = Saver(args.out)
    budget = SearchBudget(time_limit=args.budget)

    print("min diamond-saturated family size")
    for n in range(1, 5):
        size, F, status = min_saturated(n, budget)
        print(f"  n={n}: {size} ({status.value})")
        save(certify_min_saturated(n, size, F, status))

    print("rainbow path covers of random properly coloured graphs (n, edges, paths, n log n)")
    rng = random.Random(args.seed)
    for n in range(4, 13, 2):
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.5]
        c = greedy_proper_colouring(n, edges)
        paths, exact = greedy_rainbow_cover(c)
        print(f"  {n:2d} {len(edges):3d} {len(paths):3d} {nlogn_bound(n):3d}")
        save(certify_rainbow_cover(c, paths, exact))

    print("least number of colours for Z/2^r (r, a, d, K)")
    for r in (1, 2, 3):
        for a in product(range(1, 1 << r), repeat=2):
            if a[0] <= a[1]:
                inst = ModularInstance(r, a)
                K, _, status = min_K(inst, budget=budget)
                print(f"  {r} {a} d={compute_d(inst)} K={K} ({status.value})")
                if status.value == "exact":
                    save(certify_min_K(inst))

    print("H-intersecting families of graphs on [n]")
    for n, H, name in [(3, EDGE, "edge"), (3, TRIANGLE, "triangle"), (4, TRIANGLE, "triangle")]:
        with timer() as t:
            v, fam, status = exact_g(n, H, budget)
        print(f"  n={n} {name}: {v} ({status.value}, {t.ms} ms)")
        save(certify_g(n, H, v, fam, status, runtime_ms=t.ms))

    print("one-factorizations of Q_d")
    for d in (2, 3, 4):
        with timer() as t:
            r, F, status, count = exhaustive_r(d, budget)
        print(f"  d={d}: r={r} ({status.value}, {count} factorizations examined, {t.ms} ms)")
        save(certify_r(d, r, F, status, count, runtime_ms=t.ms))


if __name__ == "__main__":
    main()
