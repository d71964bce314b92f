"""Achievable stay-probability pairs on small tori versus the conjectured hulls."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import Saver, parser, timer  # noqa: E402
from combwork.torus_walks import (certify_sweep, hull_conjecture_membership,  # noqa: E402
                                  hull_k2_membership, sweep_pairs)


def main():
    p = parser(__doc__)
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    save = Saver(args.out)
    runs = [(4, 2, "exhaustive", "k2"), (2, 3, "exhaustive", "conj"), (6, 2, "random", "k2")]
    for n, k, mode, hull in runs:
        with timer() as t:
            found, examined = sweep_pairs(n, k, mode, seed=args.seed, count=args.samples)
        if hull == "k2":
            outside = [sp for sp in found if not hull_k2_membership(sp)]
        else:
            outside = [sp for sp in found if not hull_conjecture_membership(sp, k)]
        print(f"T_{n}^{k} {mode}: {examined} colourings, {len(found)} distinct pairs, "
              f"{len(outside)} outside the {hull} hull ({t.ms} ms)")
        for sp in outside[:5]:
            print(f"  outside: {sp}")
        save(certify_sweep(n, k, found, examined, hull, runtime_ms=t.ms))


if __name__ == "__main__":
    main()
