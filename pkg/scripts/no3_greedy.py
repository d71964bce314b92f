"""Greedy extension of a modular parabola to a large grid without three in line."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import Saver, parser, timer  # noqa: E402
from combwork.no_three_in_line import (certify, density_profile, greedy_extend, is_prime,  # noqa: E402
                                       modular_parabola)


def main():
    p = parser(__doc__)
    p.add_argument("--N", type=int, default=500)
    p.add_argument("--p", type=int, default=None, help="prime for the seed parabola")
    p.add_argument("--order", default="row-major", choices=["row-major", "spiral", "random"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=int, default=50)
    args = p.parse_args()
    save = Saver(args.out)
    prime = args.p or max(q for q in range(2, args.N // 2 + 1) if is_prime(q))
    with timer() as t:
        S = greedy_extend(modular_parabola(prime), args.N, args.order, args.seed)
    print(f"seed parabola p={prime}, grid {args.N}, order {args.order}: {len(S)} points ({t.ms} ms)")
    prof = density_profile(S, args.N)
    for n, x in prof:
        if n % args.step == 0 or n == args.N:
            print(f"  n={n:4d}  |S & [n]^2| / n = {float(x):.4f}")
    print(f"  liminf proxy (min over n >= N/2): {float(min(x for n, x in prof if n >= args.N // 2)):.4f}")
    save(certify(S, f"greedy-{args.order}", args.N, runtime_ms=t.ms, p=prime))


if __name__ == "__main__":
    main()
