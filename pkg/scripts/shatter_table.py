"""Smallest permutation families t-shattering all k-subsets of [n]."""

import sys
from math import factorial
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import Saver, parser, timer  # noqa: E402
from combwork.core.budget import SearchBudget  # noqa: E402
from combwork.shattering import (EXAMPLE_S5, certify_example, certify_family,  # noqa: E402
                                 failing_subsets, min_family)


def main():
    p = parser(__doc__)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--budget", type=float, default=30.0)
    args = p.parse_args()
    save = Saver(args.out)
    print("S_5 example: subsets with fewer than 6 orders:", failing_subsets(EXAMPLE_S5, 3, 6))
    save(certify_example(EXAMPLE_S5, 3, [(2, 3, 5), (1, 4, 5)]))
    print("n k t  size  status  ms")
    for k in (2, 3):
        for t in range(1, factorial(k) + 1):
            for n in range(k, args.max_n + 1):
                with timer() as tm:
                    size, P, status = min_family(n, k, t, SearchBudget(time_limit=args.budget))
                print(f"{n} {k} {t}  {size:4d}  {status.value:6s} {tm.ms}")
                save(certify_family(P, k, t, status, runtime_ms=tm.ms))


if __name__ == "__main__":
    main()
