"""Bounds and exact values for product partitions and odd covers."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import Saver, parser, timer  # noqa: E402
from combwork.core.budget import SearchBudget  # noqa: E402
from combwork.core.exact_cover import ODD, PARTITION  # noqa: E402
from combwork.product_partitions import bound_table, certify_cover, exact_value  # noqa: E402


def main():
    p = parser(__doc__)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--budget", type=float, default=100.0)
    args = p.parse_args()
    save = Saver(args.out)
    cols = ["n", "star_upper_g", "odd_upper_g_tilde", "lower_g_leading", "upper_g_leading",
            "lower_g_tilde_leading", "star_upper_h", "h_conjectured_leading"]
    print("  ".join(cols))
    for row in bound_table(range(2, args.max_n + 1)):
        print("  ".join(f"{float(row[c]):.2f}" if c.endswith("leading") else str(row[c]) for c in cols))
    print("exact searches (target, n, value, status, ms)")
    for target, ns, mode in [("g", (2, 3, 4), PARTITION), ("g_tilde", (2, 3), ODD), ("h", (2, 3, 4), PARTITION)]:
        for n in ns:
            with timer() as t:
                v, cover, status = exact_value(target, n, SearchBudget(time_limit=args.budget))
            print(f"  {target:8s} {n}  {v}  {status.value}  {t.ms}")
            if cover is not None:
                save(certify_cover(cover, mode, target, status, runtime_ms=t.ms))


if __name__ == "__main__":
    main()
