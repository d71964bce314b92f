"""Densities of the cube constructions and exact ex_k(n, d) for small n."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import Saver, parser, timer  # noqa: E402
from combwork.core.budget import SearchBudget  # noqa: E402
from combwork.cube_turan import certify_exact, density_profile, exact_ex  # noqa: E402


def main():
    p = parser(__doc__)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--budget", type=float, default=30.0, help="seconds per exact instance")
    args = p.parse_args()
    save = Saver(args.out)

    print("construction densities")
    specs = [("weight_mod4_k0", {}, 1), ("C13", {}, 1), ("D2", {"d": 2}, 2),
             ("D2", {"d": 3}, 3), ("C2", {"m": 1}, 2)]
    for kind, kw, lo in specs:
        n_lo = max(lo, kw.get("d", 0), 2)
        rows = density_profile(kind, range(n_lo, args.max_n + 1), **kw)
        label = kind + "".join(f" {k}={v}" for k, v in kw.items())
        print(f"  {label:20s}", " ".join(f"{float(x):.4f}" for _, x in rows))

    print("exact ex_k(n, d)  (n, k, d, value, density, status, ms)")
    for k, d in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]:
        for n in range(d, 7):
            with timer() as t:
                res = exact_ex(n, k, d, SearchBudget(time_limit=args.budget))
            print(f"  {n} {k} {d}  {res.value:4d}  {str(res.density):8s} {res.status.value:6s} {t.ms}")
            save(certify_exact(res, runtime_ms=t.ms))


if __name__ == "__main__":
    main()
