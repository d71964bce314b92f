"""Colour changes along antipodal paths for layered colourings of Q_n."""

import sys
from math import isqrt
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import Saver, parser, timer  # noqa: E402
from combwork.antipodal_paths import (certify_average, layered, layered_trend,  # noqa: E402
                                      monochromatic_geodesic_length, random_colouring)


def main():
    p = parser(__doc__)
    p.add_argument("--min-n", type=int, default=6)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--width", type=int, default=None, help="band width (default ceil(sqrt n))")
    args = p.parse_args()
    save = Saver(args.out)
    print("n  width  mean(walk)  mean(geodesic)  max(geodesic)")
    with timer() as t:
        rows = layered_trend(range(args.min_n, args.max_n + 1), args.width)
    for n, w, walk, geo, top in rows:
        print(f"{n:2d}  {w:5d}  {float(walk):10.4f}  {float(geo):14.4f}  {top:13d}")
    print(f"({t.ms} ms)")
    for n in range(args.min_n, min(args.max_n, 10) + 1):
        save(certify_average(layered(n, args.width or isqrt(n - 1) + 1),
                             label=f"layered n={n}"))
    print("longest monochromatic geodesic, random 2-colourings of Q_8 (100 seeds):")
    lengths = [monochromatic_geodesic_length(random_colouring(8, 2, s)) for s in range(100)]
    print("  min", min(lengths), "max", max(lengths))


if __name__ == "__main__":
    main()
