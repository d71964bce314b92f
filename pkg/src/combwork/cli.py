"""Command-line driver: one subcommand per problem family.

Exit status: 0 success, 1 usage error, 2 verification failure,
3 budget exhausted (a bound certificate is still written).
"""

from __future__ import annotations

import argparse
import sys
import time
from collections.abc import Callable

from .core.budget import BudgetExhausted, SearchBudget, Status
from .core.certificate import Certificate, VerificationError, verify

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


# each handler returns a Certificate; BOUND status is read from cert.kind

def _cube_turan(a) -> Certificate:
    from . import cube_turan as m
    if a.action == "exact":
        res = m.exact_ex(a.n, a.k, a.d, a.budget)
        return m.certify_exact(res, a.elapsed())
    return m.certify_construction(a.kind, a.n, d=a.d, m=a.m, runtime_ms=a.elapsed())


def _one_fact(a) -> Certificate:
    from . import one_factorizations as m
    r, F, status, count = m.exhaustive_r(a.d, a.budget)
    return m.certify_r(a.d, r, F, status, count, a.elapsed())


def _two_families(a) -> Certificate:
    from . import two_families as m
    if a.action == "construct":
        return m.certify_construction(a.a, a.b, a.elapsed())
    value, S, status = m.exact_max_conjecture(a.a, a.b, a.ground, a.budget)
    return m.certify_exact_max(a.a, a.b, a.ground, value, S, status, a.elapsed())


def _graph_intersect(a) -> Certificate:
    from . import graph_intersect as m
    H = m.Pattern.parse(a.H)
    value, fam, status = m.exact_g(a.n, H, a.budget)
    return m.certify_g(a.n, H, value, fam, status, a.elapsed())


def _no3(a) -> Certificate:
    from . import no_three_in_line as m
    if a.action == "parabola":
        return m.certify(m.modular_parabola(a.p), "modular_parabola", a.p, a.elapsed(), p=a.p)
    S = m.greedy_extend([], a.n, a.order, a.seed)
    return m.certify(S, "greedy", a.n, a.elapsed(), order=a.order, seed=a.seed)


def _torus(a) -> Certificate:
    from . import torus_walks as m
    found, examined = m.sweep_pairs(a.n, a.k, a.mode, a.seed, a.count, a.threads)
    return m.certify_sweep(a.n, a.k, found, examined, a.hull, a.elapsed())


def _saturation(a) -> Certificate:
    from . import saturation_rainbow as m
    size, F, status = m.min_saturated(a.n, a.budget)
    return m.certify_min_saturated(a.n, size, F, status, a.elapsed())


def _rainbow(a) -> Certificate:
    from . import saturation_rainbow as m
    edges = [(u, v) for u in range(a.n) for v in range(u + 1, a.n)]
    c = m.greedy_proper_colouring(a.n, edges)
    paths, exact = m.greedy_rainbow_cover(c)
    return m.certify_rainbow_cover(c, paths, exact, a.elapsed())


def _antipodal_colouring(a):
    from . import antipodal_paths as m
    if a.colouring == "layered":
        return m.layered(a.n, a.w)
    if a.colouring == "direction-partition":
        return m.direction_partition(a.n, a.k + 1)
    if a.colouring == "random":
        return m.random_colouring(a.n, a.k + 1, a.seed)
    return m.monochromatic(a.n)


def _antipodal(a) -> Certificate:
    from . import antipodal_paths as m
    c = _antipodal_colouring(a)
    if a.action == "average":
        return m.certify_average(c, a.elapsed(), a.colouring)
    return m.certify_geodesic_check(c, a.k, a.elapsed(), a.colouring)


def _compress(a) -> Certificate:
    from . import compressions as m
    if a.action == "sweep":
        return m.certify_paired_sweep(a.n, a.mode, a.count, a.seed, a.elapsed())
    if a.action == "counterexample":
        found = m.find_single_counterexample(a.op, a.n, a.seed)
        if found is None:
            raise BudgetExhausted("no counterexample found in the searched range")
        return m.certify_counterexample(found[0], found[1], a.op, a.elapsed())
    A, B = m.random_flow_instance(a.n, a.k, a.seed)
    return m.certify_flow(A, B, a.elapsed(), k=a.k)


def _rado(a) -> Certificate:
    from . import rado_modular as m
    if a.action == "d-table":
        return m.certify_d_table(a.max_k, a.r, a.elapsed())
    return m.certify_min_K(m.ModularInstance(a.r, tuple(a.a)), a.K_max, a.budget, a.elapsed())


def _product(a) -> Certificate:
    from . import product_partitions as m
    if a.action == "star":
        return m.certify_cover(m.star_construction(a.n), m.PARTITION, runtime_ms=a.elapsed())
    value, cover, status = m.exact_value(a.target, a.n, a.budget)
    if cover is None:
        raise BudgetExhausted("no cover found within budget")
    return m.certify_cover(cover, m.TARGETS[a.target][1], a.target, status, a.elapsed())


def _shatter(a) -> Certificate:
    from . import shattering as m
    if a.action == "verify":
        if a.example != "s5":
            raise UsageError(f"unknown example {a.example!r}")
        return m.certify_example(m.EXAMPLE_S5, 3, [(2, 3, 5), (1, 4, 5)], a.elapsed())
    size, P, status = m.min_family(a.n, a.k, a.t, a.budget, a.seed)
    return m.certify_family(P, a.k, a.t, status, a.elapsed())


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the certificate JSON here")
    p.add_argument("--verify", metavar="PATH",
                   help="verify a stored certificate and compare its value with this run")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--time-limit", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--params", nargs="*", default=[], metavar="K=V",
                   help="override any option, e.g. --params n=5 d=2")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="combwork", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, handler: Callable, actions: list[str]):
        p = sub.add_parser(name)
        p.add_argument("action", choices=actions)
        _common(p)
        p.set_defaults(handler=handler)
        return p

    p = add("cube-turan", _cube_turan, ["exact", "construct"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--kind", default="C13", choices=["weight_mod4_k0", "C13", "D2", "C2"])

    p = add("one-fact", _one_fact, ["r"])
    p.add_argument("--d", type=int, required=True)

    p = add("two-families", _two_families, ["construct", "exact"])
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--ground", type=int)

    p = add("graph-intersect", _graph_intersect, ["g"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--H", default="1-2,1-3,2-3", help="pattern edges, e.g. 1-2,2-3")

    p = add("no3", _no3, ["parabola", "greedy"])
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--order", default="row-major", choices=["row-major", "spiral", "random"])

    p = add("torus", _torus, ["sweep"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", default="exhaustive", choices=["exhaustive", "random"])
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--hull", default="k2", choices=["k2", "conjectured"])

    p = add("saturation", _saturation, ["min"])
    p.add_argument("--n", type=int, required=True)

    p = add("rainbow", _rainbow, ["cover"])
    p.add_argument("--n", type=int, required=True, help="complete graph K_n, first-fit colouring")

    p = add("antipodal", _antipodal, ["check", "average"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1, help="colour changes allowed; k+1 colours")
    p.add_argument("--w", type=int, default=1, help="band width for layered colourings")
    p.add_argument("--colouring", default="layered",
                   choices=["layered", "direction-partition", "random", "monochromatic"])

    p = add("compress", _compress, ["sweep", "counterexample", "flow"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", default="exhaustive", choices=["exhaustive", "random"])
    p.add_argument("--count", type=int, default=100000)
    p.add_argument("--op", default="C", choices=["C", "D"])
    p.add_argument("--k", type=int, default=0)

    p = add("rado", _rado, ["min-k", "d-table"])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=_int_list, default=[1, 1])
    p.add_argument("--K-max", dest="K_max", type=int, default=4)
    p.add_argument("--max-k", dest="max_k", type=int, default=3)

    p = add("product", _product, ["star", "exact"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", default="g", choices=["g", "h", "g_tilde"])

    p = add("shatter", _shatter, ["verify", "min"])
    p.add_argument("--example", default="s5")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("path")
    p.set_defaults(handler=None)
    return parser


def _apply_params(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    for item in args.params:
        if "=" not in item:
            raise UsageError(f"--params entries must be key=value, got {item!r}")
        key, val = item.split("=", 1)
        key = key.replace("-", "_")
        if not hasattr(args, key) or key in ("handler", "command", "params"):
            raise UsageError(f"unknown parameter {key!r}")
        old = getattr(args, key)
        try:
            if key == "a":
                val = _int_list(val)
            elif isinstance(old, bool):
                val = val.lower() in ("1", "true", "yes")
            elif isinstance(old, int) or (old is None and val.lstrip("-").isdigit()):
                val = int(val)
            elif isinstance(old, float):
                val = float(val)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"bad value for {key!r}: {val!r}") from exc
        setattr(args, key, val)


def _verify_file(path: str) -> int:
    try:
        cert = Certificate.load(path)
    except (OSError, ValueError, TypeError, VerificationError) as exc:
        print(f"FAIL {path}: unreadable certificate ({exc})")
        return EXIT_VERIFY
    ok, msg = verify(cert)
    print(f"{'OK' if ok else 'FAIL'} {cert.problem} value={cert.value} kind={cert.kind}: {msg}")
    return EXIT_OK if ok else EXIT_VERIFY


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.command == "verify":
            return _verify_file(args.path)
        _apply_params(args, parser)
        args.budget = SearchBudget(time_limit=args.time_limit, threads=args.threads, seed=args.seed)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"combwork: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"combwork: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    t0 = time.monotonic()
    args.elapsed = lambda: int((time.monotonic() - t0) * 1000)
    try:
        cert = args.handler(args)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UsageError as exc:
        print(f"combwork: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError) as exc:
        print(f"combwork: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cert.meta["seed"] = args.seed
    if args.out:
        cert.save(args.out)
    ok, msg = verify(cert)
    print(f"{cert.problem} kind={cert.kind} value={cert.value} verify={'ok' if ok else msg}")
    if not ok:
        return EXIT_VERIFY
    if args.verify:
        code = _verify_file(args.verify)
        if code:
            return code
        stored = Certificate.load(args.verify)
        if stored.problem != cert.problem or stored.value != cert.value:
            print(f"FAIL stored value {stored.value} differs from recomputed {cert.value}")
            return EXIT_VERIFY
    if cert.kind == "bound" and cert.meta.get("search_status", Status.BOUND.value) != Status.EXACT.value:
        return EXIT_BUDGET
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
