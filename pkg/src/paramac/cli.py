"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 internal bug-signal error (with a
JSON witness on stdout), 2 argument parse error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cartan import Weight, build_root_system
from .errors import ParamacError, PreconditionError
from .groupring import poly_to_json, render_latex, render_plain
from .macdonald import engine
from .verify import SUITES


def _parse_J(s: str | None, rank: int) -> tuple[int, ...]:
    """Comma-separated 1-based indices (the paper's {1..n}) -> 0-based tuple."""
    if not s:
        return ()
    out = []
    for part in s.split(","):
        i = int(part)
        if not 1 <= i <= rank:
            raise PreconditionError(f"J index {i} out of range 1..{rank}")
        out.append(i - 1)
    return tuple(sorted(set(out)))


def _parse_weight(s: str, rank: int) -> Weight:
    coords = tuple(int(x) for x in s.split(","))
    if len(coords) != rank:
        raise PreconditionError(f"weight needs {rank} coordinates, got {len(coords)}")
    return Weight(coords)


def _render(poly, fmt: str, meta: dict) -> str:
    if fmt == "plain":
        return render_plain(poly)
    if fmt == "latex":
        return render_latex(poly)
    out = dict(meta)
    out["terms"] = poly_to_json(poly)
    return json.dumps(out, indent=2)


def _cmd_poly(args, parasym: bool) -> int:
    rs = build_root_system(args.type)
    M = engine(str(rs.cartan_type))
    J = _parse_J(args.J, rs.rank)
    lam = _parse_weight(args.weight, rs.rank)
    result = M.parasym_E(J, lam) if parasym else M.nonsym_E(lam)
    poly = result.poly
    if args.t0:
        poly = M.specialize_E(result, "zero")
    elif args.tinf:
        poly = M.specialize_E(result, "infinity")
    meta = {"type": str(rs.cartan_type), "J": [i + 1 for i in J],
            "weight": list(lam.coords)}
    print(_render(poly, args.format, meta))
    return 0


def _cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    kwargs = {}
    if args.suite == "daha":
        kwargs = {"seed": args.seed, "count": args.count, "box": args.box}
    elif args.suite == "orders":
        kwargs = {"box": args.box}
    elif args.suite == "orthogonality":
        kwargs = {"N": args.N, "box": args.box, "seed": args.seed}
    elif args.suite == "specialization":
        kwargs = {"box": args.box, "N": args.N}
    elif args.suite == "characters":
        kwargs = {"q_max": args.qmax, "box": args.box}
    report = suite(args.type, **kwargs)
    if args.format == "plain":
        for c in report["checks"]:
            print(f"[{'PASS' if c['pass'] else 'FAIL'}] {c['name']}")
        print(f"suite {report['suite']} ({report['type']}): "
              f"{'PASS' if report['pass'] else 'FAIL'}")
    else:
        print(json.dumps(report, indent=2, default=str))
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paramac",
                                description="Exact Macdonald polynomials, Cherednik "
                                            "pairings, and parahoric module characters.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--type", required=True, help='Cartan type, e.g. "A2"')
        sp.add_argument("--format", choices=("plain", "json", "latex"), default="plain")

    for name in ("nonsym", "parasym"):
        sp = sub.add_parser(name, help=f"compute a {name}metric Macdonald polynomial")
        common(sp)
        sp.add_argument("--weight", required=True, help="comma-separated coordinates")
        sp.add_argument("--J", default="", help="comma-separated 1-based indices")
        sp.add_argument("--t0", action="store_true", help="specialize at t=0")
        sp.add_argument("--tinf", action="store_true", help="specialize at t=infinity")

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    common(sp)
    sp.add_argument("--N", type=int, default=8, help="q-truncation order")
    sp.add_argument("--qmax", type=int, default=5, help="character q-degree bound")
    sp.add_argument("--depth", type=int, default=8, help="character weight depth")
    sp.add_argument("--box", type=int, default=2, help="weight-coordinate box radius")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=50, help="random polynomials per relation")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("nonsym", "parasym"):
            return _cmd_poly(args, parasym=args.command == "parasym")
        return _cmd_verify(args)
    except ParamacError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
