"""Command line front end: ``rkt-lab <subcommand> [flags]``.

Exit status: 0 clean, 2 a violation finding exists, 3 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from .dynamics import MonomialMap, degree_sequence, repolarization_check, submult_check
from .errors import RktLabError
from .exact import IntMatrix
from .harness import STATEMENTS, CampaignConfig, run_campaign
from .inequalities import InequalityReport, bezout_check, rkt_check
from .intersection import DivisorSystem, IntersectionQuery, intersection_number
from .okounkov import (
    MultipointFlagModel,
    ToricFlag,
    empirical_okounkov,
    multipoint_bodies,
    okounkov_transform,
)
from .polytope import Polytope, standard_simplex, volume
from .surface import NefTriple, SurfaceLattice, equality_case_check, rkt_surface_check

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 2, 3


def _load(path: str):
    with open(path) as fh:
        return json.load(fh)


def _enc(x):
    return x if isinstance(x, int) else str(x)


def _vector(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _emit_campaign(args, statement: str) -> int:
    cfg = CampaignConfig(
        statement=statement,
        dim=args.dim,
        count=args.count,
        seed=args.seed,
        k=args.k,
        vertex_budget=args.vertex_budget,
        bound=args.bound,
        r=getattr(args, "r", None),
        out=args.out,
    )
    res = run_campaign(cfg)
    if not args.out:
        sys.stdout.write(res.csv_text())
    print(json.dumps(res.summary()), file=sys.stderr)
    return res.exit_code


def _emit_report(rep: InequalityReport) -> int:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["name", "n", "k", "lhs", "rhs", "slack", "holds", "strict", "seed"])
    w.writerow([rep.name, rep.n, rep.k, _enc(rep.lhs), _enc(rep.rhs), _enc(rep.slack),
                str(rep.holds).lower(), str(rep.strict).lower(),
                "" if rep.seed is None else rep.seed])
    return EXIT_OK if rep.holds else EXIT_VIOLATION


def cmd_mv(args) -> int:
    system = DivisorSystem.from_json(_load(args.system))
    print(_enc(intersection_number(system, IntersectionQuery.parse(args.query))))
    return EXIT_OK


def cmd_rkt(args) -> int:
    if args.system:
        system = DivisorSystem.from_json(_load(args.system))
        d = system.divisors
        k = args.k if args.k is not None else 1
        return _emit_report(rkt_check(d["A"], d["B"], d["C"], k))
    return _emit_campaign(args, "rkt-general" if args.general else "rkt")


def cmd_bezout(args) -> int:
    if args.system:
        system = DivisorSystem.from_json(_load(args.system))
        d = system.divisors
        names = [k for k in system.names if k != "H"]
        exps = [int(x) for x in args.exponents.split(",")] if args.exponents else [1] * len(names)
        res = bezout_check(d["H"], [d[k] for k in names], exps)
        code = _emit_report(res.last)
        _emit_report(res.best)
        return code if res.best.holds else EXIT_VIOLATION
    return _emit_campaign(args, "bezout")


def cmd_okounkov(args) -> int:
    p = Polytope.from_json(_load(args.polytope))
    if args.multipoint:
        doc = _load(args.multipoint)
        flags = tuple(ToricFlag(tuple(f["vertex"]), tuple(tuple(b) for b in f["basis"]))
                      for f in doc["flags"])
        levels = _levels(args.level)
        rows = []
        bodies = []
        for m in levels:
            bodies = multipoint_bodies(MultipointFlagModel(m, flags), p)
            rows.append((m, sum(volume(b) for b in bodies if b is not None)))
        print(json.dumps({"bodies": [b.to_json() if b else None for b in bodies]}))
        _write_conv(args, rows)
        return EXIT_OK
    vertex = _vector(args.flag_vertex)
    basis = [_vector(r) for r in args.flag_basis.split(";")] if args.flag_basis else None
    flag = ToricFlag.at_vertex(p, vertex, basis)
    _, body = okounkov_transform(p, flag)
    rows = [(m, volume(empirical_okounkov(p, flag, m))) for m in _levels(args.level)]
    print(json.dumps({"body": body.to_json(), "volume": _enc(volume(body))}))
    _write_conv(args, rows)
    return EXIT_OK


def _levels(top: int) -> list[int]:
    out, m = [], 1
    while m < top:
        out.append(m)
        m *= 2
    return out + [top]


def _write_conv(args, rows) -> None:
    text = "m,volume\n" + "".join(f"{m},{_enc(v)}\n" for m, v in rows)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "convergence.csv").write_text(text)
    else:
        sys.stderr.write(text)


def cmd_dyndeg(args) -> int:
    f = MonomialMap(IntMatrix.parse(args.matrix))
    h = Polytope.from_json(_load(args.polytope)) if args.polytope else standard_simplex(f.dim)
    if args.check:
        other = args.other
        verdict = EXIT_OK
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["name", "i", "lhs", "rhs", "slack", "holds"])
        for i in range(h.dim + 1):
            if args.check == "submult":
                g = MonomialMap(IntMatrix.parse(other)) if other else f
                rep = submult_check(f, g, h, i)
            else:
                l = Polytope.from_json(_load(other)) if other else standard_simplex(h.dim)
                rep = repolarization_check(f, h, l, i)
            w.writerow([rep.name, i, _enc(rep.lhs), _enc(rep.rhs), _enc(rep.slack),
                        str(rep.holds).lower()])
            if not rep.holds:
                verdict = EXIT_VIOLATION
        return verdict
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["t", "i", "degree"])
    for row in degree_sequence(f, h, args.iters):
        w.writerow([row["t"], row["i"], _enc(row["degree"])])
    return EXIT_OK


def cmd_surface(args) -> int:
    obj = _load(args.input)
    lat = SurfaceLattice.from_json({"gram": obj["gram"]})
    triple = NefTriple(*(lat._vec([Fraction(x) for x in obj[k]]) for k in "ABC"))
    rep = rkt_surface_check(lat, triple)
    eq = equality_case_check(lat, triple)
    out = rep.to_json()
    out["equality_case"] = {
        "equality": eq.equality,
        "conditions": eq.conditions,
        "direction": eq.direction,
        "consistent": eq.consistent,
        "s": None if eq.s is None else _enc(eq.s),
        "t": None if eq.t is None else _enc(eq.t),
        "residual": None if eq.residual is None else [_enc(x) for x in eq.residual],
        "residual_trivial": eq.residual_trivial,
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK if rep.holds else EXIT_VIOLATION


def cmd_fuzz(args) -> int:
    return _emit_campaign(args, args.statement)


def _campaign_flags(p: argparse.ArgumentParser, k_help: str = "k (default: cycle over all)"):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--k", type=int, default=None, help=k_help)
    p.add_argument("--vertex-budget", type=int, default=None)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--out", default=None, help="directory for CSV, summary and findings")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rkt-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mv", help="intersection number of a divisor system")
    p.add_argument("--system", required=True, help="divisor system JSON")
    p.add_argument("--query", required=True, help='e.g. "A^2*B*C"')
    p.set_defaults(func=cmd_mv)

    p = sub.add_parser("rkt-check", help="reverse KT inequality (single system or campaign)")
    p.add_argument("--system", help="JSON with divisors A, B, C")
    p.add_argument("--general", action="store_true", help="campaign over B_1..B_k, C_1..C_{n-k}")
    _campaign_flags(p)
    p.set_defaults(func=cmd_rkt)

    p = sub.add_parser("bezout", help="Bezout-type bound (single system or campaign)")
    p.add_argument("--system", help="JSON with divisor H and A_1..A_r")
    p.add_argument("--exponents", help="comma separated a_i for --system")
    p.add_argument("--r", type=int, default=None)
    _campaign_flags(p)
    p.set_defaults(func=cmd_bezout)

    p = sub.add_parser("okounkov", help="Okounkov body and level-m convergence")
    p.add_argument("--polytope", required=True)
    p.add_argument("--flag-vertex", default=None, help='e.g. "0,0"')
    p.add_argument("--flag-basis", default=None, help='e.g. "1,0;0,1"')
    p.add_argument("--level", type=int, default=8)
    p.add_argument("--multipoint", default=None, help='JSON {"flags": [{vertex, basis}, ...]}')
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_okounkov)

    p = sub.add_parser("dyndeg", help="degrees of a monomial map")
    p.add_argument("--matrix", required=True, help='exponent matrix "a,b;c,d"')
    p.add_argument("--polytope", default=None, help="polarization (default: standard simplex)")
    p.add_argument("--iters", type=int, default=5)
    p.add_argument("--check", choices=["submult", "repolarize"], default=None)
    p.add_argument("--other", default=None,
                   help="second matrix (submult) or polytope file L (repolarize)")
    p.set_defaults(func=cmd_dyndeg)

    p = sub.add_parser("surface-eq", help="surface equality case for {gram, A, B, C}")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("fuzz", help="seeded campaign for any statement")
    p.add_argument("--statement", choices=STATEMENTS, default="rkt")
    p.add_argument("--r", type=int, default=None)
    _campaign_flags(p, "k or i (default: cycle)")
    p.set_defaults(func=cmd_fuzz)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "okounkov" and not args.multipoint and not args.flag_vertex:
        print("rkt-lab: --flag-vertex or --multipoint is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (RktLabError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"rkt-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
