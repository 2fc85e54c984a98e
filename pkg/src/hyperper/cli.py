"""Command-line front end.

Every subcommand reads JSON (or flags) and writes deterministic JSON —
keys sorted, compact separators, numeric arrays ascending — or DOT.
Exit codes: 0 success, 1 malformed input, 2 enumeration cap exceeded,
3 a checked property reported false.  The HYPERPER_CAP environment
variable overrides the enumeration caps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bratteli, covers, elementary, hyperspace, pqsystem
from .errors import CapExceeded, InsufficientDepth, InvariantViolation
from .finite import FiniteSystem, periods, random_permutation, random_system
from .algebra import (PeriodSet, divisor_closure, lcm_closure,
                      per_finite_formula, per_product_formula,
                      per_symmetric_formula, sharkovskii_forced,
                      sharkovskii_forces)
from .rng import SeedStream

DEFAULT_CAP = 1 << 16


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so exit codes stay ours."""

    def error(self, message):
        raise _UsageError(message)


def _cap() -> int:
    raw = os.environ.get("HYPERPER_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        raise _UsageError(f"HYPERPER_CAP must be an integer, got {raw!r}")
    if value < 1:
        raise _UsageError("HYPERPER_CAP must be >= 1")
    return value


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    _write(text, out)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read_system(path: str) -> FiniteSystem:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return FiniteSystem.loads(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise _UsageError(f"expected comma-separated integers, got {text!r}")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_periods(args) -> int:
    system = _read_system(args.input)
    cap = _cap()
    if args.mode in ("symmetric", "product") and args.size is None:
        raise _UsageError(f"--mode {args.mode} requires --size")
    out = {"per_f": sorted(periods(system))}
    if args.mode == "product":
        found, method = hyperspace.per_product(system, args.size, cap)
        out["per_induced"] = found.sorted_values()
        out["method"] = method
    else:
        found = hyperspace.per_induced(system, args.mode, args.size, cap)
        out["per_induced"] = found.sorted_values()
    _emit(out, args.out)
    return 0


def _cmd_algebra(args) -> int:
    if args.action == "forces":
        if args.p is None or args.q is None:
            raise _UsageError("forces requires --p and --q")
        _emit({"forces": sharkovskii_forces(args.p, args.q)}, args.out)
        return 0
    if args.action == "forced":
        if args.p is None:
            raise _UsageError("forced requires --p")
        _emit(sharkovskii_forced(args.p).to_json(), args.out)
        return 0
    if args.set is None:
        raise _UsageError(f"{args.action} requires --set")
    values = PeriodSet.finite(_int_list(args.set))
    if args.action in ("per-symmetric", "per-product") and args.n is None:
        raise _UsageError(f"{args.action} requires --n")
    result = {
        "divisor-closure": lambda: divisor_closure(values),
        "lcm-closure": lambda: lcm_closure(values),
        "per-finite": lambda: per_finite_formula(values),
        "per-symmetric": lambda: per_symmetric_formula(values, args.n),
        "per-product": lambda: per_product_formula(values, args.n),
    }[args.action]()
    _emit(result.to_json(), args.out)
    return 0


def _cmd_profile(args) -> int:
    if args.orbit == "odometer":
        orbit = elementary.OdometerOrbit(args.digits, args.base)
    elif args.orbit == "periodic":
        orbit = elementary.PeriodicOrbit(tuple(_int_list(args.cycle)), args.start)
    else:
        orbit = elementary.WanderingOrbit(args.origin)
    profile = elementary.per_profile(orbit, args.k_max, args.depth, args.horizon)
    unknown = any(v is elementary.TriState.UNKNOWN for v in profile.values())
    closed = None if unknown else elementary.closure_property_check(profile)
    _emit({
        "orbit": args.orbit,
        "profile": [[k, profile[k].value] for k in sorted(profile)],
        "closure_check": closed,
    }, args.out)
    return 0 if closed in (True, None) else 3


def _cmd_atm(args) -> int:
    cap = _cap()
    if args.action == "build":
        _emit(covers.build_atm(args.depth).to_json(), args.out)
        return 0
    if args.action == "validate":
        tower = covers.build_atm(args.depth)
        levels = []
        ok = True
        for lvl in range(args.depth):
            report = covers.validate_cover(covers.atm_cover(tower, lvl, cap))
            levels.append({"level": lvl, **report.to_json()})
            ok = ok and report.all_ok
        _emit({"levels": levels, "all_ok": ok}, args.out)
        return 0 if ok else 3
    if args.action == "witness":
        tower = covers.build_atm(max(args.depth, args.mod + 1))
        ok = covers.minimality_witness(tower, args.mod)
        _emit({"mod": args.mod, "ok": ok}, args.out)
        return 0 if ok else 3
    # coverage
    need = args.level + args.mod * args.budget
    depth = max(args.depth, need)
    tower = covers.build_atm(depth)
    start = covers.random_thread(tower, depth, SeedStream(args.seed))
    seen = covers.orbit_coverage(tower, start, args.level, args.mod, args.budget)
    _emit({
        "level": args.level,
        "mod": args.mod,
        "budget": args.budget,
        "covered": sorted(seen),
        "of": tower.sizes[args.level],
    }, args.out)
    return 0


def _cmd_pq(args) -> int:
    window = args.budget * args.q * args.m_max
    fix_depth = args.p + max(args.level, 1) + 2
    depth = args.depth
    if depth is None:
        depth = fix_depth
        while covers.build_atm(depth).sizes[depth] < window + 4:
            depth += 1
    tower = covers.build_atm(depth)
    vertices = tuple(_int_list(args.vertices)) if args.vertices else None
    system = pqsystem.make_pq(tower, args.p, args.q, args.level, vertices)
    report = pqsystem.pq_verify(
        system, level=args.level, budget=args.budget,
        m_values=tuple(range(1, args.m_max + 1)),
        starts=args.starts, seed=args.seed)
    _emit(report.to_json(), args.out)
    return 0 if report.all_ok else 3


def _cmd_bv(args) -> int:
    diag = bratteli.build_atm_bv(args.depth)
    if args.action == "build":
        _emit(bratteli.bv_json(diag), args.out)
        return 0
    if args.action == "heights":
        level = args.depth if args.level is None else args.level
        _emit(bratteli.tower_heights(diag, level), args.out)
        return 0
    if args.action == "vershik":
        vertex = args.vertex or f"R{args.depth}"
        chain = bratteli.successor_chain(diag, vertex, _cap())
        height = bratteli.tower_heights(diag, int(vertex[1:]))[vertex]
        _emit({
            "vertex": vertex,
            "height": height,
            "count": len(chain),
            "paths": [p.to_json() for p in chain],
        }, args.out)
        return 0 if len(chain) == height else 3
    # crosscheck
    level = args.depth - 1 if args.level is None else args.level
    tower = covers.build_atm(max(args.depth, level + 1))
    ok = bratteli.cross_check_covers(diag, tower, level, _cap())
    _emit({"level": level, "ok": ok}, args.out)
    return 0 if ok else 3


def _cmd_gen(args) -> int:
    make = random_permutation if args.permutation else random_system
    _emit(make(args.seed, args.n).to_json(), args.out)
    return 0


def _cmd_export(args) -> int:
    cap = _cap()
    fmt = "dot" if args.dot else args.format
    if args.target == "tower":
        tower = covers.build_atm(args.depth)
        if fmt == "dot":
            upto = args.depth if args.upto is None else args.upto
            _write(covers.tower_dot(tower, upto, cap), args.out)
        else:
            _emit(tower.to_json(), args.out)
    else:
        diag = bratteli.build_atm_bv(args.depth)
        if fmt == "dot":
            _write(bratteli.bv_dot(diag), args.out)
        else:
            _emit(bratteli.bv_json(diag), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperper",
                     description="Periods of induced maps, cover towers, "
                                 "and Bratteli-Vershik models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("periods", help="period sets of a finite system")
    p.add_argument("input", nargs="?", default="-",
                   help="system JSON path, - for stdin")
    p.add_argument("--mode", choices=("full", "symmetric", "product"),
                   default="full")
    p.add_argument("--size", type=int, help="bound for symmetric/product modes")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_periods)

    p = sub.add_parser("algebra", help="closure operators and period formulas")
    p.add_argument("action", choices=("divisor-closure", "lcm-closure",
                                      "per-finite", "per-symmetric",
                                      "per-product", "forces", "forced"))
    p.add_argument("--set", help="comma-separated base periods")
    p.add_argument("--n", type=int, help="size bound for per-symmetric/per-product")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_algebra)

    p = sub.add_parser("profile", help="elementary period profile of an orbit")
    p.add_argument("--orbit", choices=("odometer", "periodic", "wandering"),
                   required=True)
    p.add_argument("--digits", type=int, default=8)
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--cycle", default="0,1", help="cycle points, comma-separated")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--origin", type=int, default=0)
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--horizon", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("atm", help="build and verify the cover tower")
    p.add_argument("action", choices=("build", "validate", "witness", "coverage"))
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--mod", type=int, default=1)
    p.add_argument("--budget", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_atm)

    p = sub.add_parser("pq", help="verify the labelled skew system")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--starts", type=int, default=5)
    p.add_argument("--seed", type=int, default=2026)
    p.add_argument("--depth", type=int, help="tower depth override")
    p.add_argument("--vertices", help="level cylinders of B, comma-separated")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_pq)

    p = sub.add_parser("bv", help="ordered diagram and successor dynamics")
    p.add_argument("action", choices=("build", "vershik", "heights", "crosscheck"))
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--level", type=int)
    p.add_argument("--vertex")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bv)

    p = sub.add_parser("gen", help="seeded random finite system")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--permutation", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("export", help="DOT or JSON dumps of built structures")
    p.add_argument("target", choices=("tower", "bv"))
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--upto", type=int, help="deepest level drawn (tower only)")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--dot", action="store_true", help="shorthand for --format dot")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
