"""Command-line front end.  Every command only parses, dispatches and prints."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import checks
from .algebra import Polynomial
from .errors import (
    IllegalTwist,
    IllegalType,
    MotiveKitError,
    NotATorsionPrime,
    ParseError,
)
from .jinv import (
    enumerate_admissible,
    group_torsion_primes,
    j_profile,
    ring_poincare,
    upper_poincare,
)
from .motive import decompose, verify_decomposition
from .poincare import GroupSpec, SimpleFactor, flag_poincare
from .rootsys import DynkinType, invariant_degrees, outer_degree_data, torsion_primes

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- group specification grammar ------------------------------------------------
#   product := term ("x" term)*
#   term    := "R" digits "(" term ")" | factor
#   factor  := ["2" | "3"] FAMILY digits


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def offset(self, i: int | None = None) -> int:
        return len(self.text[: self.i if i is None else i].encode("utf-8"))

    def fail(self, msg: str, i: int | None = None):
        raise ParseError(msg, self.offset(i))

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of input"
            self.fail(f"expected {ch!r}, got {got}")
        self.i += 1

    def digits(self) -> int:
        start = self.i
        while self.peek().isascii() and self.peek().isdigit():
            self.i += 1
        if start == self.i:
            self.fail("expected a number")
        return int(self.text[start:self.i])

    def product(self) -> list[tuple[int, SimpleFactor]]:
        out = [self.term()]
        while self.peek() == "x":
            self.i += 1
            out.append(self.term())
        if self.i != len(self.text):
            self.fail(f"unexpected {self.peek()!r}")
        return out

    def term(self) -> tuple[int, SimpleFactor]:
        if self.peek() == "R":
            start = self.i
            self.i += 1
            m = self.digits()
            if m < 1:
                self.fail("Weil degree must be positive", start + 1)
            self.expect("(")
            inner_m, sf = self.term()
            self.expect(")")
            return m * inner_m, sf
        return 1, self.factor()

    def factor(self) -> SimpleFactor:
        start = self.i
        twist = 1
        if self.peek() in ("2", "3"):
            twist = int(self.peek())
            self.i += 1
        fam = self.peek()
        if not (fam.isascii() and fam.isalpha() and fam.isupper()):
            self.fail("expected a Dynkin family letter A-G")
        self.i += 1
        rank = self.digits()
        try:
            return SimpleFactor(DynkinType(fam, rank), twist)
        except (IllegalType, IllegalTwist) as exc:
            self.fail(str(exc), start)


def parse_group_spec(s: str, p: int | None = None) -> GroupSpec:
    """Parse e.g. ``"2E6"``, ``"R2(A2)"`` or ``"R2(2A3)x2D5"``.

    With ``p`` given, it must be a torsion prime of the resulting group.
    """
    if not s:
        raise ParseError("empty group specification", 0)
    factors = _Parser(s).product()
    gs = GroupSpec(tuple(factors))  # mixed primes are rejected here
    if p is None:
        return gs
    if p not in group_torsion_primes(gs):
        raise NotATorsionPrime(f"{p} is not a torsion prime of {gs}")
    return GroupSpec(gs.factors, p)


def parse_type(s: str) -> SimpleFactor:
    gs = parse_group_spec(s)
    if len(gs.factors) != 1 or gs.factors[0][0] != 1:
        raise UsageError(f"--type expects a single absolutely simple type, got {s!r}")
    return gs.factors[0][1]


def parse_int_list(s: str | None, what: str) -> tuple[int, ...]:
    if s is None or not s.strip():
        return ()
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of integers, got {s!r}") from None


def parse_psi(s: str | None, n_factors: int) -> list[frozenset[int]]:
    if s is None or s == "":
        return [frozenset()] * n_factors
    parts = s.split(";")
    if len(parts) != n_factors:
        raise UsageError(f"--psi has {len(parts)} ';'-separated parts for {n_factors} factors")
    return [frozenset(parse_int_list(part, "--psi")) for part in parts]


def parse_isogeny(s: str, n_factors: int) -> str | list[str]:
    parts = s.split(";")
    if len(parts) == 1:
        return parts[0]
    if len(parts) != n_factors:
        raise UsageError(f"--isogeny has {len(parts)} parts for {n_factors} factors")
    return parts


def infer_prime(gs: GroupSpec, p: int | None) -> int | None:
    if p is not None:
        return p
    primes = gs.involved_primes()
    return min(primes) if primes else None


# -- output -------------------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, Polynomial):
        return obj.to_json()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


def _ints(xs) -> str:
    return ",".join(str(x) for x in xs)


def _poly_lines(name: str, poly: Polynomial) -> list[str]:
    return [f"{name}={poly}", f"{name}.coeffs=[{_ints(poly.coeffs)}]", f"{name}(1)={poly(1)}"]


# -- commands -----------------------------------------------------------------------


def cmd_degrees(args) -> tuple[dict, list[str]]:
    sf = parse_type(args.type)
    if sf.twist == 1:
        e = invariant_degrees(sf.dt)
        return {"type": str(sf), "degrees": e}, [f"type={sf}", f"degrees=[{_ints(e)}]"]
    od = outer_degree_data(sf.dt, sf.twist)
    data = {"type": str(sf), "plus": list(od.plus), "minus": list(od.minus)}
    return data, [f"type={sf}", f"plus=[{_ints(od.plus)}] minus=[{_ints(od.minus)}]"]


def cmd_torsion_primes(args) -> tuple[dict, list[str]]:
    sf = parse_type(args.type)
    ps = sorted(torsion_primes(sf.dt, sf.twist))
    return {"type": str(sf), "primes": ps}, [f"type={sf}", f"primes=[{_ints(ps)}]"]


def cmd_poincare(args) -> tuple[dict, list[str]]:
    gs = parse_group_spec(args.group, args.p)
    gs = GroupSpec(gs.factors, infer_prime(gs, args.p))
    psi = parse_psi(args.psi, len(gs.factors))
    poly = flag_poincare(gs, psi)
    data = {"group": str(gs), "psi": [sorted(x) for x in psi], "poincare": poly, "degree": poly.degree}
    return data, [f"group={gs}", *_poly_lines("poincare", poly)]


def _profile(args):
    gs = parse_group_spec(args.group, args.p)
    return gs, j_profile(gs, parse_isogeny(args.isogeny, len(gs.factors)))


def cmd_jinv_profile(args) -> tuple[dict, list[str]]:
    gs, prof = _profile(args)
    ring = ring_poincare(prof)
    lines = [f"group={gs} p={prof.p} r={prof.r}"]
    for e in prof.entries:
        lines.append(f"entry d={e.d} k={e.k} label={e.label} factor={e.factor}")
    for rule in prof.rules:
        lines.append(f"rule {dumps(rule)}")
    lines += _poly_lines("ring", ring)
    return {"group": str(gs), "profile": prof, "ring": ring}, lines


def cmd_jinv_enumerate(args) -> tuple[dict, list[str]]:
    gs, prof = _profile(args)
    tuples = enumerate_admissible(prof, args.cap)
    lines = [f"group={gs} p={prof.p} count={len(tuples)}"] + [f"j=({_ints(j)})" for j in tuples]
    return {"group": str(gs), "count": len(tuples), "tuples": [list(j) for j in tuples]}, lines


def cmd_upper_poly(args) -> tuple[dict, list[str]]:
    gs, prof = _profile(args)
    j = parse_int_list(args.j, "--j")
    upper = upper_poincare(prof, j)
    return {"group": str(gs), "j": list(j), "upper": upper}, [f"group={gs} j=({_ints(j)})", *_poly_lines("upper", upper)]


def cmd_decompose(args) -> tuple[dict, list[str]]:
    gs, prof = _profile(args)
    j = parse_int_list(args.j, "--j")
    psi = parse_psi(args.psi, len(gs.factors))
    total = flag_poincare(gs, psi)
    upper = upper_poincare(prof, j)
    tm = decompose(total, upper)
    ok = verify_decomposition(total, upper, tm)
    data = {
        "group": str(gs),
        "j": list(j),
        "total": total,
        "upper": upper,
        "twists": tm,
        "summands": tm.summands,
        "max_twist": tm.max_twist,
        "verified": ok,
    }
    lines = [
        f"group={gs} p={prof.p} j=({_ints(j)})",
        f"total.coeffs=[{_ints(total.coeffs)}]",
        f"upper.coeffs=[{_ints(upper.coeffs)}]",
        "twists=" + ",".join(f"{i}^{c}" if c > 1 else str(i) for i, c in tm.pairs),
        f"summands={tm.summands} max_twist={tm.max_twist} verified={str(ok).lower()}",
    ]
    return data, lines


def _check_report(results: Sequence[checks.CheckResult]) -> tuple[dict, list[str], bool]:
    ok = all(r.ok for r in results)
    data = {"ok": ok, "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}
    return data, [r.line() for r in results], ok


def cmd_oracle_check(args):
    if args.type:
        labels = [args.type]
    else:
        labels = list(checks.INNER_ORACLE_SUITE) + list(checks.OUTER_ORACLE_SUITE)
    psi = frozenset(parse_int_list(args.psi, "--psi"))
    if psi and len(labels) != 1:
        raise UsageError("--psi requires --type")
    for label in labels:
        parse_type(label)
    results = [checks.oracle_check(label, psi, args.cap) for label in labels]
    return _check_report(results)


def cmd_verify_tables(args):
    data, lines, ok = _check_report(checks.verify_tables())
    if not args.json:
        lines = checks.render_tables().splitlines() + lines
    data["tables"] = checks.render_tables()
    return data, lines, ok


COMMANDS = {
    "degrees": cmd_degrees,
    "torsion-primes": cmd_torsion_primes,
    "poincare": cmd_poincare,
    "jinv-profile": cmd_jinv_profile,
    "jinv-enumerate": cmd_jinv_enumerate,
    "upper-poly": cmd_upper_poly,
    "decompose": cmd_decompose,
    "oracle-check": cmd_oracle_check,
    "verify-tables": cmd_verify_tables,
}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON output")
    parser = _ArgumentParser(prog="motivekit", description="Motives of twisted flag varieties.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    for name in ("degrees", "torsion-primes"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--type", required=True, help="e.g. E6, 2E6, 3D4")

    sp = sub.add_parser("poincare", parents=[common])
    sp.add_argument("--group", required=True)
    sp.add_argument("--psi", help="retained nodes, e.g. 2,3,4; ';' between factors")
    sp.add_argument("--p", type=int)
    sp.add_argument("--normed", action="store_true", help="accepted for symmetry; outer factors are always normed")

    def with_profile(name):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--group", required=True)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--isogeny", default="ad", help="ad, sc, so, hs or mu<m>; ';' between factors")
        return sp

    with_profile("jinv-profile")
    with_profile("jinv-enumerate").add_argument("--cap", type=int, default=10**6)
    with_profile("upper-poly").add_argument("--j", required=True)
    sp = with_profile("decompose")
    sp.add_argument("--j", required=True)
    sp.add_argument("--psi")

    sp = sub.add_parser("oracle-check", parents=[common])
    sp.add_argument("--type", help="default: the built-in inner and outer suites")
    sp.add_argument("--psi")
    sp.add_argument("--cap", type=int, help="max Weyl group order (default from MOTIVEKIT_ORACLE_CAP)")

    sub.add_parser("verify-tables", parents=[common])
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    want_json = "--json" in (argv if argv is not None else sys.argv[1:])
    try:
        args = parser.parse_args(argv)
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except MotiveKitError as exc:
        if want_json:
            print(dumps({"error": {"code": exc.code, "message": str(exc)}}), file=out)
        print(f"error [{exc.code}]: {exc}", file=err)
        return EXIT_DOMAIN
    if len(result) == 3:
        data, lines, ok = result
    else:
        (data, lines), ok = result, True
    if args.json:
        print(dumps(data), file=out)
    else:
        print("\n".join(lines), file=out)
    return EXIT_OK if ok else EXIT_DOMAIN


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
