"""Self-checks of the stored tables and closed-form vs. oracle comparisons."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .algebra import exact_div, prime_factors
from .errors import NotDivisible, UnknownRow
from .jinv import factor_profile, ring_poincare
from .poincare import GroupSpec, SimpleFactor, borel_poincare, flag_poincare
from .rootsys import (
    TORSION_INNER,
    TORSION_OUTER,
    DEGREE_TABLE,
    OUTER_DEGREE_TABLE,
    DynkinType,
    cartan_matrix,
    folded_type,
    invariant_degrees,
    outer_degree_data,
    positive_roots,
    torsion_primes,
)
from .weyl import length_generating_function, twisted_sigma, weyl_order

INNER_ORACLE_SUITE = ("A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "D4", "D5", "G2", "F4", "E6")
OUTER_ORACLE_SUITE = ("2A2", "2A3", "2A4", "2A5", "2D4", "2D5", "3D4", "2E6")

ISOGENY_HINTS = ("ad", "sc", "so", "hs")


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


def sample_types(max_classical_rank: int = 10) -> list[DynkinType]:
    out = []
    for fam, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 3)):
        out += [DynkinType(fam, n) for n in range(lo, max_classical_rank + 1)]
    out += [DynkinType("E", n) for n in (6, 7, 8)] + [DynkinType("F", 4), DynkinType("G", 2)]
    return out


def outer_types(max_rank: int = 10) -> list[tuple[DynkinType, int]]:
    out = [(DynkinType("A", n), 2) for n in range(2, max_rank + 1)]
    out += [(DynkinType("D", n), 2) for n in range(3, max_rank + 1)]
    return out + [(DynkinType("D", 4), 3), (DynkinType("E", 6), 2)]


_OUTER_LABELS = {("A", 2): "2A_m", ("D", 2): "2D_m", ("E", 2): "2E6", ("D", 3): "3D4"}


def render_tables() -> str:
    lines = ["Torsion primes"]
    for key, (text, _) in TORSION_INNER.items():
        lines.append(f"  {key:<5} {text}")
    for (fam, tw), text in TORSION_OUTER.items():
        lines.append(f"  {_OUTER_LABELS[fam, tw]:<5} {text}")
    lines.append("Degrees of fundamental invariants")
    for key, (text, _) in DEGREE_TABLE.items():
        lines.append(f"  {key:<5} {text}")
    lines.append("Degrees of fundamental invariants (outer type)")
    for (fam, tw), (folded, plus, minus, _) in OUTER_DEGREE_TABLE.items():
        lines.append(f"  {_OUTER_LABELS[fam, tw]:<5} folded={folded}; plus: {plus}; minus: {minus}")
    return "\n".join(lines)


def _rows_primes(sf: SimpleFactor) -> set[int]:
    """Primes for which some table row exists for this factor."""
    found = set()
    hints = ISOGENY_HINTS + tuple(f"mu{m}" for m in range(2, sf.dt.rank + 2))
    for p in range(2, 14):
        if prime_factors(p) != [p]:
            continue
        for hint in hints:
            try:
                factor_profile(sf, p, hint)
            except UnknownRow:
                continue
            found.add(p)
            break
    return found


def check_torsion_primes() -> CheckResult:
    bad = []
    for dt in sample_types():
        if set(torsion_primes(dt)) != _rows_primes(SimpleFactor(dt)):
            bad.append(str(dt))
    for dt, tw in outer_types():
        sf = SimpleFactor(dt, tw)
        if set(torsion_primes(dt, tw)) != {tw} or _rows_primes(sf) != {tw}:
            bad.append(str(sf))
    return CheckResult("torsion primes match the J-invariant rows", not bad, ", ".join(bad))


def check_degrees() -> CheckResult:
    bad = []
    for dt in sample_types():
        e = invariant_degrees(dt)
        cartan = cartan_matrix(dt)
        n_pos = len(positive_roots(cartan))
        coxeter = 2 * n_pos // dt.rank
        ok = len(e) == dt.rank and sum(x - 1 for x in e) == n_pos and max(e) == coxeter
        if dt.rank <= 4:
            prod = 1
            for x in e:
                prod *= x
            ok = ok and prod == len(_oracle_elements(cartan))
        if not ok:
            bad.append(str(dt))
    return CheckResult("degrees vs. root counts and group orders", not bad, ", ".join(bad))


def _oracle_elements(cartan):
    from .weyl import weyl_enumerate

    return weyl_enumerate(cartan)


def check_outer_degrees() -> CheckResult:
    bad = []
    for dt, tw in outer_types():
        od = outer_degree_data(dt, tw)
        if Counter(od.plus) + Counter(od.minus) != Counter(invariant_degrees(dt)):
            bad.append(f"{tw}{dt} union")
        if sorted(od.plus) != invariant_degrees(folded_type(dt, tw)):
            bad.append(f"{tw}{dt} folded")
    return CheckResult("outer degrees: plus+minus = inner, plus = folded", not bad, ", ".join(bad))


def check_outer_rows() -> CheckResult:
    bad = []
    count = 0
    for dt, tw in outer_types(12):
        sf = SimpleFactor(dt, tw)
        prof = factor_profile(sf, tw)
        count += 1
        try:
            q = exact_div(borel_poincare(sf), ring_poincare(prof))
            if min(q.coeffs) < 0:
                bad.append(str(sf))
        except NotDivisible:
            bad.append(str(sf))
    return CheckResult(
        "outer rows: ring polynomials divide the normed Borel polynomials", not bad,
        ", ".join(bad) if bad else f"{count} rows",
    )


def check_inner_rows() -> CheckResult:
    bad = []
    count = 0
    for dt in sample_types():
        sf = SimpleFactor(dt)
        for p in sorted(torsion_primes(dt)):
            for hint in ISOGENY_HINTS:
                try:
                    prof = factor_profile(sf, p, hint)
                except UnknownRow:
                    continue
                count += 1
                try:
                    q = exact_div(borel_poincare(sf), ring_poincare(prof))
                    if min(q.coeffs) < 0:
                        bad.append(f"{dt} p={p} {hint}")
                except NotDivisible:
                    bad.append(f"{dt} p={p} {hint}")
    return CheckResult(
        "inner rows: ring polynomials divide the Borel polynomials", not bad,
        ", ".join(bad) if bad else f"{count} rows",
    )


def verify_tables() -> list[CheckResult]:
    return [check_torsion_primes(), check_degrees(), check_outer_degrees(), check_inner_rows(), check_outer_rows()]


def oracle_check(label: str, psi: frozenset[int] = frozenset(), cap: int | None = None) -> CheckResult:
    """Closed form against the brute-force oracle for one twisted type."""
    m = re.fullmatch(r"([23]?)([A-G]\d+)", label)
    if not m:
        raise ValueError(f"cannot read type {label!r}")
    twist = int(m.group(1) or 1)
    dt = DynkinType.parse(m.group(2))
    sf = SimpleFactor(dt, twist)
    closed = flag_poincare(GroupSpec(((1, sf),)), [psi])
    sigma0 = twisted_sigma(dt, twist) if twist > 1 else None
    oracle = length_generating_function(cartan_matrix(dt), tuple(sorted(i - 1 for i in psi)), sigma0, cap)
    name = f"{sf}" + (f" psi={','.join(map(str, sorted(psi)))}" if psi else "")
    return CheckResult(name, closed == oracle, f"|W|={weyl_order(cartan_matrix(dt))} value={oracle(1)}")
