"""J-invariant parameters, restrictions and the associated polynomials.

A :class:`JProfile` is the presentation ``F_p[e_1..e_r]/(e_i^{p^{k_i}})`` with
``deg e_i = d_i``, together with the restrictions the J-invariant must obey.
Entries are kept sorted by degree; each entry remembers its index in the
table row it came from (``label``), which is how the restriction columns
number them.
"""

from __future__ import annotations

import functools
import itertools
import operator
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .algebra import (
    Polynomial,
    binom_nonzero_mod_p,
    floor_log2,
    is_power_of,
    p_valuation,
    product,
)
from .errors import (
    CapExceeded,
    IllegalAlgebra,
    Inadmissible,
    NotATorsionPrime,
    NotExcellentTower,
    UnknownRow,
)
from .poincare import GroupSpec, SimpleFactor
from .rootsys import torsion_primes

DEFAULT_ENUM_CAP = 1_000_000


# -- restriction rules ---------------------------------------------------------
# Rule positions are 0-based indices into the degree-sorted entries.


@dataclass(frozen=True)
class SteenrodRule:
    """If ``d_i + l = p^s d_m`` and ``C(d_i, l)`` is prime to ``p`` then
    ``j_m <= j_i + s``, for ``i, m`` among ``positions``.

    ``degrees`` are the degrees of the row before any Weil scaling.  With
    ``scaled=False`` only ``s = 0`` is used.
    """

    positions: tuple[int, ...]
    degrees: tuple[int, ...]
    ks: tuple[int, ...]
    p: int
    scaled: bool
    min_index: int = 1

    def constraints(self) -> list[tuple[int, int, int]]:
        """Triples ``(i, m, s)`` meaning ``j_m <= j_i + s``."""
        smax = max(self.ks, default=0) if self.scaled else 0
        out = []
        for a, di in zip(self.positions, self.degrees):
            for b, dm in zip(self.positions, self.degrees):
                for s in range(smax + 1):
                    l = self.p**s * dm - di
                    if l >= 1 and binom_nonzero_mod_p(di, l, self.p):
                        out.append((a, b, s))
        return out

    def holds(self, j: Sequence[int]) -> bool:
        return all(j[m] <= j[i] + s for i, m, s in self.constraints())

    def remap(self, pos: dict[int, int]) -> SteenrodRule:
        return SteenrodRule(
            tuple(pos[x] for x in self.positions), self.degrees, self.ks, self.p, self.scaled, self.min_index
        )

    def to_json(self) -> dict:
        return {
            "kind": "steenrod",
            "scaled": self.scaled,
            "min_index": self.min_index,
            "positions": list(self.positions),
        }


@dataclass(frozen=True)
class ChainRule:
    """``j_{a_1} >= j_{a_2} >= ...``."""

    positions: tuple[int, ...]

    def holds(self, j: Sequence[int]) -> bool:
        vals = [j[x] for x in self.positions]
        return all(a >= b for a, b in zip(vals, vals[1:]))

    def remap(self, pos: dict[int, int]) -> ChainRule:
        return ChainRule(tuple(pos[x] for x in self.positions))

    def to_json(self) -> dict:
        return {"kind": "chain", "positions": list(self.positions)}


@dataclass(frozen=True)
class DiffBoundRule:
    """``|j_a - j_b| <= bound``."""

    a: int
    b: int
    bound: int

    def holds(self, j: Sequence[int]) -> bool:
        return abs(j[self.a] - j[self.b]) <= self.bound

    def remap(self, pos: dict[int, int]) -> DiffBoundRule:
        return DiffBoundRule(pos[self.a], pos[self.b], self.bound)

    def to_json(self) -> dict:
        return {"kind": "diff_bound", "positions": [self.a, self.b], "bound": self.bound}


@dataclass(frozen=True)
class UpperNeighborRule:
    """``j_a <= j_b + 1``."""

    a: int
    b: int

    def holds(self, j: Sequence[int]) -> bool:
        return j[self.a] <= j[self.b] + 1

    def remap(self, pos: dict[int, int]) -> UpperNeighborRule:
        return UpperNeighborRule(pos[self.a], pos[self.b])

    def to_json(self) -> dict:
        return {"kind": "upper_neighbor", "positions": [self.a, self.b]}


# -- profiles ------------------------------------------------------------------


@dataclass(frozen=True)
class Entry:
    d: int
    k: int
    label: int = 1
    factor: int = 0


@dataclass(frozen=True)
class JProfile:
    p: int
    entries: tuple[Entry, ...] = ()
    rules: tuple = ()
    name: str = ""

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(e.d for e in self.entries)

    @property
    def ks(self) -> tuple[int, ...]:
        return tuple(e.k for e in self.entries)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "name": self.name,
            "entries": [{"d": e.d, "k": e.k, "label": e.label, "factor": e.factor} for e in self.entries],
            "rules": [rule.to_json() for rule in self.rules],
        }


def make_profile(p: int, dk: Sequence[tuple[int, int]], rules: Sequence = (), name: str = "") -> JProfile:
    """Profile from entries in table order; rules use 0-based table positions.

    Entries are stably sorted by degree and the rules renumbered to match.
    """
    entries = [Entry(d, k, label=i + 1) for i, (d, k) in enumerate(dk)]
    return _sorted_profile(p, entries, list(rules), name)


def _sorted_profile(p: int, entries: list[Entry], rules: list, name: str) -> JProfile:
    order = sorted(range(len(entries)), key=lambda i: entries[i].d)
    pos = {old: new for new, old in enumerate(order)}
    return JProfile(p, tuple(entries[i] for i in order), tuple(r.remap(pos) for r in rules), name)


def concat_profiles(profiles: Sequence[JProfile], p: int, name: str = "") -> JProfile:
    entries, rules = [], []
    for f, prof in enumerate(profiles):
        off = len(entries)
        entries.extend(Entry(e.d, e.k, e.label, f) for e in prof.entries)
        shift = {i: i + off for i in range(prof.r)}
        rules.extend(rule.remap(shift) for rule in prof.rules)
    return _sorted_profile(p, entries, rules, name)


def weil_scale(prof: JProfile, m: int) -> JProfile:
    """Weil restriction of degree ``m``: degrees scale, ``k`` and rules do not."""
    if m == 1:
        return prof
    entries = tuple(Entry(e.d * m, e.k, e.label, e.factor) for e in prof.entries)
    return JProfile(prof.p, entries, prof.rules, f"R{m}({prof.name})")


# -- J-invariant parameter rows as data -----------------------------------------


def _steenrod(dk, p, scaled, min_index=1):
    pos = tuple(range(min_index - 1, len(dk)))
    return SteenrodRule(
        pos, tuple(dk[i][0] for i in pos), tuple(dk[i][1] for i in pos), p, scaled, min_index
    )


def _o_plus(n):
    r = (n + 1) // 4
    dk = [(2 * i - 1, floor_log2(n - 1, 2 * i - 1)) for i in range(1, r + 1)]
    return dk, [_steenrod(dk, 2, True)]


def _spin(n):
    r = (n - 3) // 4
    dk = [(2 * i + 1, floor_log2(n - 1, 2 * i + 1)) for i in range(1, r + 1)]
    return dk, [_steenrod(dk, 2, True)]


def _half_spin(n):
    dk = [(1, p_valuation(n, 2))] + [(2 * i - 1, floor_log2(2 * n - 1, 2 * i - 1)) for i in range(2, n // 2 + 1)]
    return dk, [_steenrod(dk, 2, True)]


def _pgo(n):
    r = (n + 2) // 2
    dk = [(1, p_valuation(n, 2))] + [(2 * i - 3, floor_log2(2 * n - 1, 2 * i - 3)) for i in range(2, r + 1)]
    return dk, [_steenrod(dk, 2, True, min_index=2)]


def _unitary_even(m):
    n = m // 2
    dk = [(2 * i + 1, 1) for i in range(1, n + 1)]
    return dk, [_steenrod(dk, 2, False)]


def _unitary_odd(m):
    n = (m - 1) // 2
    dk = [(2, p_valuation(n + 1, 2))] + [(2 * i - 3, 1) for i in range(2, n + 3)]
    return dk, [_steenrod(dk, 2, False, min_index=2)]


def _orthogonal_outer(n):
    r = (n + 1) // 2 + 1
    dk = [(1, (1 + (-1) ** (n + 1)) // 2), (2, floor_log2(n))]
    dk += [(2 * i - 3, floor_log2(2 * n, 2 * i - 3)) for i in range(3, r + 1)]
    return dk, [_steenrod(dk, 2, True, min_index=2)]


def _fixed(dk, rules=()):
    return lambda m: (list(dk), list(rules))


@dataclass(frozen=True)
class TableRow:
    kind: str
    group: str
    family: str
    twist: int
    p: int | None  # None: any prime allowed by ``prime_ok``
    isogenies: tuple[str, ...]
    build: Callable = field(compare=False)
    restrictions: str = ""
    rank_ok: Callable[[int], bool] = field(default=lambda m: True, compare=False)
    rank: int | None = None  # exceptional rows pin the rank


def _steen_text(scaled, min_index):
    base = "if d_i + l = 2^s d_m and C(d_i, l) odd then j_m <= j_i + s" if scaled else (
        "if d_i + l = d_m and C(d_i, l) odd then j_m <= j_i"
    )
    return base + (f" (i, m >= {min_index})" if min_index > 1 else "")


INNER_ROWS: tuple[TableRow, ...] = (
    TableRow("inner", "SL_n/mu_m", "A", 1, None, ("ad", "mu"), None),  # built specially, depends on m and p
    TableRow("inner", "PGSp_n", "C", 1, 2, ("ad",), lambda m: ([(1, p_valuation(2 * m, 2))], [])),
    TableRow("inner", "O+_n", "B", 1, 2, ("ad", "so"), lambda m: _o_plus(2 * m + 1), _steen_text(True, 1)),
    TableRow("inner", "O+_n", "D", 1, 2, ("so",), lambda m: _o_plus(2 * m), _steen_text(True, 1)),
    TableRow("inner", "Spin+-_2n", "D", 1, 2, ("hs",), _half_spin, _steen_text(True, 1), lambda m: m % 2 == 0),
    TableRow("inner", "Spin_n", "B", 1, 2, ("sc",), lambda m: _spin(2 * m + 1), _steen_text(True, 1)),
    TableRow("inner", "Spin_n", "D", 1, 2, ("sc",), lambda m: _spin(2 * m), _steen_text(True, 1)),
    TableRow("inner", "PGO+_2n", "D", 1, 2, ("ad",), _pgo, _steen_text(True, 2)),
    TableRow("inner", "G2", "G", 1, 2, ("ad", "sc"), _fixed([(3, 1)]), rank=2),
    TableRow("inner", "F4", "F", 1, 2, ("ad", "sc"), _fixed([(3, 1)]), rank=4),
    TableRow("inner", "E6", "E", 1, 2, ("ad", "sc"), _fixed([(3, 1)]), rank=6),
    TableRow("inner", "F4", "F", 1, 3, ("ad", "sc"), _fixed([(4, 1)]), rank=4),
    TableRow("inner", "E6^sc", "E", 1, 3, ("sc",), _fixed([(4, 1)]), rank=6),
    TableRow("inner", "E7", "E", 1, 3, ("ad", "sc"), _fixed([(4, 1)]), rank=7),
    TableRow("inner", "E6^ad", "E", 1, 3, ("ad",), _fixed([(1, 2), (4, 1)], [DiffBoundRule(0, 1, 1)]),
             "|j1 - j2| <= 1", rank=6),
    TableRow("inner", "E7^sc", "E", 1, 2, ("sc",), _fixed([(3, 1), (5, 1), (9, 1)], [ChainRule((0, 1, 2))]),
             "j1 >= j2 >= j3", rank=7),
    TableRow("inner", "E7^ad", "E", 1, 2, ("ad",),
             _fixed([(1, 1), (3, 1), (5, 1), (9, 1)], [ChainRule((1, 2, 3))]), "j2 >= j3 >= j4", rank=7),
    TableRow("inner", "E8", "E", 1, 2, ("ad", "sc"),
             _fixed([(3, 3), (5, 2), (9, 1), (15, 1)],
                    [ChainRule((0, 1, 2)), UpperNeighborRule(0, 1), UpperNeighborRule(1, 2)]),
             "j1 >= j2 >= j3, j1 <= j2 + 1, j2 <= j3 + 1", rank=8),
    TableRow("inner", "E8", "E", 1, 3, ("ad", "sc"), _fixed([(4, 1), (10, 1)], [ChainRule((0, 1))]),
             "j1 >= j2", rank=8),
    TableRow("inner", "E8", "E", 1, 5, ("ad", "sc"), _fixed([(6, 1)]), rank=8),
)

OUTER_ROWS: tuple[TableRow, ...] = (
    TableRow("outer", "2A_2n", "A", 2, 2, ("ad",), _unitary_even, _steen_text(False, 1), lambda m: m % 2 == 0),
    TableRow("outer", "2A_2n+1", "A", 2, 2, ("ad",), _unitary_odd, _steen_text(False, 2), lambda m: m % 2 == 1),
    TableRow("outer", "2D_n", "D", 2, 2, ("ad",), _orthogonal_outer, _steen_text(True, 2)),
    TableRow("outer", "3D4", "D", 3, 3, ("ad", "sc"), _fixed([(4, 1)]), rank=4),
    TableRow("outer", "2E6", "E", 2, 2, ("ad", "sc"), _fixed([(3, 1), (5, 1), (9, 1)], [ChainRule((0, 1, 2))]),
             "j1 >= j2 >= j3", rank=6),
)


def _sl_mod_mu(rank: int, p: int, isogeny: str):
    n = rank + 1
    if isogeny == "ad":
        m = n
    else:
        try:
            m = int(isogeny[2:])
        except ValueError:
            raise UnknownRow(f"cannot read isogeny {isogeny!r} for SL_n/mu_m") from None
    if m < 1 or n % m or m % p:
        raise UnknownRow(f"SL_{n}/mu_{m} has no row for p={p} (need p | m | n)")
    return [(1, p_valuation(n, p))], []


def lookup_row(sf: SimpleFactor, p: int, isogeny: str = "ad") -> TableRow:
    rows = INNER_ROWS if sf.twist == 1 else OUTER_ROWS
    hint = "mu" if isogeny.startswith("mu") else isogeny
    for row in rows:
        if row.family != sf.dt.family or row.twist != sf.twist:
            continue
        if row.rank is not None and row.rank != sf.dt.rank:
            continue
        if not row.rank_ok(sf.dt.rank) or hint not in row.isogenies:
            continue
        if row.p is not None and row.p != p:
            continue
        return row
    raise UnknownRow(f"no table row for {sf} with p={p} and isogeny {isogeny!r}")


def factor_profile(sf: SimpleFactor, p: int, isogeny: str = "ad") -> JProfile:
    row = lookup_row(sf, p, isogeny)
    if row.build is None:
        dk, rules = _sl_mod_mu(sf.dt.rank, p, isogeny)
    else:
        dk, rules = row.build(sf.dt.rank)
    return make_profile(p, dk, rules, name=f"{sf} ({row.group}, p={p})")


def j_profile(gs: GroupSpec, isogeny: str | Sequence[str] = "ad") -> JProfile:
    """Table parameters for a group, concatenated over its factors.

    A factor for which ``p`` is not a torsion prime has a trivial ring and
    contributes no entries.
    """
    p = gs.p
    if p is None:
        raise NotATorsionPrime("a working prime is required")
    hints = [isogeny] * len(gs.factors) if isinstance(isogeny, str) else list(isogeny)
    if len(hints) != len(gs.factors):
        raise ValueError("need one isogeny hint per factor")
    if p not in group_torsion_primes(gs):
        raise NotATorsionPrime(f"{p} is not a torsion prime of {gs}")
    parts = []
    for (m, sf), hint in zip(gs.factors, hints):
        if p in torsion_primes(sf.dt, sf.twist):
            parts.append(weil_scale(factor_profile(sf, p, hint), m))
        else:
            parts.append(JProfile(p))
    return concat_profiles(parts, p, name=str(gs))


def group_torsion_primes(gs: GroupSpec) -> set[int]:
    out: set[int] = set()
    for m, sf in gs.factors:
        out |= torsion_primes(sf.dt, sf.twist)
    return out | gs.involved_primes()


# -- admissibility ---------------------------------------------------------------


def admissible(j: Sequence[int], prof: JProfile) -> bool:
    if len(j) != prof.r:
        raise ValueError(f"J-tuple of length {len(j)} for a profile with r={prof.r}")
    if any(x < 0 or x > e.k for x, e in zip(j, prof.entries)):
        return False
    return all(rule.holds(j) for rule in prof.rules)


def enumerate_admissible(prof: JProfile, cap: int = DEFAULT_ENUM_CAP) -> list[tuple[int, ...]]:
    size = product_int(e.k + 1 for e in prof.entries)
    if size > cap:
        raise CapExceeded(f"{size} candidate tuples exceed the cap {cap}")
    return [j for j in itertools.product(*(range(e.k + 1) for e in prof.entries)) if admissible(j, prof)]


def product_int(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


# -- polynomials -----------------------------------------------------------------


def _geometric(step: int, count: int) -> Polynomial:
    """``1 + t^step + ... + t^{step (count - 1)}``."""
    coeffs = [0] * (step * (count - 1) + 1)
    for i in range(count):
        coeffs[i * step] = 1
    return Polynomial(tuple(coeffs))


def upper_poincare(prof: JProfile, j: Sequence[int]) -> Polynomial:
    """Poincare polynomial of the upper motive for the J-invariant ``j``."""
    if not admissible(j, prof):
        raise Inadmissible(f"{tuple(j)} is not an admissible J-invariant for {prof.name or 'the profile'}")
    return _cyclotomic_product(prof, j)


def ring_poincare(prof: JProfile) -> Polynomial:
    return _cyclotomic_product(prof, prof.ks)


def _cyclotomic_product(prof: JProfile, exps: Sequence[int]) -> Polynomial:
    return product(_geometric(e.d, prof.p**x) for e, x in zip(prof.entries, exps))


# -- monomials -------------------------------------------------------------------


def weight(m: Sequence[int], degrees: Sequence[int]) -> int:
    return sum(map(operator.mul, degrees, m))


def monomial_cmp(m: Sequence[int], n: Sequence[int], prof: JProfile | Sequence[int]) -> int:
    """Weighted degree reverse lexicographic comparison: -1, 0 or 1."""
    degrees = prof.degrees if isinstance(prof, JProfile) else prof
    if len(m) != len(n) or len(m) != len(degrees):
        raise ValueError("monomials of different lengths")
    wm = sum(map(operator.mul, degrees, m))
    wn = sum(map(operator.mul, degrees, n))
    if wm != wn:
        return -1 if wm < wn else 1
    for a, b in zip(reversed(m), reversed(n)):
        if a != b:
            return -1 if a < b else 1
    return 0


def monomial_basis(prof: JProfile, cap: int = DEFAULT_ENUM_CAP) -> list[tuple[int, ...]]:
    size = product_int(prof.p**e.k for e in prof.entries)
    if size > cap:
        raise CapExceeded(f"basis of size {size} exceeds the cap {cap}")
    mons = list(itertools.product(*(range(prof.p**e.k) for e in prof.entries)))
    degrees = prof.degrees
    mons.sort(key=functools.cmp_to_key(lambda a, b: monomial_cmp(a, b, degrees)))
    return mons


# -- closed formulas for low-degree entries --------------------------------------


def unitary_j1(deg_b: int, ind_b: int) -> tuple[int, int]:
    """``(j_1, k_1)`` of the degree-2 entry for a unitary involution on ``B``."""
    if deg_b < 2 or deg_b % 2:
        raise IllegalAlgebra(f"deg B = {deg_b} must be even and positive")
    if not is_power_of(ind_b, 2) or deg_b % ind_b:
        raise IllegalAlgebra(f"ind B = {ind_b} must be a power of 2 dividing deg B = {deg_b}")
    k1 = p_valuation(deg_b // 2, 2)
    v = p_valuation(ind_b, 2)
    j1 = v if (deg_b // 2) % ind_b == 0 else v - 1
    return j1, k1


def orthogonal_j1(n: int, ind_a: int) -> tuple[int, int]:
    """``(j_1, k_1)`` of the degree-1 entry for an orthogonal involution on a
    degree ``2n`` algebra ``A``."""
    if n < 3:
        raise IllegalAlgebra(f"n = {n} must be at least 3")
    if not is_power_of(ind_a, 2) or (2 * n) % ind_a:
        raise IllegalAlgebra(f"ind A = {ind_a} must be a power of 2 dividing deg A = {2 * n}")
    k1 = (1 + (-1) ** (n + 1)) // 2
    return min(k1, p_valuation(ind_a, 2)), k1


def tits_j2(case: str, split: bool) -> int:
    """Degree-one (unitary) or degree-two (orthogonal) entry from the relevant
    Tits algebra: the discriminant algebra, resp. the even Clifford algebra."""
    if case not in ("unitary", "orthogonal"):
        raise ValueError(f"unknown case {case!r}")
    return 0 if split else 1


def excellent_form_jinv(tower_dims: Sequence[int], prof: JProfile) -> tuple[int, ...]:
    """J-invariant of an anisotropic excellent form with non-trivial discriminant,
    given the dimensions of its nested Pfister forms ``pi_0 > ... > pi_s``."""
    dims = list(tower_dims)
    if len(dims) < 2:
        raise NotExcellentTower("need at least two Pfister forms")
    if any(not is_power_of(x, 2) or x < 2 for x in dims):
        raise NotExcellentTower(f"dimensions {dims} are not all powers of 2")
    if any(a <= b for a, b in zip(dims, dims[1:])):
        raise NotExcellentTower(f"dimensions {dims} are not strictly decreasing")
    if dims[-1] != 2:
        raise NotExcellentTower("the last Pfister form must be binary")
    if dims[-2] <= 2 * dims[-1]:
        raise NotExcellentTower(f"need dim(pi_(s-1)) = {dims[-2]} > {2 * dims[-1]}")
    target = dims[-2] // 2 - 1
    j = tuple(1 if e.d == target else 0 for e in prof.entries)
    if not any(j):
        warnings.warn(f"profile has no entry of degree {target}; returning the zero tuple", stacklevel=2)
    return j
