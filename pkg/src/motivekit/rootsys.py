"""Root-system data: Cartan matrices, diagram automorphisms, degrees of the
fundamental invariants (inner and outer type) and torsion primes.

Node numbering follows Bourbaki everywhere; public node indices are 1-based.
Cartan entries follow ``a[i][j] = <alpha_i, alpha_j^vee>``, so G2 is
``[[2, -1], [-3, 2]]`` with the first simple root short.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import prime_factors
from .errors import IllegalTwist, IllegalType

FAMILIES = "ABCDEFG"


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(f)
        if not ok:
            raise IllegalType(f"no Dynkin type {f}{n}")

    @classmethod
    def parse(cls, s: str) -> DynkinType:
        s = s.strip()
        if len(s) < 2 or s[0] not in FAMILIES or not s[1:].isdigit():
            raise IllegalType(f"cannot read Dynkin type {s!r}")
        return cls(s[0], int(s[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def parse_twisted_type(s: str) -> tuple[DynkinType, int]:
    """Read ``"E6"``, ``"2E6"`` or ``"3D4"`` into a type and a twist order."""
    s = s.strip()
    twist = 1
    if s[:1] in ("2", "3"):
        twist, s = int(s[0]), s[1:]
    dt = DynkinType.parse(s)
    check_twist(dt, twist)
    return dt, twist


def type_label(dt: DynkinType, twist: int = 1) -> str:
    return f"{twist}{dt}" if twist > 1 else str(dt)


# -- Cartan matrices -----------------------------------------------------------


def _edges(dt: DynkinType) -> list[tuple[int, int]]:
    n = dt.rank
    if dt.family in "ABCFG":
        return [(i, i + 1) for i in range(n - 1)]
    if dt.family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    # E_n: 1-3-4-5-...-n with 2 attached to 4
    return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]


def cartan_matrix(dt: DynkinType) -> tuple[tuple[int, ...], ...]:
    n = dt.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(dt):
        a[i][j] = a[j][i] = -1
    if dt.family == "B":
        a[n - 2][n - 1] = -2
    elif dt.family == "C":
        a[n - 1][n - 2] = -2
    elif dt.family == "F":
        a[1][2] = -2
    elif dt.family == "G":
        a[1][0] = -3
    return tuple(tuple(row) for row in a)


# -- degrees of the fundamental invariants -------------------------------------

# family -> (row as printed, degrees as a function of the rank)
DEGREE_TABLE: dict[str, tuple[str, Callable[[int], list[int]]]] = {
    "A": ("2,3,...,m+1", lambda m: list(range(2, m + 2))),
    "B": ("2,4,...,2m", lambda m: list(range(2, 2 * m + 1, 2))),
    "C": ("2,4,...,2m", lambda m: list(range(2, 2 * m + 1, 2))),
    "D": ("2,4,...,2m-2,m", lambda m: list(range(2, 2 * m - 1, 2)) + [m]),
    "E6": ("2,5,6,8,9,12", lambda m: [2, 5, 6, 8, 9, 12]),
    "E7": ("2,6,8,10,12,14,18", lambda m: [2, 6, 8, 10, 12, 14, 18]),
    "E8": ("2,8,12,14,18,20,24,30", lambda m: [2, 8, 12, 14, 18, 20, 24, 30]),
    "F4": ("2,6,8,12", lambda m: [2, 6, 8, 12]),
    "G2": ("2,6", lambda m: [2, 6]),
}


def _degree_key(dt: DynkinType) -> str:
    return dt.family if dt.family in "ABCD" else str(dt)


def invariant_degrees(dt: DynkinType) -> list[int]:
    return sorted(DEGREE_TABLE[_degree_key(dt)][1](dt.rank))


# -- outer-type degrees --------------------------------------------------------


@dataclass(frozen=True)
class OuterDegreeData:
    """Plus and minus degree lists of a twisted type.

    For the trialitarian type the two entries of ``minus`` are the pair of
    degrees twisted by the two primitive cube roots of unity.
    """

    plus: tuple[int, ...]
    minus: tuple[int, ...]


# (family, twist) -> (folded system, plus row, minus row, builder)
OUTER_DEGREE_TABLE: dict[tuple[str, int], tuple[str, str, str, Callable[[int], OuterDegreeData]]] = {
    ("A", 2): (
        "C_{(m+1)/2} (m odd), BC_{m/2} (m even)",
        "all even numbers between 2 and m+1",
        "all odd numbers between 3 and m+1",
        lambda m: OuterDegreeData(tuple(range(2, m + 2, 2)), tuple(range(3, m + 2, 2))),
    ),
    ("D", 2): (
        "B_{m-1}",
        "2,4,...,2m-2",
        "m",
        lambda m: OuterDegreeData(tuple(range(2, 2 * m - 1, 2)), (m,)),
    ),
    ("E", 2): ("F4", "2,6,8,12", "5,9", lambda m: OuterDegreeData((2, 6, 8, 12), (5, 9))),
    ("D", 3): ("G2", "2,6", "4,4", lambda m: OuterDegreeData((2, 6), (4, 4))),
}


def folded_type(dt: DynkinType, twist: int) -> DynkinType:
    """Reduced type whose degrees are ``outer_degree_data(...).plus``.

    For ``2A_{2n}`` the folded system is the non-reduced BC_n; its Weyl group
    is that of B_n, which is what is returned.
    """
    check_twist(dt, twist)
    if twist == 1:
        return dt
    if dt.family == "A":
        half = (dt.rank + 1) // 2
        if half == 1:
            return DynkinType("A", 1)
        return DynkinType("C", half) if dt.rank % 2 else DynkinType("B", half)
    if dt.family == "D" and twist == 2:
        return DynkinType("B", dt.rank - 1) if dt.rank > 2 else DynkinType("A", 1)
    if dt.family == "D":
        return DynkinType("G", 2)
    return DynkinType("F", 4)


def check_twist(dt: DynkinType, twist: int) -> None:
    if twist == 1:
        return
    if twist == 2 and (dt.family == "A" and dt.rank >= 2 or dt.family == "D" or str(dt) == "E6"):
        return
    if twist == 3 and str(dt) == "D4":
        return
    raise IllegalTwist(f"type {dt} admits no diagram automorphism of order {twist}")


def outer_degree_data(dt: DynkinType, twist: int) -> OuterDegreeData:
    if twist == 1:
        raise IllegalTwist("outer degree data needs a twist of order 2 or 3")
    check_twist(dt, twist)
    key = (dt.family, twist)
    return OUTER_DEGREE_TABLE[key][3](dt.rank)


# -- torsion primes ------------------------------------------------------------

TORSION_INNER: dict[str, tuple[str, Callable[[int], list[int]]]] = {
    "A": ("p | (m+1)", lambda m: prime_factors(m + 1)),
    "B": ("2", lambda m: [2]),
    "C": ("2", lambda m: [2]),
    "D": ("2", lambda m: [2]),
    "G2": ("2", lambda m: [2]),
    "F4": ("2,3", lambda m: [2, 3]),
    "E6": ("2,3", lambda m: [2, 3]),
    "E7": ("2,3", lambda m: [2, 3]),
    "E8": ("2,3,5", lambda m: [2, 3, 5]),
}
TORSION_OUTER = {
    ("A", 2): "2",
    ("D", 2): "2",
    ("E", 2): "2",
    ("D", 3): "3",
}


def torsion_primes(dt: DynkinType, twist: int = 1) -> frozenset[int]:
    check_twist(dt, twist)
    if twist > 1:
        # divisors of the degree of the minimal extension making the group inner
        return frozenset(int(p) for p in TORSION_OUTER[(dt.family, twist)].split(","))
    return frozenset(TORSION_INNER[_degree_key(dt)][1](dt.rank))


# -- diagram automorphisms -----------------------------------------------------


def diagram_automorphism(dt: DynkinType, twist: int = 1) -> tuple[int, ...]:
    """The standard automorphism as a 1-based image tuple: node ``i`` goes to
    ``perm[i - 1]``."""
    check_twist(dt, twist)
    n = dt.rank
    perm = list(range(1, n + 1))
    if twist == 1:
        return tuple(perm)
    if dt.family == "A":
        return tuple(n + 1 - i for i in perm)
    if dt.family == "D" and twist == 2:
        perm[n - 2], perm[n - 1] = n, n - 1
        return tuple(perm)
    if dt.family == "D":
        return (3, 2, 4, 1)
    return (6, 2, 5, 4, 3, 1)


def permutation_order(perm: tuple[int, ...]) -> int:
    """Order of a 0- or 1-based image tuple."""
    base = min(perm) if perm else 0
    p = [x - base for x in perm]
    order, cur = 1, list(p)
    while cur != list(range(len(p))):
        cur = [p[x] for x in cur]
        order += 1
    return order


# -- sub-diagram classification ------------------------------------------------


def _neighbours(cartan, nodes) -> dict[int, list[int]]:
    return {i: [j for j in nodes if j != i and cartan[i][j] != 0] for i in nodes}


def connected_components(cartan, nodes) -> list[tuple[int, ...]]:
    """Connected components of the sub-diagram on ``nodes`` (0-based)."""
    nodes = sorted(nodes)
    nb = _neighbours(cartan, nodes)
    seen: set[int] = set()
    comps = []
    for start in nodes:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in nb[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def classify_component(cartan, nodes) -> DynkinType:
    """Dynkin type of a connected sub-diagram (0-based nodes).

    B2 and C2 are reported as B2, D3 as A3.
    """
    nodes = sorted(nodes)
    n = len(nodes)
    if n == 1:
        return DynkinType("A", 1)
    nb = _neighbours(cartan, nodes)
    mult = {(i, j): cartan[i][j] * cartan[j][i] for i in nodes for j in nb[i]}
    if any(m == 3 for m in mult.values()):
        return DynkinType("G", 2)
    branch = [v for v in nodes if len(nb[v]) == 3]
    if branch:
        c = branch[0]
        arms = []
        for start in nb[c]:
            length, prev, cur = 1, c, start
            while True:
                nxt = [w for w in nb[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return DynkinType("D", n)
        return DynkinType("E", n)
    ends = [v for v in nodes if len(nb[v]) == 1]
    chain, prev = [ends[0]], None
    while len(chain) < n:
        cur = chain[-1]
        nxt = [w for w in nb[cur] if w != prev]
        prev = cur
        chain.append(nxt[0])
    doubles = [k for k in range(n - 1) if mult[(chain[k], chain[k + 1])] == 2]
    if not doubles:
        return DynkinType("A", n)
    if n == 2:
        return DynkinType("B", 2)
    k = doubles[0]
    if 0 < k < n - 2:
        return DynkinType("F", 4)
    end, other = (chain[0], chain[1]) if k == 0 else (chain[-1], chain[-2])
    short_end = abs(cartan[end][other]) == 1
    return DynkinType("B" if short_end else "C", n)


def positive_roots(cartan) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, by string extension."""
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        new = []
        for r in layer:
            for i in range(n):
                # alpha_i-string through r: r - p*alpha_i, ..., r + q*alpha_i with p - q = <r, alpha_i^vee>
                pair = sum(r[j] * cartan[j][i] for j in range(n))
                p = 0
                down = list(r)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                q = p - pair
                if q > 0:
                    up = list(r)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        new.append(up)
        layer = new
    return sorted(roots, key=lambda r: (sum(r), r))
