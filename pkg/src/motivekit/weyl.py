"""Brute-force Weyl group oracle.

Elements are stored by their action on the simple roots: ``action[j]`` is the
image of ``alpha_j`` in simple-root coordinates.  Equality, minimality in a
coset and fixedness under a diagram automorphism are all read off that
representation, never off a reduced word.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from .algebra import Polynomial
from .errors import CapExceeded, PsiNotStable
from .rootsys import (
    DynkinType,
    cartan_matrix,
    classify_component,
    connected_components,
    diagram_automorphism,
    invariant_degrees,
)

DEFAULT_CAP = 200_000
CAP_ENV = "MOTIVEKIT_ORACLE_CAP"

Cartan = tuple[tuple[int, ...], ...]


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


@dataclass(frozen=True)
class WeylElement:
    action: tuple[tuple[int, ...], ...]
    length: int

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Image of the vector with simple-root coordinates ``v``."""
        n = len(self.action)
        return tuple(sum(v[j] * self.action[j][k] for j in range(n)) for k in range(n))


@dataclass(frozen=True)
class CosetSpec:
    """Generators ``psi`` of the parabolic subgroup and the node permutation
    ``sigma``, both 1-based as in Bourbaki."""

    psi: frozenset[int] = frozenset()
    sigma: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "psi", frozenset(self.psi))
        if self.sigma is not None:
            image = {self.sigma[i - 1] for i in self.psi}
            if image != set(self.psi):
                raise PsiNotStable(f"type {sorted(self.psi)} is not stable under {self.sigma}")


def weyl_order(cartan: Cartan) -> int:
    order = 1
    for comp in connected_components(cartan, range(len(cartan))):
        for e in invariant_degrees(classify_component(cartan, comp)):
            order *= e
    return order


def _as_cartan(dt_or_cartan: Union[DynkinType, Cartan]) -> Cartan:
    if isinstance(dt_or_cartan, DynkinType):
        return cartan_matrix(dt_or_cartan)
    return tuple(tuple(r) for r in dt_or_cartan)


def weyl_enumerate(dt: Union[DynkinType, Cartan], cap: int | None = None) -> list[WeylElement]:
    """All elements of the Weyl group, ordered by length then by action."""
    cartan = _as_cartan(dt)
    cap = default_cap() if cap is None else cap
    order = weyl_order(cartan) if cartan else 1
    if order > cap:
        raise CapExceeded(f"|W| = {order} exceeds the oracle cap {cap}")
    return list(_enumerate(cartan))


@lru_cache(maxsize=16)
def _enumerate(cartan: Cartan) -> tuple[WeylElement, ...]:
    n = len(cartan)
    # s_i changes only coordinate i of a vector: v_i -= sum_j v_j a_ji
    cols = [[(j, cartan[j][i]) for j in range(n) if cartan[j][i]] for i in range(n)]
    identity = tuple(1 if k == j else 0 for j in range(n) for k in range(n))
    seen = {identity: 0}
    layer = [identity]
    length = 0
    while layer:
        length += 1
        nxt = []
        for w in layer:
            for i in range(n):
                flat = list(w)
                ci = cols[i]
                for j in range(n):
                    base = j * n
                    flat[base + i] -= sum(flat[base + k] * a for k, a in ci)
                key = tuple(flat)
                if key not in seen:
                    seen[key] = length
                    nxt.append(key)
        layer = nxt
    elems = [
        WeylElement(tuple(tuple(flat[j * n:(j + 1) * n]) for j in range(n)), ln)
        for flat, ln in seen.items()
    ]
    elems.sort(key=lambda e: (e.length, e.action))
    return tuple(elems)


def permute_vector(v: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """Apply a 0-based node permutation to simple-root coordinates."""
    out = [0] * len(v)
    for k, x in enumerate(v):
        out[sigma[k]] = x
    return tuple(out)


def is_sigma_fixed(w: WeylElement, sigma: Sequence[int]) -> bool:
    """Whether ``sigma w sigma^{-1} = w`` for a 0-based node permutation."""
    act = w.action
    return all(act[sigma[j]] == permute_vector(act[j], sigma) for j in range(len(act)))


def is_minimal(w: WeylElement, psi0: Sequence[int]) -> bool:
    """``l(w s_i) > l(w)`` for every 0-based ``i`` in ``psi0``, i.e. ``w(alpha_i) > 0``."""
    return all(min(w.action[i]) >= 0 for i in psi0)


def length_generating_function(
    cartan: Cartan,
    psi0: Sequence[int] = (),
    sigma0: Sequence[int] | None = None,
    cap: int | None = None,
) -> Polynomial:
    """Count sigma-fixed minimal coset representatives of ``W / W_psi`` by length.

    ``psi0`` and ``sigma0`` are 0-based; this is the workhorse behind
    :func:`coset_gen_function` and also runs on arbitrary sub-diagrams.
    """
    cartan = _as_cartan(cartan)
    n = len(cartan)
    if sigma0 is not None and list(sigma0) == list(range(n)):
        sigma0 = None
    if sigma0 is not None and {sigma0[i] for i in psi0} != set(psi0):
        raise PsiNotStable(f"type {sorted(i + 1 for i in psi0)} is not sigma-stable")
    counts: dict[int, int] = {}
    for w in weyl_enumerate(cartan, cap):
        if not is_minimal(w, psi0):
            continue
        if sigma0 is not None and not is_sigma_fixed(w, sigma0):
            continue
        counts[w.length] = counts.get(w.length, 0) + 1
    top = max(counts) if counts else -1
    return Polynomial(tuple(counts.get(i, 0) for i in range(top + 1)))


def coset_gen_function(dt: DynkinType, cs: CosetSpec, cap: int | None = None) -> Polynomial:
    sigma0 = None if cs.sigma is None else tuple(x - 1 for x in cs.sigma)
    return length_generating_function(
        cartan_matrix(dt), tuple(sorted(i - 1 for i in cs.psi)), sigma0, cap
    )


def sub_cartan(cartan: Cartan, nodes0: Sequence[int]) -> Cartan:
    nodes0 = sorted(nodes0)
    return tuple(tuple(cartan[i][j] for j in nodes0) for i in nodes0)


def restrict_permutation(sigma0: Sequence[int], nodes0: Sequence[int]) -> tuple[int, ...]:
    """A stable permutation restricted to ``nodes0`` and renumbered 0..k-1."""
    nodes0 = sorted(nodes0)
    pos = {v: k for k, v in enumerate(nodes0)}
    return tuple(pos[sigma0[v]] for v in nodes0)


def twisted_sigma(dt: DynkinType, twist: int) -> tuple[int, ...]:
    """0-based standard automorphism."""
    return tuple(x - 1 for x in diagram_automorphism(dt, twist))
