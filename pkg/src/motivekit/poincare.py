"""Closed-form (normed) Poincare polynomials of flag varieties.

Everything reduces to Borel subgroups of absolutely simple factors: a
parabolic quotient is the Borel polynomial divided by that of the
semisimple part of the Levi, and a Weil restriction of degree ``m``
substitutes ``t -> t^m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import (
    ONE,
    Polynomial,
    RationalProduct,
    exact_div,
    expand_rational_product,
    is_prime,
    prime_factors,
    substitute_power,
)
from .errors import InvalidGroup, MixedPrimeUnsupported, NotDivisible, PsiNotStable
from .rootsys import (
    DynkinType,
    cartan_matrix,
    check_twist,
    classify_component,
    connected_components,
    invariant_degrees,
    outer_degree_data,
    permutation_order,
    type_label,
)
from .weyl import restrict_permutation, twisted_sigma


@dataclass(frozen=True)
class SimpleFactor:
    dt: DynkinType
    twist: int = 1

    def __post_init__(self):
        check_twist(self.dt, self.twist)

    def __str__(self) -> str:
        return type_label(self.dt, self.twist)


@dataclass(frozen=True)
class GroupSpec:
    """A product of Weil restrictions ``R_m(G')`` of absolutely simple
    quasi-split groups, with the working prime ``p`` (``None`` when only
    Poincare bookkeeping is needed)."""

    factors: tuple[tuple[int, SimpleFactor], ...]
    p: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((int(m), sf) for m, sf in self.factors))
        for m, _ in self.factors:
            if m < 1:
                raise InvalidGroup(f"Weil degree must be positive, got {m}")
        primes = self.involved_primes()
        if len(primes) > 1:
            raise MixedPrimeUnsupported(
                f"twists and Weil degrees involve the primes {sorted(primes)}"
            )
        if self.p is not None:
            if not is_prime(self.p):
                raise InvalidGroup(f"{self.p} is not a prime")
            if primes and primes != {self.p}:
                raise InvalidGroup(
                    f"the inner-izing extension has degree a power of {min(primes)}, not of p={self.p}"
                )

    def involved_primes(self) -> set[int]:
        """Primes dividing the degree of the minimal extension making the group inner."""
        out: set[int] = set()
        for m, sf in self.factors:
            if sf.twist > 1:
                out.add(sf.twist)
            out.update(prime_factors(m))
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "x".join(str(sf) if m == 1 else f"R{m}({sf})" for m, sf in self.factors)


def borel_poincare(sf: SimpleFactor) -> Polynomial:
    """Normed Poincare polynomial of the variety of Borel subgroups."""
    return expand_rational_product(borel_rational_product(sf))


def borel_rational_product(sf: SimpleFactor) -> RationalProduct:
    if sf.twist == 1:
        e = invariant_degrees(sf.dt)
        return RationalProduct(num_minus=e, den_minus=[1] * len(e))
    if sf.twist == 2:
        od = outer_degree_data(sf.dt, 2)
        return RationalProduct(
            num_minus=od.plus,
            num_plus=od.minus,
            den_minus=[1] * len(od.plus),
            den_plus=[1] * len(od.minus),
        )
    # trialitarian: the two conjugate factors (t^4 - w)/(t - w) multiply to
    # (t^8 + t^4 + 1)/(t^2 + t + 1) = [(t^12 - 1)/(t^4 - 1)] / [(t^3 - 1)/(t - 1)]
    od = outer_degree_data(sf.dt, 3)
    return RationalProduct(
        num_minus=list(od.plus) + [12, 1],
        den_minus=[1] * len(od.plus) + [4, 3],
    )


def levi_spec(sf: SimpleFactor, psi: Iterable[int], p: int | None = None) -> GroupSpec:
    """Semisimple part of the Levi subgroup of the parabolic of type ``psi``.

    Components of the sub-diagram are grouped into orbits of the twisting
    automorphism; an orbit of ``o`` components becomes a Weil restriction of
    degree ``o`` of one component, twisted by what ``sigma^o`` induces on it.
    """
    psi0 = sorted({i - 1 for i in psi})
    n = sf.dt.rank
    if any(i < 0 or i >= n for i in psi0):
        raise PsiNotStable(f"node set {sorted(psi)} does not lie in {sf.dt}")
    sigma = twisted_sigma(sf.dt, sf.twist)
    if {sigma[i] for i in psi0} != set(psi0):
        raise PsiNotStable(f"type {[i + 1 for i in psi0]} is not stable under the *-action of {sf}")
    cartan = cartan_matrix(sf.dt)
    comps = connected_components(cartan, psi0)
    index = {v: k for k, c in enumerate(comps) for v in c}
    seen: set[int] = set()
    factors = []
    for k, comp in enumerate(comps):
        if k in seen:
            continue
        orbit = [k]
        cur = index[sigma[comp[0]]]
        while cur != k:
            orbit.append(cur)
            cur = index[sigma[comps[cur][0]]]
        seen.update(orbit)
        o = len(orbit)
        power = list(range(n))
        for _ in range(o):
            power = [sigma[x] for x in power]
        induced = restrict_permutation(power, comp)
        sub = tuple(tuple(cartan[i][j] for j in comp) for i in comp)
        dt = classify_component(sub, range(len(comp)))
        factors.append((o, SimpleFactor(dt, permutation_order(induced))))
    return GroupSpec(tuple(factors), p)


def weil_borel_poincare(gs: GroupSpec) -> Polynomial:
    out = ONE
    for m, sf in gs.factors:
        out = out * substitute_power(borel_poincare(sf), m)
    return out


def flag_poincare(gs: GroupSpec, psi_per_factor: Sequence[Iterable[int]] | None = None) -> Polynomial:
    """Normed Poincare polynomial of the variety of parabolics of the given type.

    ``psi_per_factor[i]`` holds the retained (Bourbaki) nodes of factor ``i``;
    ``None`` or an empty set means the Borel subgroup.
    """
    if psi_per_factor is None:
        psi_per_factor = [()] * len(gs.factors)
    if len(psi_per_factor) != len(gs.factors):
        raise ValueError("need one node set per factor")
    out = ONE
    for (m, sf), psi in zip(gs.factors, psi_per_factor):
        total = borel_poincare(sf)
        levi = levi_spec(sf, psi, gs.p)
        try:
            quotient = exact_div(total, weil_borel_poincare(levi))
        except NotDivisible as exc:  # pragma: no cover - would be a defect
            raise NotDivisible(f"Levi quotient of {sf} by {levi} is not a polynomial: {exc}") from exc
        out = out * substitute_power(quotient, m)
    return out
