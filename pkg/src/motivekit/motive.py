"""Decomposition of a normed motive into Tate twists of its upper motive,
read off at the level of Poincare polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra import Polynomial, exact_div, is_palindromic
from .errors import NegativeMultiplicity
from .jinv import j_profile, upper_poincare
from .poincare import GroupSpec, flag_poincare


@dataclass(frozen=True)
class TwistMultiset:
    """Tate twist ``i`` occurring ``count`` times, as sorted ``(i, count)`` pairs."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((int(i), int(c)) for i, c in self.pairs))
        if any(c <= 0 for _, c in pairs):
            raise ValueError("twist multiplicities must be positive")
        if len({i for i, _ in pairs}) != len(pairs):
            raise ValueError("repeated twist index")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_mapping(cls, counts: Mapping[int, int]) -> TwistMultiset:
        return cls(tuple(counts.items()))

    @classmethod
    def from_polynomial(cls, q: Polynomial) -> TwistMultiset:
        return cls(tuple((i, c) for i, c in enumerate(q.coeffs) if c))

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def as_polynomial(self) -> Polynomial:
        top = self.max_twist
        counts = self.as_dict()
        return Polynomial(tuple(counts.get(i, 0) for i in range(top + 1)))

    @property
    def summands(self) -> int:
        return sum(c for _, c in self.pairs)

    @property
    def max_twist(self) -> int:
        return self.pairs[-1][0] if self.pairs else -1

    def twists(self) -> list[int]:
        return [i for i, _ in self.pairs]

    def to_json(self) -> list[list[int]]:
        return [[i, c] for i, c in self.pairs]


def decompose(total: Polynomial, upper: Polynomial) -> TwistMultiset:
    q = exact_div(total, upper)
    if any(c < 0 for c in q.coeffs):
        raise NegativeMultiplicity(f"quotient {q} has negative coefficients")
    return TwistMultiset.from_polynomial(q)


def verify_decomposition(total: Polynomial, upper: Polynomial, tm: TwistMultiset) -> bool:
    return upper * tm.as_polynomial() == total


def decompose_group(
    gs: GroupSpec,
    psi: Sequence[Iterable[int]] | None,
    j: Sequence[int],
    isogeny: str | Sequence[str] = "ad",
) -> TwistMultiset:
    """Twists of the upper motive in the normed motive of ``E/P``.

    The caller is responsible for choosing ``psi`` so that the variety is
    generically quasi-split; the Borel case always is.
    """
    total = flag_poincare(gs, psi)
    upper = upper_poincare(j_profile(gs, isogeny), j)
    return decompose(total, upper)


def quotient_is_symmetric(tm: TwistMultiset) -> bool:
    return is_palindromic(tm.as_polynomial())
