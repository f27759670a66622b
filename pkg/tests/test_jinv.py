from __future__ import annotations

import itertools
import math
import warnings

import pytest

from motivekit.algebra import Polynomial, exact_div, p_valuation
from motivekit.errors import (
    CapExceeded,
    IllegalAlgebra,
    Inadmissible,
    NotATorsionPrime,
    NotExcellentTower,
    UnknownRow,
)
from motivekit.jinv import (
    ChainRule,
    DiffBoundRule,
    SteenrodRule,
    UpperNeighborRule,
    admissible,
    enumerate_admissible,
    excellent_form_jinv,
    factor_profile,
    j_profile,
    make_profile,
    monomial_basis,
    monomial_cmp,
    orthogonal_j1,
    ring_poincare,
    tits_j2,
    unitary_j1,
    upper_poincare,
    weight,
)
from motivekit.poincare import GroupSpec, SimpleFactor, borel_poincare
from motivekit.rootsys import DynkinType

P = lambda *c: Polynomial(tuple(c))  # noqa: E731


def sf(label: str) -> SimpleFactor:
    tw = int(label[0]) if label[0] in "23" else 1
    return SimpleFactor(DynkinType.parse(label.lstrip("23")), tw)


def prof(label: str, p: int, isogeny: str = "ad", m: int = 1):
    return j_profile(GroupSpec(((m, sf(label)),), p), isogeny)


def test_2e6_profile():
    pr = prof("2E6", 2)
    assert pr.r == 3
    assert pr.degrees == (3, 5, 9)
    assert pr.ks == (1, 1, 1)
    assert pr.rules == (ChainRule((0, 1, 2)),)


def test_2a5_profile():
    pr = prof("2A5", 2)
    # table order: d_1 = 2 with 2^k || n + 1 = 3, then d_i = 2i - 3
    by_label = {e.label: (e.d, e.k) for e in pr.entries}
    assert by_label == {1: (2, 0), 2: (1, 1), 3: (3, 1), 4: (5, 1)}
    assert pr.degrees == (1, 2, 3, 5)


def test_2a7_first_entry():
    by_label = {e.label: (e.d, e.k) for e in prof("2A7", 2).entries}
    assert by_label[1] == (2, 2)  # 2^2 || 4


def test_2d5_profile():
    pr = prof("2D5", 2)
    assert pr.degrees == (1, 2, 3, 5)
    # k_i = [log2(2n / d_i)] for the entries d_i = 2i - 3
    assert pr.ks == (1, 2, 1, 1)
    assert [math.floor(math.log2(10 / d)) for d in (3, 5)] == [1, 1]


def test_weil_scaling_keeps_k_and_rules():
    base = prof("2A3", 2)
    scaled = prof("2A3", 2, m=4)
    assert scaled.degrees == tuple(4 * d for d in base.degrees)
    assert scaled.ks == base.ks
    assert scaled.rules == base.rules
    # admissibility is "as for G"
    assert enumerate_admissible(scaled) == enumerate_admissible(base)


def test_weil_restriction_of_inner_group_at_p():
    pr = j_profile(GroupSpec(((2, sf("A1")),), 2))
    assert (pr.degrees, pr.ks) == ((2,), (1,))


def test_non_torsion_factor_contributes_nothing():
    gs = GroupSpec(((1, sf("2E6")), (1, sf("A2"))), 2)
    assert j_profile(gs).degrees == (3, 5, 9)
    pr = j_profile(GroupSpec(((1, sf("2E6")), (1, sf("A3"))), 2))
    assert sorted(e.factor for e in pr.entries) == [0, 0, 0, 1]


def test_profile_errors():
    with pytest.raises(NotATorsionPrime):
        j_profile(GroupSpec(((1, sf("E6")),), 5))
    with pytest.raises(NotATorsionPrime):
        j_profile(GroupSpec(((1, sf("E6")),)))
    with pytest.raises(UnknownRow):
        factor_profile(sf("E6"), 2, "so")
    with pytest.raises(UnknownRow):
        factor_profile(sf("A5"), 2, "mu3")
    with pytest.raises(ValueError):
        j_profile(GroupSpec(((1, sf("E6")),), 3), ["ad", "sc"])


def test_isogeny_hints_select_rows():
    assert factor_profile(sf("E6"), 3, "sc").degrees == (4,)
    assert factor_profile(sf("E6"), 3, "ad").degrees == (1, 4)
    assert factor_profile(sf("E7"), 2, "sc").degrees == (3, 5, 9)
    assert factor_profile(sf("E7"), 2, "ad").degrees == (1, 3, 5, 9)
    assert factor_profile(sf("A5"), 2, "mu2").ks == (1,)
    assert factor_profile(sf("A7"), 2, "ad").ks == (3,)
    assert factor_profile(sf("C3"), 2).ks == (1,)


def test_admissible_examples():
    e6 = prof("2E6", 2)
    assert not admissible((1, 0, 1), e6)
    a4 = prof("2A4", 2)
    assert a4.degrees == (3, 5)
    assert not admissible((0, 1), a4)
    assert admissible((1, 0), a4)
    for pr in (e6, a4, prof("2D6", 2), prof("E8", 2)):
        assert admissible((0,) * pr.r, pr)
    assert not admissible((2, 0, 0), e6)
    with pytest.raises(ValueError):
        admissible((0,), e6)


def test_enumerate_examples():
    assert enumerate_admissible(prof("2E6", 2)) == [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert enumerate_admissible(prof("2A4", 2)) == [(0, 0), (1, 0), (1, 1)]
    assert enumerate_admissible(prof("3D4", 3)) == [(0,), (1,)]
    with pytest.raises(CapExceeded):
        enumerate_admissible(prof("2D8", 2), cap=10)


def test_e_series_rules():
    ad = factor_profile(sf("E6"), 3, "ad")
    assert enumerate_admissible(ad) == [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1)]
    e8 = factor_profile(sf("E8"), 2)
    got = enumerate_admissible(e8)
    assert (3, 2, 1, 1) in got and (2, 1, 1, 0) in got
    assert (2, 0, 0, 0) not in got  # j1 <= j2 + 1
    assert (1, 1, 0, 1) in got  # no constraint ties j4 in


def naive_steenrod_ok(j, degrees, labels_ok, p, scaled, kmax):
    """Direct reading of the Steenrod restriction with math.comb."""
    n = len(degrees)
    for i, m in itertools.product(range(n), repeat=2):
        if not (labels_ok[i] and labels_ok[m]):
            continue
        for s in range(kmax + 1 if scaled else 1):
            ell = p**s * degrees[m] - degrees[i]
            if ell >= 1 and math.comb(degrees[i], ell) % p and j[m] > j[i] + s:
                return False
    return True


@pytest.mark.parametrize(
    "label,isogeny",
    [("2D5", "ad"), ("2D7", "ad"), ("2D8", "ad"), ("2A6", "ad"), ("2A7", "ad"), ("2A9", "ad"),
     ("B5", "so"), ("D6", "so"), ("B6", "sc"), ("D7", "sc"), ("D8", "hs"), ("D6", "ad"), ("D7", "ad")],
)
def test_steenrod_rule_against_naive(label, isogeny):
    pr = factor_profile(sf(label), 2, isogeny)
    rules = [r for r in pr.rules if isinstance(r, SteenrodRule)]
    assert len(rules) == 1
    rule = rules[0]
    labels_ok = [e.label >= rule.min_index for e in pr.entries]
    kmax = max(pr.ks)
    for j in itertools.product(*(range(e.k + 1) for e in pr.entries)):
        expected = naive_steenrod_ok(j, pr.degrees, labels_ok, 2, rule.scaled, kmax)
        assert admissible(j, pr) == expected, j


def test_2d5_hand_constraints():
    pr = prof("2D5", 2)  # degrees 1, 2, 3, 5
    assert admissible((1, 0, 0, 0), pr)  # degree-1 entry is outside the rule
    assert not admissible((0, 0, 0, 1), pr)  # C(3, 2) odd: j(5) <= j(3)
    assert admissible((0, 0, 1, 1), pr)
    assert not admissible((0, 2, 0, 0), pr)  # C(3, 1) odd, s = 1: j(2) <= j(3) + 1


def test_rules_json_and_hold():
    assert ChainRule((0, 1)).holds((1, 0)) and not ChainRule((0, 1)).holds((0, 1))
    assert DiffBoundRule(0, 1, 1).holds((2, 1)) and not DiffBoundRule(0, 1, 1).holds((2, 0))
    assert UpperNeighborRule(0, 1).holds((1, 0)) and not UpperNeighborRule(0, 1).holds((2, 0))
    assert ChainRule((0, 1)).to_json()["kind"] == "chain"


def test_upper_examples():
    e6 = prof("2E6", 2)
    assert upper_poincare(e6, (0, 0, 0)) == P(1)
    expected = P(1, 0, 0, 1) * P(1, 0, 0, 0, 0, 1) * Polynomial((1,) + (0,) * 8 + (1,))
    assert upper_poincare(e6, (1, 1, 1)) == expected
    assert upper_poincare(prof("3D4", 3), (1,)) == P(1, 0, 0, 0, 1, 0, 0, 0, 1)
    with pytest.raises(Inadmissible):
        upper_poincare(e6, (0, 1, 1))


def test_ring_examples():
    assert ring_poincare(prof("3D4", 3)) == P(1, 0, 0, 0, 1, 0, 0, 0, 1)
    assert ring_poincare(prof("2E6", 2)) == upper_poincare(prof("2E6", 2), (1, 1, 1))
    assert ring_poincare(make_profile(2, [(3, 0), (5, 0)])) == P(1)


def _basis_gf(pr):
    coeffs = {}
    for mon in monomial_basis(pr):
        w = weight(mon, pr.degrees)
        coeffs[w] = coeffs.get(w, 0) + 1
    return Polynomial(tuple(coeffs.get(i, 0) for i in range(max(coeffs) + 1)))


@pytest.mark.parametrize(
    "label,p,isogeny",
    [("2E6", 2, "ad"), ("2D6", 2, "ad"), ("2A5", 2, "ad"), ("3D4", 3, "ad"), ("E8", 2, "ad"),
     ("E8", 3, "ad"), ("E6", 3, "ad"), ("F4", 3, "ad"), ("D6", 2, "so"), ("B4", 2, "sc")],
)
def test_ring_matches_basis_and_divides(label, p, isogeny):
    pr = factor_profile(sf(label), p, isogeny)
    ring = ring_poincare(pr)
    assert ring == _basis_gf(pr)
    for j in enumerate_admissible(pr):
        exact_div(ring, upper_poincare(pr, j))
    q = exact_div(borel_poincare(sf(label)), ring)
    assert min(q.coeffs) >= 0


def test_monomial_cmp_examples():
    assert monomial_cmp((1, 0), (0, 1), (3, 5)) == -1
    assert monomial_cmp((1, 1, 0), (0, 0, 1), (1, 2, 3)) == -1
    assert monomial_cmp((0, 0, 1), (1, 1, 0), (1, 2, 3)) == 1
    assert monomial_cmp((2, 1), (2, 1), (3, 5)) == 0
    with pytest.raises(ValueError):
        monomial_cmp((1,), (1, 0), (3, 5))


def test_basis_examples():
    assert monomial_basis(prof("3D4", 3)) == [(0,), (1,), (2,)]
    basis = monomial_basis(prof("2E6", 2))
    assert [weight(m, (3, 5, 9)) for m in basis] == [0, 3, 5, 8, 9, 12, 14, 17]
    assert monomial_basis(make_profile(2, [])) == [()]
    with pytest.raises(CapExceeded):
        monomial_basis(prof("2D8", 2), cap=16)


def test_total_order_small_basis():
    pr = prof("2D6", 2)
    basis = monomial_basis(pr)
    for a, b in itertools.combinations(basis, 2):
        assert monomial_cmp(a, b, pr) == -1
        assert monomial_cmp(b, a, pr) == 1


UNITARY_CASES = {(8, 4): 2, (8, 8): 2, (12, 2): 1, (6, 1): 0, (16, 1): 0, (4, 4): 1}


@pytest.mark.parametrize("deg,ind", sorted(UNITARY_CASES))
def test_unitary_j1(deg, ind):
    j1, k1 = unitary_j1(deg, ind)
    assert j1 == UNITARY_CASES[deg, ind]
    assert k1 == p_valuation(deg // 2, 2)


def test_unitary_properties():
    for deg in range(2, 130, 2):
        for v in range(p_valuation(deg, 2) + 1):
            j1, k1 = unitary_j1(deg, 2**v)
            assert j1 <= k1
            assert j1 == min(k1, v)
    with pytest.raises(IllegalAlgebra):
        unitary_j1(12, 8)
    with pytest.raises(IllegalAlgebra):
        unitary_j1(7, 1)
    with pytest.raises(IllegalAlgebra):
        unitary_j1(12, 3)


def test_orthogonal_j1():
    assert orthogonal_j1(5, 2) == (1, 1)
    assert orthogonal_j1(4, 8) == (0, 0)
    assert orthogonal_j1(7, 1) == (0, 1)
    for n in range(3, 40):
        for v in range(p_valuation(2 * n, 2) + 1):
            j1, k1 = orthogonal_j1(n, 2**v)
            assert j1 <= k1
    with pytest.raises(IllegalAlgebra):
        orthogonal_j1(2, 1)
    with pytest.raises(IllegalAlgebra):
        orthogonal_j1(5, 4)


def test_tits_j2():
    assert tits_j2("unitary", True) == 0
    assert tits_j2("orthogonal", False) == 1
    assert tits_j2("unitary", False) == 1
    with pytest.raises(ValueError):
        tits_j2("symplectic", True)


def test_excellent_form():
    assert excellent_form_jinv((8, 2), prof("2D4", 2)) == (0, 0, 1)
    d8 = prof("2D8", 2)
    assert d8.degrees == (1, 2, 3, 5, 7)
    assert excellent_form_jinv((16, 2), d8) == (0, 0, 0, 0, 1)
    assert excellent_form_jinv((32, 8, 2), prof("2D6", 2)) == (0, 0, 1, 0)
    with pytest.warns(UserWarning):
        assert excellent_form_jinv((16, 2), prof("2D4", 2)) == (0, 0, 0)


@pytest.mark.parametrize("tower", [(4, 2), (8,), (8, 3), (8, 4), (2, 8), (8, 8, 2), (16, 4), (12, 2)])
def test_excellent_form_rejects(tower):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        with pytest.raises(NotExcellentTower):
            excellent_form_jinv(tower, prof("2D4", 2))
