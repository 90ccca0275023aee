import itertools
from functools import lru_cache

import numpy as np
import pytest

from pbeauville.beauville import (
    NotGenerating,
    LiteralSigma,
    beauville_oracle,
    branch_socle_classes,
    catanese_predicate,
    classify_fast,
    direction_triple,
    downstairs_structures,
    generates,
    good_power_criterion,
    is_beauville_structure,
    oracle_coprime_product,
    oracle_with_type,
    realized_direction_triples,
    sigma,
    socle_reduction_exhaustive,
    socle_reduction_sampled,
    tame_wild,
    wild_by_signatures,
)
from pbeauville.forge.search import MetabelianSearchSpec, metabelian_search
from pbeauville.group import ConcreteGroup

from conftest import abelian, from_text, pq


@lru_cache(maxsize=None)
def searched(p, n, target, k=0, max_children=25):
    spec = MetabelianSearchSpec(p, n, max_children=max_children, max_emissions=k + 1, target=target)
    ems = list(metabelian_search(spec))
    return ConcreteGroup(ems[k].presentation)


def elem(G, vec):
    return G.index(vec)


def test_sigma_of_c5_squared():
    G = abelian(5, 5)
    S = (elem(G, (1, 0)), elem(G, (0, 1)))
    # three cyclic subgroups of order 5 sharing the identity
    assert sigma(G, S).size == 13


def test_sigma_needs_generation():
    G = abelian(5, 5)
    x = elem(G, (1, 0))
    with pytest.raises(NotGenerating):
        sigma(G, (x, G.power(x, 2)))


def test_literal_sigma_matches_definition():
    G = pq(5, 3)
    lit = LiteralSigma(G)
    rng = np.random.default_rng(0)
    done = 0
    while done < 20:
        S = tuple(int(v) for v in rng.integers(1, G.order, 2))
        if not generates(G, S):
            continue
        assert (lit.sigma(S) == sigma(G, S)).all()
        done += 1


@pytest.mark.parametrize("p,count", [(3, 0), (5, 10), (7, 280)])
def test_downstairs_counts(p, count):
    assert len(downstairs_structures(p)) == count


def test_downstairs_by_brute_force_c7():
    G = abelian(7, 7)
    triples = realized_direction_triples(G)
    assert len(triples) == 56
    pairs = {tuple(sorted((a, b))) for a, b in itertools.product(triples, repeat=2)
             if not set(a) & set(b)}
    assert len(pairs) == 280


def test_downstairs_structures_are_beauville_c5():
    # on C_p x C_p a pair of generating pairs is a Beauville structure
    # exactly when their direction triples are disjoint
    G = abelian(5, 5)
    gens = [(int(x), int(y)) for x in range(1, 25) for y in range(1, 25) if generates(G, (x, y))]
    rng = np.random.default_rng(1)
    for _ in range(200):
        S1 = gens[rng.integers(len(gens))]
        S2 = gens[rng.integers(len(gens))]
        disjoint = not set(direction_triple(G, S1)) & set(direction_triple(G, S2))
        assert is_beauville_structure(G, S1, S2) == disjoint


@pytest.mark.parametrize("n1,expected", [(2, False), (3, False), (5, True), (7, True), (9, False), (25, True)])
def test_oracle_catanese(n1, expected):
    rep = beauville_oracle(abelian(n1, n1))
    assert rep.is_beauville == expected
    assert catanese_predicate((n1, n1)) == expected
    if expected:
        assert rep.witness is not None and rep.details["witness_reverified"]


def test_oracle_rejects_c25_c5_and_non_two_generated():
    assert beauville_oracle(abelian(25, 5)).decision == "not-beauville"
    assert beauville_oracle(from_text("p 5\nn 3\n")).decision == "not-2-generated"
    assert beauville_oracle(from_text("p 5\nn 2\npow 1 : 2^1\n")).decision == "not-2-generated"


def test_coprime_product():
    assert not oracle_coprime_product([abelian(2, 2), abelian(3, 3)])
    assert oracle_coprime_product([abelian(5, 5), abelian(7, 7)])
    assert not oracle_coprime_product([abelian(5, 5), abelian(3, 3)])


@pytest.mark.parametrize("invariants,expected", [
    ((35, 35), True), ((6, 6), False), ((5, 5), True), ((1, 1), False), ((25, 5), False),
    ((5, 5, 7, 7), True), ((5,), False), ((10, 10), False), ((11, 11), True)])
def test_catanese_predicate(invariants, expected):
    assert catanese_predicate(invariants) == expected


@pytest.mark.parametrize("G", [abelian(5, 5), pq(5, 3), pq(3, 3), from_text("p 5\nn 3\ncomm 2 1 : 3^1\n")],
                         ids=["c5c5", "pq53", "pq33", "heis"])
def test_naive_and_socle_modes_agree(G):
    a = beauville_oracle(G, mode="naive")
    b = beauville_oracle(G, mode="socle")
    assert a.decision == b.decision


def test_order_p4_exponent_25_is_not_beauville():
    G = searched(5, 4, "exponent=25")
    assert G.exponent == 25
    assert beauville_oracle(G).decision == "not-beauville"
    assert classify_fast(G).decision == "not-beauville"


def test_exponent_p_small_groups_are_tame():
    for G in (pq(5, 2), pq(5, 3), pq(5, 4), pq(7, 3)):
        assert oracle_with_type(G).decision == "beauville-tame"
        assert classify_fast(G).decision == "beauville-tame"


def test_p3_is_never_beauville():
    for m in (2, 3, 4):
        assert beauville_oracle(pq(3, m)).decision == "not-beauville"
        assert classify_fast(pq(3, m)).decision == "not-beauville"


def test_tame_wild_requires_verdict():
    G = pq(3, 3)
    rep = beauville_oracle(G)
    with pytest.raises(ValueError):
        tame_wild(G, rep)


def test_vacuous_tameness_below_5():
    from pbeauville.beauville import BeauvilleReport
    G = abelian(3, 3)
    rep = tame_wild(G, BeauvilleReport("beauville", "socle"))
    assert rep.decision == "beauville-tame"


def test_branch_classes_tame_groups():
    G = pq(5, 5)
    per = branch_socle_classes(G)
    assert len(per) == 6
    assert all(not (a & b) for a, b in itertools.combinations(per, 2))
    assert not wild_by_signatures(G)


def test_g1_pair_groups_are_not_beauville():
    G = searched(5, 6, "g1-pair")
    fast = classify_fast(G)
    assert fast.decision == "indeterminate"
    assert fast.details["branch_reading"] == "beauville-wild"
    assert fast.details["mu_reading"] == "not-beauville"
    assert beauville_oracle(G).decision == "not-beauville"


@pytest.mark.slow
def test_wild_witness_at_order_5_7():
    G = searched(5, 7, "mu=2")
    rep = oracle_with_type(G)
    assert rep.decision == "beauville-wild"
    assert rep.lift_witness is not None
    S1, S2 = rep.lift_witness.S1, rep.lift_witness.S2
    assert generates(G, S1) and generates(G, S2)
    assert not is_beauville_structure(G, S1, S2)
    assert classify_fast(G).decision == "beauville-wild"


def test_good_power():
    gp = good_power_criterion(pq(5, 5))
    assert not gp.value and gp.agemo_order == 5 and gp.exponent == 25
    assert good_power_criterion(abelian(25, 25)).value
    assert not good_power_criterion(abelian(3, 3)).value
    with pytest.raises(ValueError):
        good_power_criterion(from_text("p 5\nn 3\n"))


def test_workers_do_not_change_the_answer():
    G = pq(5, 4)
    a = beauville_oracle(G, workers=1)
    b = beauville_oracle(G, workers=2)
    assert a.decision == b.decision
    assert a.witness.S1 == b.witness.S1 and a.witness.S2 == b.witness.S2
    assert a.details == b.details


def test_budget():
    rep = beauville_oracle(pq(5, 4), budget=10)
    assert rep.decision == "indeterminate" and "generating pairs" in rep.details["reason"]


def test_caps():
    assert beauville_oracle(pq(5, 5), mode="naive").decision == "indeterminate"
    with pytest.raises(ValueError):
        beauville_oracle(pq(5, 2), mode="fast")


@pytest.mark.parametrize("G", [abelian(5, 5), pq(5, 3), pq(3, 3), abelian(25, 5)], ids=["c5c5", "pq53", "pq33", "c25c5"])
def test_socle_reduction_exhaustive(G):
    rep = socle_reduction_exhaustive(G)
    assert rep.mismatches == 0 and rep.classes > 0


def test_socle_reduction_sampled():
    rep = socle_reduction_sampled(pq(5, 4), samples=2000, seed=5)
    assert rep.mismatches == 0 and rep.pair_pairs == 2000
