import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pbeauville.forge import (
    PQuotientSpec,
    check_ring_bridge,
    construct_abelian,
    construct_pquotient,
    ring_model,
    ring_model_multiply,
)
from pbeauville.group import ConcreteGroup, abelian_invariants
from pbeauville.maxclass import is_maximal_class
from pbeauville.pc import check_consistency


def test_ring_examples():
    p, m = 5, 4
    R = ring_model(p, m)
    zero = np.zeros(p - 1, dtype=np.int64)
    a, i = ring_model_multiply(p, m, (zero, 1), (zero, p - 1))
    assert not a.any() and i == 0
    x = R.reduce(R.pi_power(1))
    y = R.reduce(R.pi_power(2))
    a, i = ring_model_multiply(p, m, (x, 0), (y, 0))
    assert (a == R.reduce(x + y)).all() and i == 0


def test_ring_ideal_has_right_index():
    for p, m in [(3, 4), (5, 3), (7, 2), (5, 7)]:
        R = ring_model(p, m)
        assert int(np.prod(R.moduli)) == p**m
        assert R.elements().shape == (p**m, p - 1)
        # pi^m reduces to zero
        assert not R.reduce(R.pi_power(m)).any()


def test_digits_roundtrip():
    R = ring_model(5, 4)
    for v in R.elements()[::17]:
        d = R.digits(v)
        rebuilt = sum(c * R.pi_power(k) for k, c in enumerate(d))
        assert (R.reduce(rebuilt) == R.reduce(v)).all()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5**4 - 1), st.integers(0, 5**4 - 1), st.integers(0, 5**4 - 1),
       st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_ring_associative(x, y, z, i, j, k):
    R = ring_model(5, 4)
    E = R.elements()
    X, Y, Z = (E[x], i), (E[y], j), (E[z], k)
    a1, i1 = R.multiply(R.multiply(X, Y), Z)
    a2, i2 = R.multiply(X, R.multiply(Y, Z))
    assert (a1 == a2).all() and i1 == i2


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-40, 40), min_size=4, max_size=4))
def test_reduction_is_canonical(v):
    R = ring_model(5, 3)
    v = np.array(v, dtype=np.int64)
    r = R.reduce(v)
    assert (R.reduce(r) == r).all()
    assert (R.reduce(v + R.pi_power(3) * 7 - R.pi_power(5)) == r).all()
    assert ((0 <= r) & (r < np.maximum(R.moduli, 1))).all()


@pytest.mark.parametrize("p,m", [(3, 2), (3, 4), (5, 2), (5, 4), (7, 2), (7, 3)])
def test_bridge_exhaustive(p, m):
    res = check_ring_bridge(p, m)
    assert res.ok and res.checked == (m + 1) * p ** (m + 1)


def test_bridge_sampled_small():
    res = check_ring_bridge(5, 5, samples=20_000, seed=3)
    assert res.ok and res.checked == 20_000


@pytest.mark.parametrize("p,m", [(5, 1), (5, 3), (3, 5), (7, 4)])
def test_pquotient_is_maximal_class(p, m):
    pres = construct_pquotient(PQuotientSpec(p, m))
    assert check_consistency(pres).ok
    G = ConcreteGroup(pres)
    assert G.order == PQuotientSpec(p, m).order
    if m >= 2:
        assert is_maximal_class(G)


def test_pquotient_exponents():
    assert ConcreteGroup(construct_pquotient((5, 4))).exponent == 5
    assert ConcreteGroup(construct_pquotient((5, 5))).exponent == 25
    assert ConcreteGroup(construct_pquotient((3, 3))).exponent == 9


@pytest.mark.parametrize("bad", [(2, 3), (5, 0), (11, 2), (5, 9)])
def test_pquotient_envelope(bad):
    with pytest.raises(ValueError):
        construct_pquotient(bad)


@pytest.mark.parametrize("n1,n2,inv", [(5, 5, (5, 5)), (25, 5, (25, 5)), (9, 27, (27, 9)),
                                       (2, 1, (2,)), (8, 4, (8, 4))])
def test_construct_abelian(n1, n2, inv):
    G = ConcreteGroup(construct_abelian(n1, n2))
    assert G.order == n1 * n2 and G.is_abelian()
    assert abelian_invariants(G) == inv


@pytest.mark.parametrize("n1,n2", [(6, 6), (5, 3), (1, 1), (0, 5)])
def test_construct_abelian_errors(n1, n2):
    with pytest.raises(ValueError):
        construct_abelian(n1, n2)


def test_construct_deterministic():
    from pbeauville.pc import format_presentation
    a = format_presentation(construct_pquotient((5, 6)))
    b = format_presentation(construct_pquotient((5, 6)))
    assert a == b
