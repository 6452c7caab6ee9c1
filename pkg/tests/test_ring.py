import itertools

import pytest
from hypothesis import given, strategies as st

from ulm_orbits.errors import InvalidInput
from ulm_orbits.ring import (
    INF,
    RingSpec,
    Scalar,
    conway_candidate,
    enumerate_residues,
    galois_field,
    prime_power,
    scalar_arith,
    valuation,
)

RINGS = [
    RingSpec.integers(2, 3),
    RingSpec.integers(3, 2),
    RingSpec.integers(5, 2),
    RingSpec.polynomials(2, 3),
    RingSpec.polynomials(3, 2),
    RingSpec.polynomials(4, 2),
]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_bad_specs():
    with pytest.raises(InvalidInput):
        RingSpec("int", 4, 2)
    with pytest.raises(InvalidInput):
        RingSpec("poly", 6, 2)
    with pytest.raises(InvalidInput):
        RingSpec("int", 2, 0)
    with pytest.raises(InvalidInput):
        RingSpec("real", 2, 1)


def test_irreducible_choice():
    # x^2 + x + 1 over F_2, coefficient list lowest degree first
    assert tuple(conway_candidate(2, 2)) == (1, 1, 1)
    F = galois_field(4)
    for x in range(1, 4):
        assert F.mul[x][F.inv[x]] == 1
    assert "x^2+x+1" in RingSpec.polynomials(4, 2).describe()


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_ring_axioms(ring):
    assert len(enumerate_residues(ring, ring.precision)) == ring.size
    elems = list(ring.residues())
    for x, y in itertools.product(elems, repeat=2):
        assert ring.add(x, y) == ring.add(y, x)
        assert ring.mul(x, y) == ring.mul(y, x)
        assert ring.sub(ring.add(x, y), y) == x
    for x, y, z in itertools.islice(itertools.product(elems, repeat=3), 2000):
        assert ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z))
        assert ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_valuation_and_units(ring):
    K = ring.precision
    assert ring.valuation(0) == INF
    counts = {}
    for x in range(ring.size):
        v = ring.valuation(x)
        counts[v] = counts.get(v, 0) + 1
        if ring.is_unit(x):
            assert ring.mul(x, ring.inverse(x)) == 1
        else:
            with pytest.raises(ZeroDivisionError):
                ring.inverse(x)
        if x:
            # x = p^v * unit
            u, w = ring.unit_part(x)
            assert w == v and ring.is_unit(u)
            assert ring.mul(ring.p_power(v), u) == x
    q = ring.q
    for v in range(K):
        assert counts[v] == (q - 1) * q ** (K - v - 1)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_json_and_text_round_trip(ring):
    for x in range(ring.size):
        assert ring.from_json(ring.to_json(x)) == x
        assert ring.parse(ring.format(x)) == x


def test_poly_parse_forms():
    ring = RingSpec.polynomials(2, 3)
    assert ring.parse("1+t") == ring.parse("[1,1]")
    assert ring.valuation(ring.parse("t^2")) == 2
    assert ring.parse("0") == 0
    # terms past the precision vanish in R/p^K
    assert ring.parse("1+t^3") == 1
    assert ring.parse("t", alpha=1) == 0
    with pytest.raises(InvalidInput):
        ring.parse("3t")
    with pytest.raises(InvalidInput):
        ring.parse("banana")


def test_from_json_reduces_and_validates():
    ring = RingSpec.integers(2, 2)
    assert ring.from_json(5) == 1
    assert ring.from_json(3, alpha=1) == 1
    with pytest.raises(InvalidInput):
        ring.from_json("1")
    poly = RingSpec.polynomials(3, 2)
    assert poly.from_json([1, 2, 1]) == poly.parse("1+2t")
    with pytest.raises(InvalidInput):
        poly.from_json([3])


def test_scalar():
    ring = RingSpec.integers(3, 2)
    a, b = Scalar(ring, 4), Scalar(ring, 6)
    assert (a + b).code == 1
    assert (a * b).code == 6
    assert (-a).code == 5
    assert (a - b).code == 7
    assert b.valuation() == 1
    assert valuation(Scalar(ring, 0)) == INF
    assert scalar_arith("mul", a, b) == a * b
    with pytest.raises(InvalidInput):
        a + Scalar(RingSpec.integers(2, 2), 1)


@given(st.integers(0, 2**20), st.integers(1, 6))
def test_int_valuation_matches_trailing_zeros(x, K):
    ring = RingSpec.integers(2, K)
    x %= ring.size
    expected = INF if x == 0 else (x & -x).bit_length() - 1
    assert ring.valuation(x) == expected
