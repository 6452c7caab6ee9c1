import pytest

from ulm_orbits.errors import BoundExceeded, InvalidInput
from ulm_orbits.module import (
    ModuleShape,
    UlmSequence,
    height,
    linear_combination,
    primary_decomposition,
    ulm_invariants,
    ulm_sequence,
)
from ulm_orbits.ring import INF, RingSpec

from conftest import shape


def test_shape_normalization():
    s = ModuleShape(RingSpec.integers(2, 2), {2: 1, 1: 1, 3: 0})
    assert s.multiplicities == ((1, 1), (2, 1))
    assert s.exponent == 2
    assert s.orders == (1, 2)
    assert s.rank == 2 and s.size == 8 and s.log_size == 3
    assert s.factor_labels == ((1, 0), (2, 0))
    assert s.describe() == "(Z/2^1) + (Z/2^2)"


def test_shape_rejects_bad_input():
    with pytest.raises(InvalidInput):
        ModuleShape(RingSpec.integers(2, 3), {1: 1, 2: 1})
    with pytest.raises(InvalidInput):
        ModuleShape.of({0: 1}, 2)
    with pytest.raises(InvalidInput):
        ModuleShape.of({1: -1}, 2)


def test_zero_module():
    z = ModuleShape.of({}, 3)
    assert z.rank == 0 and z.size == 1
    assert list(z.elements()) == [()]
    assert z.height(()) == INF


def test_heights(A1):
    assert height(A1, (0, 0)) == INF
    assert height(A1, (1, 0)) == 0
    assert height(A1, (0, 2)) == 1
    assert height(A1, (1, 2)) == 0
    with pytest.raises(InvalidInput):
        height(A1, (2, 0))


def test_ulm_sequences(A1, A2):
    # the four element orbits of Z/2 + Z/4
    assert str(ulm_sequence(A1, (0, 0))) == "inf"
    assert str(ulm_sequence(A1, (1, 0))) == "0,inf"
    assert str(ulm_sequence(A1, (0, 2))) == "1,inf"
    assert str(ulm_sequence(A1, (0, 1))) == "0,1,inf"
    assert str(ulm_sequence(A2, (1, 2))) == "0,2,inf"


def test_ulm_invariants(A1, A2):
    assert ulm_invariants(A1) == {0: 1, 1: 1}
    assert ulm_invariants(A2) == {0: 1, 2: 1}


def test_ulm_sequence_type():
    s = UlmSequence((0, 2))
    assert s[0] == 0 and s[1] == 2 and s[5] == INF
    assert UlmSequence.parse("0,2,inf") == s
    assert UlmSequence.parse("inf") == UlmSequence(())
    assert UlmSequence((1,)).dominates(UlmSequence((0, 1)))
    assert not UlmSequence((0, 1)).dominates(UlmSequence((1,)))
    with pytest.raises(InvalidInput):
        UlmSequence((2, 1))
    with pytest.raises(InvalidInput):
        UlmSequence.parse("0,inf,3")


def test_arithmetic(A1):
    a, b = (1, 3), (1, 2)
    assert A1.add(a, b) == (0, 1)
    assert A1.scale(3, a) == (1, 1)
    assert A1.p_multiple(a) == (0, 2)
    assert A1.p_multiple(a, 2) == (0, 0)
    assert linear_combination(A1, [a, b], [1, 1]) == (0, 1)
    with pytest.raises(InvalidInput):
        linear_combination(A1, [a], [1, 2])


def test_element_json_round_trip():
    for s in (shape({1: 2, 2: 1}), shape({1: 1, 2: 1}, 2, "poly"), shape({2: 1}, 4, "poly")):
        for a in s.elements():
            doc = s.element_to_json(a)
            assert s.element_from_json(doc) == a
            assert s.parse_element(s.format_element(a)) == a


def test_element_json_shape(A1):
    assert A1.element_to_json((1, 3)) == {"coords": [[1, 0, 1], [2, 0, 3]]}
    assert A1.element_to_json((0, 0)) == {"coords": []}
    with pytest.raises(InvalidInput):
        A1.element_from_json({"coords": [[3, 0, 1]]})
    with pytest.raises(InvalidInput):
        A1.element_from_json([1, 2])


def test_parse_tuple(A1):
    assert A1.parse_tuple("1,0;0,1") == ((1, 0), (0, 1))
    assert A1.parse_tuple("(1,3)") == ((1, 3),)
    with pytest.raises(InvalidInput):
        A1.parse_tuple("1,0,0")
    with pytest.raises(InvalidInput):
        A1.parse_tuple("")


def test_poly_parse_element():
    s = shape({1: 1, 2: 1}, 2, "poly")
    assert s.parse_element("1,1+t") == (1, 3)
    assert s.parse_element("1,[0,1]") == (1, 2)


def test_primary_decomposition():
    shapes = primary_decomposition([12, 18, 5])
    assert sorted(shapes) == [2, 3, 5]
    assert shapes[2].multiplicities == ((1, 1), (2, 1))
    assert shapes[3].multiplicities == ((1, 1), (2, 1))
    assert shapes[5].multiplicities == ((1, 1),)
    for bad in ([1], [0], [2.5], [True]):
        with pytest.raises(InvalidInput):
            primary_decomposition(bad)


def test_enumeration_bound(A1):
    with pytest.raises(BoundExceeded):
        A1.tuples(3, bound=100)
    assert len(list(A1.tuples(2, bound=64))) == 64
