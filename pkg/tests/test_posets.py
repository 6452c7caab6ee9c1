import itertools

import pytest

from ulm_orbits.errors import InvalidInput
from ulm_orbits.module import UlmSequence, ulm_sequence
from ulm_orbits.posets import (
    FinitePoset,
    OrderIdeal,
    PElem,
    build_Pf,
    enumerate_H_f,
    enumerate_ideals,
    fundamental_poset,
    hasse,
    ideal_criterion,
    ideal_from_sequence,
    ideal_of,
    is_admissible,
    kappa,
    orbit_poset_elements,
    p_order,
    poset_isomorphism_check,
)
from ulm_orbits.orbits import degenerates, element_orbit_poset

from conftest import shape

S = UlmSequence.parse


def labels(P):
    return [str(x) for x in P.elements]


def test_p_order():
    assert p_order(PElem(0, 2), PElem(1, 3))
    assert p_order(PElem(0, 2), PElem(0, 1))
    assert p_order(PElem(1, 3), PElem(1, 3))
    assert not p_order(PElem(0, 1), PElem(0, 2))


def test_fundamental_poset_matches_figure():
    # the twelve covering edges drawn for alpha <= 4
    P = fundamental_poset(4)
    assert P.is_partial_order()
    edges = {(str(lo), str(up)) for lo, up in P.covers()}
    expected = {
        ("(0,1)", "(0,2)"), ("(1,2)", "(0,1)"), ("(0,2)", "(0,3)"), ("(1,3)", "(0,2)"),
        ("(1,2)", "(1,3)"), ("(2,3)", "(1,2)"), ("(0,3)", "(0,4)"), ("(1,4)", "(0,3)"),
        ("(1,3)", "(1,4)"), ("(2,4)", "(1,3)"), ("(2,3)", "(2,4)"), ("(3,4)", "(2,3)"),
    }
    assert edges == expected


def test_Pf(A1, A2):
    P = build_Pf(A1)
    assert set(labels(P)) == {"(0,1)", "(0,2)", "(1,2)"}
    assert {(str(a), str(b)) for a, b in hasse(P)} == {("(1,2)", "(0,1)"), ("(0,1)", "(0,2)")}
    assert P.longest_chain() == 2
    assert set(labels(build_Pf(A2))) == {"(0,1)", "(0,3)", "(1,3)", "(2,3)"}
    assert len(build_Pf(shape({}))) == 0


def test_ideal_of(A1):
    I = ideal_of(A1, (1, 2))
    assert str(I) == "{(0,1)}"
    assert I.downset() == {PElem(0, 1), PElem(1, 2)}
    assert ideal_of(A1, (0, 0)).downset() == frozenset()
    assert ideal_of(A1, (0, 1)).downset() == {PElem(0, 2), PElem(1, 2), PElem(0, 1)}


def test_ideal_criterion_matches_degeneration(A1, A2):
    assert ideal_criterion(A1, (0, 1), (1, 0))
    # e_1 -> (0,2) is an endomorphism, so (1,0) degenerates to (0,2) but not back
    assert ideal_criterion(A1, (1, 0), (0, 2))
    assert not ideal_criterion(A1, (0, 2), (1, 0))
    for s in (A1, A2, shape({1: 2, 2: 1}), shape({2: 1, 3: 1}, 3)):
        elems = list(s.elements())
        for a, b in itertools.product(elems, repeat=2):
            assert ideal_criterion(s, a, b) == degenerates(s, (a,), (b,))


def test_ideal_lattices():
    J = enumerate_ideals(build_Pf(shape({1: 1, 2: 1})))
    assert len(J) == 4 and J.longest_chain() == 3
    assert len(enumerate_ideals(FinitePoset([], lambda x, y: True))) == 1
    anti = FinitePoset(["a", "b"], lambda x, y: x == y)
    diamond = enumerate_ideals(anti)
    assert len(diamond) == 4 and len(diamond.covers()) == 4


def test_H_f(A1, A2):
    assert [str(s) for s in enumerate_H_f(A1)] == ["inf", "0,inf", "1,inf", "0,1,inf"]
    assert {str(s) for s in enumerate_H_f(A2)} == {
        "inf", "0,inf", "2,inf", "0,2,inf", "1,2,inf", "0,1,2,inf"
    }
    assert [str(s) for s in enumerate_H_f(shape({1: 1}))] == ["inf", "0,inf"]
    assert not is_admissible(S("1,inf"), A2)
    assert not is_admissible(S("0,1,inf"), A2)


def test_H_f_order(A1, A2):
    H = orbit_poset_elements(A1)
    assert H.longest_chain() == 3
    # termwise domination: (1,2) dominates (0,2)
    H2 = orbit_poset_elements(A2)
    assert H2.leq(S("1,2,inf"), S("0,2,inf"))
    assert H2.leq(S("inf"), S("0,inf"))
    assert H2.minimal() == [S("inf")]
    assert H2.maximal() == [S("0,1,2,inf")]


def test_kappa():
    support = (1, 2)
    assert kappa(OrderIdeal.generated_by([], support)) == S("inf")
    assert kappa(OrderIdeal.generated_by([(0, 1)], support)) == S("0,inf")
    assert kappa(OrderIdeal.generated_by([(0, 2)], support)) == S("0,1,inf")


def test_ideal_from_sequence(A1, A2):
    assert str(ideal_from_sequence(S("0,1,inf"), A1)) == "{(0,2)}"
    I = ideal_from_sequence(S("0,2,inf"), A2)
    assert str(I) == "{(0,1),(1,3)}"
    assert I.downset() == {PElem(0, 1), PElem(1, 3), PElem(2, 3)}
    assert str(ideal_from_sequence(S("inf"), A2)) == "{}"
    with pytest.raises(InvalidInput):
        ideal_from_sequence(S("1,inf"), A2)


@pytest.mark.parametrize(
    "mults", [{1: 1}, {1: 1, 2: 1}, {1: 1, 3: 1}, {2: 1, 4: 1}, {1: 1, 2: 1, 3: 1, 4: 1}]
)
def test_dictionary_is_order_isomorphism(mults):
    s = shape(mults)
    H = orbit_poset_elements(s)
    J = enumerate_ideals(build_Pf(s))
    assert len(H) == len(J)
    for seq in H.elements:
        assert kappa(ideal_from_sequence(seq, s)) == seq
    for I in J.elements:
        assert ideal_from_sequence(kappa(I), s) == I
    assert poset_isomorphism_check(H, J, lambda q: ideal_from_sequence(q, s))


def test_element_orbit_poset_is_H_f(A1, A2):
    for s in (A1, A2, shape({1: 1, 2: 1}, 3), shape({1: 1, 2: 1}, 2, "poly")):
        E = element_orbit_poset(s)
        assert poset_isomorphism_check(E, orbit_poset_elements(s))
        realized = {ulm_sequence(s, a) for a in s.elements()}
        assert realized == set(enumerate_H_f(s))


def test_isomorphism_check_cases(A1, A2):
    H1 = orbit_poset_elements(A1)
    assert poset_isomorphism_check(H1, orbit_poset_elements(shape({1: 1, 2: 1}, 2, "poly")))
    assert poset_isomorphism_check(H1, orbit_poset_elements(shape({1: 1, 2: 1}, 3)))
    assert not poset_isomorphism_check(H1, orbit_poset_elements(A2))
    with pytest.raises(InvalidInput):
        poset_isomorphism_check(H1, enumerate_ideals(build_Pf(A1)))


def test_order_ideal_parse():
    I = OrderIdeal.parse("{(0,1),(1,3)}", (1, 3))
    assert str(I) == "{(0,1),(1,3)}"
    assert OrderIdeal.parse("{}", (1, 3)) == OrderIdeal.generated_by([], (1, 3))
    # non-maximal generators are dropped
    assert str(OrderIdeal.parse("{(0,2),(1,2)}", (1, 2))) == "{(0,2)}"
    with pytest.raises(InvalidInput):
        OrderIdeal.parse("{(0,4)}", (1, 3))
    with pytest.raises(InvalidInput):
        OrderIdeal.parse("{(0,1) junk}", (1, 3))


def test_dot_and_json(A1):
    H = orbit_poset_elements(A1)
    dot = H.to_dot("Hf")
    assert dot.startswith("digraph Hf {")
    assert dot.count("->") == 3
    doc = H.to_json()
    assert doc["nodes"] == ["inf", "0,inf", "1,inf", "0,1,inf"]
    assert {"lower": "inf", "upper": "1,inf"} in doc["covers"]
    assert build_Pf(shape({})).to_dot().count("->") == 0
