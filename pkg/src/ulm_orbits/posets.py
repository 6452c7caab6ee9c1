"""The fundamental poset P, its subposets P_f, order ideals, admissible Ulm
sequences H_f and the maps between J(P_f) and H_f."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidInput, check_bound
from .module import UlmSequence, ulm_invariants
from .ring import INF


class PElem(NamedTuple):
    """Orbit of p^v in R/p^alpha."""

    v: int
    alpha: int

    def __str__(self):
        return f"({self.v},{self.alpha})"


def p_order(x, y):
    """x >= y in P: y.v >= x.v and y.alpha - y.v <= x.alpha - x.v."""
    return y.v >= x.v and y.alpha - y.v <= x.alpha - x.v


class FinitePoset:
    """A finite poset with its comparability matrix and covering relation.

    ``leq(x, y)`` decides x <= y.  Elements keep the order they were given
    in, which fixes the node order of every rendering.
    """

    def __init__(self, elements, leq, label=str):
        self.elements = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise InvalidInput("duplicate poset elements")
        self._leq = [[bool(leq(x, y)) for y in self.elements] for x in self.elements]
        self.label = label

    def __len__(self):
        return len(self.elements)

    def leq(self, x, y):
        return self._leq[self.index[x]][self.index[y]]

    def is_partial_order(self):
        n = len(self.elements)
        L = self._leq
        return (
            all(L[i][i] for i in range(n))
            and all(not (L[i][j] and L[j][i]) for i in range(n) for j in range(n) if i != j)
            and all(
                L[i][k] for i in range(n) for j in range(n) if L[i][j] for k in range(n) if L[j][k]
            )
        )

    def covers(self):
        """(lower, upper) pairs with nothing strictly between."""
        n = len(self.elements)
        L = self._leq
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not L[i][j]:
                    continue
                if not any(k != i and k != j and L[i][k] and L[k][j] for k in range(n)):
                    out.append((self.elements[i], self.elements[j]))
        return out

    def minimal(self):
        return [x for x in self.elements if not any(y != x and self.leq(y, x) for y in self.elements)]

    def maximal(self):
        return [x for x in self.elements if not any(y != x and self.leq(x, y) for y in self.elements)]

    def longest_chain(self):
        """Number of arrows in a longest strict chain."""
        order = sorted(range(len(self.elements)), key=lambda i: sum(self._leq[i]))
        depth = [0] * len(self.elements)
        for i in order:
            # elements above i have fewer upper bounds, so they were settled first
            depth[i] = max((depth[j] + 1 for j in range(len(self.elements)) if j != i and self._leq[i][j]), default=0)
        return max(depth, default=0)

    def to_dot(self, name="poset"):
        """Hasse diagram with arrows pointing from each element to the ones it covers."""
        lines = [f"digraph {name} {{", "  rankdir=TB;"]
        for i, x in enumerate(self.elements):
            lines.append(f'  n{i} [label="{self.label(x)}"];')
        for lower, upper in self.covers():
            lines.append(f"  n{self.index[upper]} -> n{self.index[lower]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "nodes": [self.label(x) for x in self.elements],
            "covers": [
                {"lower": self.label(lo), "upper": self.label(up)} for lo, up in self.covers()
            ],
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2) + "\n"


def hasse(poset):
    return poset.covers()


# -- P and P_f ------------------------------------------------------------


def _support(shape):
    return tuple(alpha for alpha, _ in shape.multiplicities)


def p_elements(support):
    return [PElem(v, alpha) for alpha in sorted(support) for v in range(alpha)]


def fundamental_poset(max_alpha):
    """P restricted to alpha <= max_alpha."""
    return FinitePoset(p_elements(range(1, max_alpha + 1)), lambda x, y: p_order(y, x))


def build_Pf(shape):
    return FinitePoset(p_elements(_support(shape)), lambda x, y: p_order(y, x))


@dataclass(frozen=True)
class OrderIdeal:
    """Downward closed subset of P_f, stored as its maximal antichain.

    ``support`` lists the alphas present in P_f.
    """

    antichain: tuple
    support: tuple

    @classmethod
    def generated_by(cls, generators, support):
        support = tuple(sorted(support))
        gens = {PElem(*g) for g in generators}
        for g in gens:
            if g.alpha not in support or not 0 <= g.v < g.alpha:
                raise InvalidInput(f"{g} is not an element of P_f")
        maximal = [g for g in gens if not any(h != g and p_order(h, g) for h in gens)]
        return cls(tuple(sorted(maximal, key=lambda e: (e.alpha, e.v))), support)

    def downset(self):
        return frozenset(
            x for x in p_elements(self.support) if any(p_order(g, x) for g in self.antichain)
        )

    def __contains__(self, x):
        return any(p_order(g, x) for g in self.antichain)

    def __le__(self, other):
        return all(g in other for g in self.antichain)

    def __len__(self):
        return len(self.downset())

    def shift(self):
        """I^1 = {(v, alpha) : (v - 1, alpha) in I}."""
        return OrderIdeal.generated_by(
            [PElem(g.v + 1, g.alpha) for g in self.antichain if g.v + 1 < g.alpha],
            self.support,
        )

    def height(self):
        return min((g.v for g in self.antichain), default=INF)

    def __str__(self):
        return "{" + ",".join(str(g) for g in self.antichain) + "}"

    @classmethod
    def parse(cls, text, support):
        text = text.strip()
        if text.startswith("{") and text.endswith("}"):
            text = text[1:-1]
        gens = []
        for a, b in _PAIR.findall(text):
            gens.append(PElem(int(a), int(b)))
        rest = _PAIR.sub("", text).replace(",", "").strip()
        if rest:
            raise InvalidInput(f"cannot parse ideal generators {text!r}")
        return cls.generated_by(gens, support)


_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def ideal_of(shape, a):
    """Order ideal generated by the orbits (valuation, alpha) of the nonzero coordinates."""
    a = shape.check_element(a)
    ring = shape.ring
    gens = [PElem(ring.valuation(x), alpha) for x, alpha in zip(a, shape.orders) if x]
    return OrderIdeal.generated_by(gens, _support(shape))


def ideal_criterion(shape, a, b):
    """a degenerates to b iff I(a) contains I(b)."""
    return ideal_of(shape, b) <= ideal_of(shape, a)


def _antichains(elements, comparable):
    def extend(start, chosen):
        yield tuple(chosen)
        for i in range(start, len(elements)):
            x = elements[i]
            if all(not comparable(x, y) for y in chosen):
                chosen.append(x)
                yield from extend(i + 1, chosen)
                chosen.pop()

    return extend(0, [])


def enumerate_ideals(poset, bound=None):
    """J(P) ordered by inclusion.

    For subposets of P the nodes are :class:`OrderIdeal`; for any other
    poset they are frozensets of elements.
    """
    elements = poset.elements
    comparable = lambda x, y: poset.leq(x, y) or poset.leq(y, x)  # noqa: E731
    is_p = all(isinstance(x, PElem) for x in elements)
    support = tuple(sorted({x.alpha for x in elements})) if is_p else ()
    ideals = []
    for anti in _antichains(elements, comparable):
        if is_p:
            ideals.append(OrderIdeal.generated_by(anti, support))
        else:
            ideals.append(frozenset(x for x in elements if any(poset.leq(x, g) for g in anti)))
        check_bound("number of order ideals", len(ideals), bound)
    if is_p:
        ideals.sort(key=lambda I: (len(I), [(g.alpha, g.v) for g in I.antichain]))
        return FinitePoset(ideals, lambda I, J: I <= J)
    ideals.sort(key=lambda I: (len(I), sorted(map(poset.index.get, I))))
    label = lambda I: "{" + ",".join(str(x) for x in sorted(I, key=poset.index.get)) + "}"  # noqa: E731
    return FinitePoset(ideals, lambda I, J: I <= J, label=label)


# -- admissible Ulm sequences --------------------------------------------


def is_admissible(seq, shape):
    f = ulm_invariants(shape)
    h = seq.finite
    k = shape.exponent
    if any(x >= k for x in h):
        return False
    if h and not f.get(h[-1]):
        return False
    return all(f.get(h[i - 1]) for i in range(1, len(h)) if h[i] > h[i - 1] + 1)


def enumerate_H_f(shape):
    k = shape.exponent
    out = []
    for size in range(k + 1):
        for combo in itertools.combinations(range(k), size):
            seq = UlmSequence(combo)
            if is_admissible(seq, shape):
                out.append(seq)
    return sorted(out, key=lambda s: (len(s), s.finite))


def sequence_leq(s, t):
    """s <= t in H_f iff s_n >= t_n for all n."""
    return s.dominates(t)


def orbit_poset_elements(shape):
    return FinitePoset(enumerate_H_f(shape), sequence_leq)


def kappa(ideal):
    hs = []
    current = ideal
    while current.antichain:
        hs.append(current.height())
        current = current.shift()
    return UlmSequence(tuple(hs))


def ideal_from_sequence(seq, shape):
    """Ideal generated by (h_{i-1} - i + 1, h_{i-1} + 1) at every gap h_i > h_{i-1} + 1,
    the step into the infinite tail included."""
    if not is_admissible(seq, shape):
        raise InvalidInput(f"{seq} is not an admissible Ulm sequence for {shape.describe()}")
    gens = []
    for i in range(1, len(seq) + 1):
        prev = seq[i - 1]
        if seq[i] > prev + 1:
            gens.append(PElem(prev - i + 1, prev + 1))
    return OrderIdeal.generated_by(gens, _support(shape))


def poset_isomorphism_check(P1, P2, mapping=None):
    """Whether the canonical label-matching map P1 -> P2 is an order isomorphism.

    Without ``mapping`` elements are matched to equal elements of P2, which
    is the canonical matching for Ulm sequences and for ideals.
    """
    if len(P1) != len(P2):
        return False
    if mapping is None:
        kinds1 = {type(x) for x in P1.elements}
        kinds2 = {type(x) for x in P2.elements}
        if P1.elements and P2.elements and kinds1 != kinds2:
            raise InvalidInput("posets are labelled by different kinds of objects")
        mapping = {x: x for x in P1.elements}
    elif callable(mapping):
        mapping = {x: mapping(x) for x in P1.elements}
    image = [mapping.get(x) for x in P1.elements]
    if any(y not in P2.index for y in image) or len(set(image)) != len(image):
        return False
    return all(
        P1.leq(x, y) == P2.leq(mapping[x], mapping[y]) for x in P1.elements for y in P1.elements
    )
