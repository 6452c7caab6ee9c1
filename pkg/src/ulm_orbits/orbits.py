"""Orbits and degenerations of tuples and submodules, decided through height tables.

Two n-tuples are in one automorphism orbit exactly when their height tables
M_0, ..., M_k coincide, and a degenerates to b exactly when M_h(a) is contained
in M_h(b) for every h.  Constructive versions build the homomorphism or
automorphism generator by generator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import InvalidInput, NotHeightIncreasing, NotSameOrbit, check_bound
from .linear import (
    height_table,
    howell_form,
    includes,
    log_cardinality,
    reduce_vector,
)
from .module import ModuleShape, ulm_sequence
from .posets import FinitePoset


@dataclass(frozen=True)
class HomTable:
    """A homomorphism given by the images of the canonical generators."""

    domain: ModuleShape
    codomain: ModuleShape
    images: tuple
    is_automorphism: bool = False

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(tuple(x) for x in self.images))
        if len(self.images) != self.domain.rank:
            raise InvalidInput(f"need {self.domain.rank} generator images")
        for x in self.images:
            self.codomain.check_element(x)

    def is_well_defined(self):
        """Each image of e_{alpha,i} is killed by p^alpha."""
        return all(
            not any(self.codomain.p_multiple(x, alpha))
            for x, alpha in zip(self.images, self.domain.orders)
        )

    def apply(self, a):
        return self.codomain.combine(self.images, a)

    @cached_property
    def mapping(self):
        return {a: self.apply(a) for a in self.domain.elements()}

    def is_bijective(self):
        return self.domain == self.codomain and len(set(self.mapping.values())) == self.domain.size

    def is_additive(self):
        """Additivity checked on every pair of generators and generator multiples."""
        D = self.domain
        gens = D.generators()
        for x, y in itertools.combinations_with_replacement(gens, 2):
            if self.apply(D.add(x, y)) != self.codomain.add(self.apply(x), self.apply(y)):
                return False
        return all(
            self.apply(D.scale(r, x)) == self.codomain.scale(r, self.apply(x))
            for x in gens
            for r in D.ring.residues()
        )

    def to_json(self):
        return {
            "generators": [
                {"factor": [alpha, i], "image": self.codomain.element_to_json(x)}
                for (alpha, i), x in zip(self.domain.factor_labels, self.images)
            ],
            "is_automorphism": self.is_automorphism,
        }


def identity_table(shape):
    return HomTable(shape, shape, shape.generators(), is_automorphism=True)


# -- criteria ----------------------------------------------------------------


def _common_precision(shape_a, shape_b):
    ra, rb = shape_a.ring, shape_b.ring
    if (ra.kind, ra.q) != (rb.kind, rb.q):
        raise InvalidInput("tuples live over different rings")
    return max(ra.precision, rb.precision)


def _check_tuples(shape_a, a, shape_b, b):
    a = tuple(shape_a.check_element(tuple(x)) for x in a)
    b = tuple(shape_b.check_element(tuple(x)) for x in b)
    if len(a) != len(b) or not a:
        raise InvalidInput(f"tuple lengths differ or are empty: {len(a)} vs {len(b)}")
    return a, b


def fingerprint(shape, elements, method="auto"):
    """The height table M_0..M_k; a complete orbit invariant."""
    return height_table(shape, elements, method)


def _check_lengths(a, b):
    if len(a) != len(b) or not len(a):
        raise InvalidInput(f"tuple lengths differ or are empty: {len(a)} vs {len(b)}")


def same_orbit(shape, a, b, method="auto"):
    _check_lengths(a, b)
    return height_table(shape, a, method) == height_table(shape, b, method)


@lru_cache(maxsize=1 << 16)
def table_degenerates(table_a, table_b):
    return all(includes(Mb, Ma) for Ma, Mb in zip(table_a, table_b))


def degeneration_witness(shape_a, a, shape_b, b, method="auto"):
    """None if a -> b, else (r, h) with h(sum r_i a_i) >= h > h(sum r_i b_i)."""
    a, b = _check_tuples(shape_a, a, shape_b, b)
    K = _common_precision(shape_a, shape_b)
    Ta = height_table(shape_a, a, method, precision=K)
    Tb = height_table(shape_b, b, method, precision=K)
    for h, (Ma, Mb) in enumerate(zip(Ta, Tb)):
        for row in Ma.rows:
            if any(reduce_vector(Mb, row)):
                return row, h
    return None


def degenerates(shape, a, b, shape_b=None, method="auto"):
    """Whether some homomorphism carries a_i to b_i (b may live in ``shape_b``)."""
    shape_b = shape if shape_b is None else shape_b
    if shape_b is shape:
        _check_lengths(a, b)
        return table_degenerates(height_table(shape, a, method), height_table(shape, b, method))
    return degeneration_witness(shape, a, shape_b, b, method) is None


def n_invariant(shape, a):
    """sum_{h=0}^k log_q |M_h(a) / p^k R^n|."""
    return sum(log_cardinality(M) for M in height_table(shape, tuple(a)))


# -- orbit enumeration -------------------------------------------------------


@dataclass
class TupleOrbit:
    fingerprint: tuple
    representative: tuple
    size: int = 0

    @property
    def n_invariant(self):
        return sum(log_cardinality(M) for M in self.fingerprint)


def enumerate_tuple_orbits(shape, n, bound=None):
    """Partition A^n by height table; representatives are first in tuple order."""
    if n < 1:
        raise InvalidInput("n must be positive")
    orbits = {}
    for t in shape.tuples(n, bound):
        fp = height_table(shape, t)
        orbit = orbits.get(fp)
        if orbit is None:
            orbit = orbits[fp] = TupleOrbit(fp, t)
        orbit.size += 1
    return list(orbits.values())


def orbit_poset(shape, n, bound=None, orbits=None):
    """Degeneration poset on tuple orbits; x <= y when y degenerates to x."""
    orbits = enumerate_tuple_orbits(shape, n, bound) if orbits is None else orbits
    orbits = sorted(orbits, key=lambda o: (-o.n_invariant, o.representative))
    by_fp = {o.fingerprint: o for o in orbits}

    def leq(x, y):
        return table_degenerates(by_fp[y].fingerprint, by_fp[x].fingerprint)

    def label(fp):
        rep = by_fp[fp].representative
        return ";".join(shape.format_element(a) for a in rep)

    return FinitePoset([o.fingerprint for o in orbits], leq, label=label)


def element_orbit_poset(shape, bound=None):
    """Degeneration poset of element orbits, labelled by Ulm sequence."""
    orbits = enumerate_tuple_orbits(shape, 1, bound)
    seqs = {ulm_sequence(shape, o.representative[0]): o.fingerprint for o in orbits}
    if len(seqs) != len(orbits):
        raise AssertionError("distinct element orbits share an Ulm sequence")
    elements = sorted(seqs, key=lambda s: (len(s), s.finite))
    return FinitePoset(elements, lambda s, t: table_degenerates(seqs[t], seqs[s]))


def chain_depth(shape, n, bound=None):
    """Arrows in a longest strict degeneration chain of n-tuple orbits."""
    orbits = sorted(enumerate_tuple_orbits(shape, n, bound), key=lambda o: -o.n_invariant)
    # a strict degeneration raises N, so deeper orbits come later in this order
    longest = {}
    for i, o in enumerate(orbits):
        best = 0
        for prev in orbits[:i]:
            if prev.n_invariant > o.n_invariant and table_degenerates(o.fingerprint, prev.fingerprint):
                best = max(best, longest[prev.fingerprint] + 1)
        longest[o.fingerprint] = best
    return max(longest.values(), default=0)


def _is_zero_tuple(t):
    return not any(any(a) for a in t)


def exhaustive_atoms(shape, n, bound=None):
    """Orbits whose only degenerations are themselves and the zero orbit."""
    orbits = enumerate_tuple_orbits(shape, n, bound)
    nonzero = [o for o in orbits if not _is_zero_tuple(o.representative)]
    return [
        o
        for o in nonzero
        if not any(
            other is not o and table_degenerates(o.fingerprint, other.fingerprint)
            for other in nonzero
        )
    ]


def element_atoms(shape, bound=None):
    if not shape.rank:
        raise InvalidInput("the zero module has no atoms")
    return {ulm_sequence(shape, o.representative[0]) for o in exhaustive_atoms(shape, 1, bound)}


def atom_element(shape):
    """p^h e with e a generator of R/p^(h+1), h the largest height of a p-torsion element."""
    alpha = shape.exponent
    j = shape.orders.index(alpha)
    a = [0] * shape.rank
    a[j] = shape.ring.p_power(alpha - 1)
    return tuple(a)


def tuple_atoms(shape, n):
    """Atom orbit representatives built from one element atom a with pa = 0:
    the first nonzero entry is a and every later entry is r*a with r in R/p."""
    if n < 1:
        raise InvalidInput("n must be positive")
    if not shape.rank:
        return []
    a = atom_element(shape)
    zero = shape.zero()
    reps = {}
    for first in range(n):
        for tail in itertools.product(shape.ring.residues(1), repeat=n - first - 1):
            t = (zero,) * first + (a,) + tuple(shape.scale(r, a) for r in tail)
            reps.setdefault(height_table(shape, t), t)
    return sorted(reps.values())


# -- constructive extension --------------------------------------------------


def _annihilated_by(shape, alpha):
    return [x for x in shape.elements() if not any(shape.p_multiple(x, alpha))]


def extend_homomorphism(shape_a, shape_b, s, t):
    """A homomorphism A -> B with s_i -> t_i, built one generator at a time.

    Each generator e_{alpha,i} of A receives the first image x in B (residue
    order) with p^alpha x = 0 such that the enlarged assignment is still height
    increasing; such an x always exists.
    """
    s, t = _check_tuples(shape_a, s, shape_b, t)
    witness = degeneration_witness(shape_a, s, shape_b, t)
    if witness is not None:
        raise NotHeightIncreasing(*witness)
    dom, img = list(s), list(t)
    images = []
    for e, alpha in zip(shape_a.generators(), shape_a.orders):
        for x in _annihilated_by(shape_b, alpha):
            if degeneration_witness(shape_a, dom + [e], shape_b, img + [x], method="kernel") is None:
                break
        else:
            raise AssertionError(f"no image found for generator {e}")
        dom.append(e)
        img.append(x)
        images.append(x)
    return HomTable(shape_a, shape_b, images)


def build_automorphism(shape, a, b):
    """Automorphism with a_i -> b_i by back-and-forth over the canonical generators.

    Step 2j-1 extends the forward map to the j-th generator of A, step 2j
    extends the inverse map to the j-th generator; each new pair is the first
    candidate (residue order) keeping the partial map height-preserving.
    """
    a, b = _check_tuples(shape, a, shape, b)
    if not same_orbit(shape, a, b):
        raise NotSameOrbit("tuples are not in the same automorphism orbit")
    xs, ys = list(a), list(b)
    elements = list(shape.elements())
    ulm = {x: ulm_sequence(shape, x) for x in elements}

    def match(target, forward):
        for c in elements:
            if ulm[c] != ulm[target]:
                continue
            left = xs + [target] if forward else xs + [c]
            right = ys + [c] if forward else ys + [target]
            if height_table(shape, left, "kernel") == height_table(shape, right, "kernel"):
                return c
        raise AssertionError("back-and-forth step found no partner")

    images = []
    for e in shape.generators():
        y = match(e, forward=True)
        xs.append(e)
        ys.append(y)
        images.append(y)
        x = match(e, forward=False)
        xs.append(x)
        ys.append(e)
    return HomTable(shape, shape, images, is_automorphism=True)


# -- submodules --------------------------------------------------------------


def embed(shape, a):
    """Coordinates of a in (R/p^k)^m, the factor R/p^alpha sitting at p^(k-alpha)."""
    ring = shape.ring
    k = ring.precision
    return tuple(ring.mul(ring.p_power(k - alpha), x) for x, alpha in zip(a, shape.orders))


def submodule_form(shape, gens):
    return howell_form(shape.ring, shape.rank, [embed(shape, g) for g in gens])


def submodule_elements(shape, gens, bound=None):
    out = {shape.zero()}
    for g in gens:
        g = shape.check_element(tuple(g))
        multiples = {shape.scale(r, g) for r in shape.ring.residues()}
        out = {shape.add(s, m) for s in out for m in multiples}
        check_bound("submodule size", len(out), bound)
    return out


def minimal_generators(shape, gens, bound=None):
    """A generating tuple of <gens> of least length (a basis of S/pS lifted)."""
    S = sorted(submodule_elements(shape, gens, bound))
    pS = {shape.p_multiple(x) for x in S}
    chosen = []
    target = log_cardinality(submodule_form(shape, S)) if S else 0
    span_size = log_cardinality(submodule_form(shape, list(pS)))
    for x in S:
        if span_size == target:
            break
        size = log_cardinality(submodule_form(shape, list(pS) + chosen + [x]))
        if size > span_size:
            chosen.append(x)
            span_size = size
    return tuple(chosen)


def _generates(shape, candidate, target_form):
    return submodule_form(shape, candidate) == target_form


def _submodule_search(shape, S, T, test, bound=None):
    S = tuple(shape.check_element(tuple(x)) for x in S)
    T = tuple(shape.check_element(tuple(x)) for x in T)
    s_min = minimal_generators(shape, S, bound)
    t_form = submodule_form(shape, T)
    t_min = minimal_generators(shape, T, bound)
    if not t_min:
        s_min = s_min or (shape.zero(),)
        u = (shape.zero(),) * len(s_min)
        return (s_min, u) if test(s_min, u) else None
    if len(s_min) < len(t_min):
        return None
    t_elems = sorted(submodule_elements(shape, T, bound))
    check_bound("submodule generator search", len(t_elems) ** len(s_min), bound)
    for u in itertools.product(t_elems, repeat=len(s_min)):
        if test(s_min, u) and _generates(shape, u, t_form):
            return s_min, u
    return None


def submodule_degeneration_witness(shape, S, T, bound=None):
    """(s, u) with s generating S, u generating T and s -> u, or None."""
    return _submodule_search(shape, S, T, lambda s, u: degenerates(shape, s, u), bound)


def submodule_degenerates(shape, S, T, bound=None):
    """Some endomorphism maps <S> onto <T>."""
    return submodule_degeneration_witness(shape, S, T, bound) is not None


def submodule_same_orbit(shape, S, T, bound=None):
    return submodule_degenerates(shape, S, T, bound) and submodule_degenerates(shape, T, S, bound)


def submodule_orbit_witness(shape, S, T, bound=None):
    """An automorphism mapping <S> onto <T>, or None."""
    found = _submodule_search(shape, S, T, lambda s, u: same_orbit(shape, s, u), bound)
    if found is None:
        return None
    return build_automorphism(shape, *found)
