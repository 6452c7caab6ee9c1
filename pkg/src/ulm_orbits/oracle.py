"""Brute-force ground truth: every endomorphism of a small module, the orbit
partition under all automorphisms, and degeneration by direct search.

Nothing here consults heights; the only structure used is that a homomorphism
is fixed by the images of the canonical generators.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import check_bound
from .orbits import HomTable


@dataclass
class EndoSet:
    shape: object
    tables: list

    @property
    def count(self):
        return len(self.tables)

    @property
    def automorphism_count(self):
        return sum(t.is_automorphism for t in self.tables)

    def automorphisms(self):
        return [t for t in self.tables if t.is_automorphism]


def torsion_elements(shape, alpha):
    """A[p^alpha], in element order."""
    return [x for x in shape.elements() if not any(shape.p_multiple(x, alpha))]


def endomorphism_count(shape):
    """prod over cyclic factors R/p^alpha of |A[p^alpha]| = q^(sum_beta min(alpha, beta) m_beta)."""
    return math.prod(
        shape.q ** sum(min(alpha, beta) * m for beta, m in shape.multiplicities)
        for alpha in shape.orders
    )


def enumerate_endomorphisms(shape, bound=None):
    choices = [torsion_elements(shape, alpha) for alpha in shape.orders]
    check_bound("endomorphism count", math.prod(len(c) for c in choices), bound)
    tables = []
    for images in itertools.product(*choices):
        t = HomTable(shape, shape, images)
        if t.is_bijective():
            t = HomTable(shape, shape, images, is_automorphism=True)
        tables.append(t)
    return EndoSet(shape, tables)


def enumerate_automorphisms(shape, bound=None):
    endo = enumerate_endomorphisms(shape, bound)
    return EndoSet(shape, endo.automorphisms())


def _apply_all(tables, t):
    return {tuple(g.mapping[a] for a in t) for g in tables}


def brute_orbits(shape, n, bound=None, automorphisms=None):
    """Orbits of the diagonal action on A^n, each a sorted list of tuples."""
    check_bound(f"number of {n}-tuples", shape.size**n, bound)
    autos = (automorphisms or enumerate_automorphisms(shape, bound)).tables
    seen = set()
    orbits = []
    for t in shape.tuples(n, bound):
        if t in seen:
            continue
        orbit = _apply_all(autos, t)
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


class DegenerationOracle:
    """Caches the endomorphic images of each tuple."""

    def __init__(self, shape, bound=None, endomorphisms=None):
        self.shape = shape
        self.endo = endomorphisms or enumerate_endomorphisms(shape, bound)
        self._images = {}

    def images(self, t):
        t = tuple(tuple(a) for a in t)
        out = self._images.get(t)
        if out is None:
            out = self._images[t] = _apply_all(self.endo.tables, t)
        return out

    def degenerates(self, a, b):
        return tuple(tuple(x) for x in b) in self.images(a)

    def witness(self, a, b):
        b = tuple(tuple(x) for x in b)
        for g in self.endo.tables:
            if tuple(g.mapping[x] for x in a) == b:
                return g
        return None


def brute_degenerates(shape, a, b, bound=None):
    return DegenerationOracle(shape, bound).degenerates(a, b)
