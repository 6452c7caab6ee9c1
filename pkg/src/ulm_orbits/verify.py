"""Oracle-equivalence suites run by ``ulm-orbits verify``.

Each suite returns a :class:`SuiteResult`; a suite fails on the first
counterexample and reports it in ``detail``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import orbits as orb
from . import posets as pos
from .module import ulm_sequence
from .oracle import (
    DegenerationOracle,
    EndoSet,
    brute_orbits,
    endomorphism_count,
    enumerate_endomorphisms,
)

PAIR_LIMIT = 10**6
PAIR_SAMPLE = 10**4


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


class Context:
    """Shared enumerations for one (shape, n)."""

    def __init__(self, shape, n, bound=None, seed=0):
        self.shape = shape
        self.n = n
        self.bound = bound
        self.rng = random.Random(seed)
        self.endo = enumerate_endomorphisms(shape, bound)
        self.autos = [t for t in self.endo.tables if t.is_automorphism]
        self.tuples = list(shape.tuples(n, bound))
        self.orbits = orb.enumerate_tuple_orbits(shape, n, bound)
        self.oracle = DegenerationOracle(shape, endomorphisms=self.endo)

    def pairs(self):
        """All ordered tuple pairs, or a fixed-seed sample past 10^6 pairs."""
        total = len(self.tuples) ** 2
        if total <= PAIR_LIMIT:
            return itertools.product(self.tuples, repeat=2)
        return [
            (self.rng.choice(self.tuples), self.rng.choice(self.tuples)) for _ in range(PAIR_SAMPLE)
        ]


def barker_suite(ctx):
    brute = brute_orbits(ctx.shape, ctx.n, ctx.bound, EndoSet(ctx.shape, ctx.autos))
    brute_parts = {frozenset(o) for o in brute}
    by_fp = {}
    for t in ctx.tuples:
        by_fp.setdefault(orb.fingerprint(ctx.shape, t), set()).add(t)
    parts = {frozenset(o) for o in by_fp.values()}
    ok = parts == brute_parts
    return SuiteResult(
        "barker-vs-oracle", ok, f"{len(parts)} fingerprint classes, {len(brute_parts)} brute orbits"
    )


def degeneration_suite(ctx):
    checked = 0
    for a, b in ctx.pairs():
        crit = orb.degenerates(ctx.shape, a, b)
        if crit != ctx.oracle.degenerates(a, b):
            return SuiteResult("degeneration-vs-oracle", False, f"disagreement at {a} -> {b}")
        checked += 1
    return SuiteResult("degeneration-vs-oracle", True, f"{checked} pairs")


def mutual_suite(ctx):
    checked = 0
    for a, b in ctx.pairs():
        mutual = orb.degenerates(ctx.shape, a, b) and orb.degenerates(ctx.shape, b, a)
        if mutual != orb.same_orbit(ctx.shape, a, b):
            return SuiteResult("mutual-degeneration", False, f"counterexample {a}, {b}")
        if mutual and not (ctx.oracle.degenerates(a, b) and ctx.oracle.degenerates(b, a)):
            return SuiteResult("mutual-degeneration", False, f"no endomorphism for {a}, {b}")
        checked += 1
    return SuiteResult("mutual-degeneration", True, f"{checked} pairs")


def dictionary_suite(shape):
    J = pos.enumerate_ideals(pos.build_Pf(shape))
    H = pos.orbit_poset_elements(shape)
    for seq in H.elements:
        if pos.kappa(pos.ideal_from_sequence(seq, shape)) != seq:
            return SuiteResult("dictionary-round-trip", False, f"kappa(I({seq})) differs")
    for ideal in J.elements:
        if pos.ideal_from_sequence(pos.kappa(ideal), shape) != ideal:
            return SuiteResult("dictionary-round-trip", False, f"I(kappa({ideal})) differs")
    iso = pos.poset_isomorphism_check(H, J, lambda s: pos.ideal_from_sequence(s, shape))
    return SuiteResult("dictionary-round-trip", iso, "" if iso else "maps are not order isomorphisms")


def orbit_count_suite(ctx):
    shape = ctx.shape
    brute = brute_orbits(shape, 1, ctx.bound, EndoSet(shape, ctx.autos))
    H = pos.orbit_poset_elements(shape)
    J = pos.enumerate_ideals(pos.build_Pf(shape))
    counts = (len(H), len(J), len(brute))
    if len(set(counts)) != 1:
        return SuiteResult("orbit-count", False, f"|H_f|, |J(P_f)|, brute = {counts}")
    realized = {ulm_sequence(shape, o[0][0]) for o in brute}
    if realized != set(H.elements):
        return SuiteResult("orbit-count", False, "realized Ulm sequences differ from H_f")
    if not pos.poset_isomorphism_check(orb.element_orbit_poset(shape, ctx.bound), H):
        return SuiteResult("orbit-count", False, "element orbit poset is not H_f")
    return SuiteResult("orbit-count", True, f"{counts[0]} element orbits")


def atoms_suite(ctx):
    shape, n = ctx.shape, ctx.n
    if not shape.rank:
        ok = orb.tuple_atoms(shape, n) == []
        return SuiteResult("atoms", ok)
    found = {o.fingerprint for o in orb.exhaustive_atoms(shape, n, ctx.bound)}
    built = {orb.fingerprint(shape, t) for t in orb.tuple_atoms(shape, n)}
    if found != built:
        return SuiteResult("atoms", False, f"{len(found)} exhaustive atoms vs {len(built)} built")
    atom_seq = ulm_sequence(shape, orb.atom_element(shape))
    for t in orb.tuple_atoms(shape, n):
        nonzero = [a for a in t if any(a)]
        a = nonzero[0]
        if ulm_sequence(shape, a) != atom_seq or any(shape.p_multiple(a)):
            return SuiteResult("atoms", False, f"{t} does not start with an element atom")
        multiples = {shape.scale(r, a) for r in shape.ring.residues(1)}
        if any(x not in multiples for x in t):
            return SuiteResult("atoms", False, f"{t} is not a tuple of multiples of {a}")
    return SuiteResult("atoms", True, f"{len(found)} atom orbits")


def depth_suite(ctx):
    shape, n = ctx.shape, ctx.n
    k = shape.exponent
    orbits = ctx.orbits
    for x, y in itertools.product(orbits, repeat=2):
        if orb.table_degenerates(x.fingerprint, y.fingerprint):
            if x.n_invariant > y.n_invariant:
                return SuiteResult("n-invariant-depth", False, "N decreases along a degeneration")
            if x.n_invariant == y.n_invariant and not orb.table_degenerates(y.fingerprint, x.fingerprint):
                return SuiteResult("n-invariant-depth", False, "equal N without reverse degeneration")
    depth = orb.chain_depth(shape, n, ctx.bound)
    ok = depth <= n * k * (k + 1)
    return SuiteResult("n-invariant-depth", ok, f"depth {depth} <= {n * k * (k + 1)}")


def constructive_suite(ctx, samples=20):
    shape = ctx.shape
    for _ in range(samples):
        a = ctx.rng.choice(ctx.tuples)
        g = ctx.rng.choice(ctx.autos)
        b = tuple(g.apply(x) for x in a)
        table = orb.build_automorphism(shape, a, b)
        if not table.is_bijective() or tuple(table.apply(x) for x in a) != b:
            return SuiteResult("constructive-extension", False, f"bad automorphism for {a} -> {b}")
        phi = ctx.rng.choice(ctx.endo.tables)
        c = tuple(phi.apply(x) for x in a)
        hom = orb.extend_homomorphism(shape, shape, a, c)
        if not hom.is_well_defined() or tuple(hom.apply(x) for x in a) != c:
            return SuiteResult("constructive-extension", False, f"bad homomorphism for {a} -> {c}")
    return SuiteResult("constructive-extension", True, f"{samples} samples each")


def endomorphism_suite(ctx):
    expected = endomorphism_count(ctx.shape)
    ok = ctx.endo.count == expected
    return SuiteResult(
        "endomorphism-count",
        ok,
        f"{ctx.endo.count} endomorphisms (product formula {expected}), {len(ctx.autos)} automorphisms",
    )


def run_all(shape, n, bound=None, samples=20, seed=0):
    ctx = Context(shape, n, bound, seed)
    return [
        endomorphism_suite(ctx),
        barker_suite(ctx),
        degeneration_suite(ctx),
        mutual_suite(ctx),
        dictionary_suite(shape),
        orbit_count_suite(ctx),
        atoms_suite(ctx),
        depth_suite(ctx),
        constructive_suite(ctx, samples),
    ]
