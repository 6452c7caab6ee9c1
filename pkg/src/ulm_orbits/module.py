"""Finite modules A = sum_alpha (R/p^alpha)^(m_alpha), their elements and heights.

An element is a tuple of scalar codes, one per cyclic factor, in *factor
order*: factors sorted by alpha, then by index within the alpha block.  The
coordinate on a factor R/p^alpha is kept reduced mod p^alpha.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, total_ordering

from .errors import InvalidInput, check_bound
from .ring import INF, RingSpec, is_prime


@dataclass(frozen=True)
class ModuleShape:
    """Cyclic multiplicities {alpha: m_alpha} over a ring R/p^K.

    ``multiplicities`` is normalized to a sorted tuple of (alpha, m) pairs
    with m > 0.  The ring precision K must equal the exponent (1 for the
    zero module).
    """

    ring: RingSpec
    multiplicities: tuple

    def __post_init__(self):
        raw = self.multiplicities
        items = raw.items() if isinstance(raw, dict) else raw
        clean = {}
        for alpha, m in items:
            if not isinstance(alpha, int) or not isinstance(m, int):
                raise InvalidInput("multiplicities must map integers to integers")
            if alpha < 1 or m < 0:
                raise InvalidInput(f"bad multiplicity {alpha}: {m}")
            if m:
                clean[alpha] = clean.get(alpha, 0) + m
        object.__setattr__(self, "multiplicities", tuple(sorted(clean.items())))
        if self.ring.precision != max(self.exponent, 1):
            raise InvalidInput(
                f"ring precision {self.ring.precision} differs from exponent {self.exponent}"
            )

    @classmethod
    def of(cls, multiplicities, q, kind="int"):
        mults = dict(multiplicities)
        k = max((a for a, m in mults.items() if m), default=0)
        return cls(RingSpec(kind, q, max(k, 1)), mults)

    @property
    def exponent(self):
        return max((a for a, _ in self.multiplicities), default=0)

    @property
    def q(self):
        return self.ring.q

    def multiplicity(self, alpha):
        return dict(self.multiplicities).get(alpha, 0)

    @cached_property
    def orders(self):
        """The alpha of each cyclic factor, in factor order."""
        return tuple(a for a, m in self.multiplicities for _ in range(m))

    @cached_property
    def factor_labels(self):
        """(alpha, index) for each cyclic factor."""
        return tuple((a, i) for a, m in self.multiplicities for i in range(m))

    @property
    def rank(self):
        return len(self.orders)

    @cached_property
    def log_size(self):
        return sum(self.orders)

    @property
    def size(self):
        return self.q**self.log_size

    def zero(self):
        return (0,) * self.rank

    def generators(self):
        """Canonical generators e_{alpha,i}, in factor order."""
        return [tuple(int(i == j) for i in range(self.rank)) for j in range(self.rank)]

    def elements(self, bound=None):
        check_bound("module size", self.size, bound)
        return itertools.product(*(range(self.q**a) for a in self.orders))

    def tuples(self, n, bound=None):
        check_bound(f"number of {n}-tuples", self.size**n, bound)
        return itertools.product(list(self.elements()), repeat=n)

    def check_element(self, a):
        if not isinstance(a, tuple) or len(a) != self.rank:
            raise InvalidInput(f"element {a!r} does not have {self.rank} coordinates")
        for c, alpha in zip(a, self.orders):
            if not isinstance(c, int) or not 0 <= c < self.q**alpha:
                raise InvalidInput(f"coordinate {c!r} not reduced mod p^{alpha}")
        return a

    def describe(self):
        if not self.multiplicities:
            return f"0 over {self.ring.describe()}"
        ring = "Z" if self.ring.kind == "int" else f"F_{self.q}[t]"
        p = self.q if self.ring.kind == "int" else "t"
        parts = [
            f"({ring}/{p}^{a})" + (f"^{m}" if m > 1 else "") for a, m in self.multiplicities
        ]
        return " + ".join(parts)

    # -- arithmetic ----------------------------------------------------

    def add(self, a, b):
        ring = self.ring
        return tuple(
            ring.reduce(ring.add(x, y), alpha) for x, y, alpha in zip(a, b, self.orders)
        )

    def scale(self, r, a):
        ring = self.ring
        return tuple(ring.reduce(ring.mul(r, x), alpha) for x, alpha in zip(a, self.orders))

    def p_multiple(self, a, times=1):
        return self.scale(self.ring.p_power(times), a) if times < self.ring.precision else self.zero()

    def combine(self, elements, coeffs):
        """sum r_i a_i; coefficient codes may live at any precision >= ours."""
        ring = self.ring
        size = ring.size
        out = [0] * self.rank
        for r, a in zip(coeffs, elements):
            r %= size
            if r:
                for j, x in enumerate(a):
                    if x:
                        out[j] = ring.add(out[j], ring.mul(r, x))
        return tuple(ring.reduce(x, alpha) for x, alpha in zip(out, self.orders))

    def height(self, a):
        ring = self.ring
        return min((ring.valuation(x) for x in a if x), default=INF)

    # -- encoding ------------------------------------------------------

    def element_to_json(self, a):
        return {
            "coords": [
                [alpha, i, self.ring.to_json(x)]
                for (alpha, i), x in zip(self.factor_labels, a)
                if x
            ]
        }

    def element_from_json(self, doc):
        if not isinstance(doc, dict) or not isinstance(doc.get("coords"), list):
            raise InvalidInput('element must be {"coords": [[alpha, index, scalar], ...]}')
        position = {label: j for j, label in enumerate(self.factor_labels)}
        out = [0] * self.rank
        for entry in doc["coords"]:
            if not isinstance(entry, list) or len(entry) != 3:
                raise InvalidInput(f"bad coordinate entry {entry!r}")
            alpha, i, value = entry
            j = position.get((alpha, i))
            if j is None:
                raise InvalidInput(f"no cyclic factor ({alpha}, {i}) in {self.describe()}")
            out[j] = self.ring.from_json(value, alpha)
        return tuple(out)

    def format_element(self, a):
        return "(" + ",".join(self.ring.format(x) for x in a) + ")"

    def parse_element(self, text):
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        parts = _split_top_level(text, ",") if text else []
        if len(parts) != self.rank:
            raise InvalidInput(
                f"element {text!r} needs {self.rank} coordinates for {self.describe()}"
            )
        return tuple(self.ring.parse(s, alpha) for s, alpha in zip(parts, self.orders))

    def parse_tuple(self, text):
        """Elements separated by ';', e.g. "1,0;0,1"."""
        items = [s for s in text.split(";") if s.strip()] if text.strip() else []
        if not items:
            raise InvalidInput("empty tuple")
        return tuple(self.parse_element(s) for s in items)


def _split_top_level(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


@total_ordering
@dataclass(frozen=True)
class UlmSequence:
    """h_0 < h_1 < ... < h_m followed by an implicit infinite tail."""

    finite: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(self.finite))
        if any(not isinstance(h, int) or h < 0 for h in self.finite):
            raise InvalidInput(f"Ulm sequence entries must be naturals: {self.finite}")
        if any(a >= b for a, b in zip(self.finite, self.finite[1:])):
            raise InvalidInput(f"Ulm sequence must strictly increase: {self.finite}")

    def __getitem__(self, i):
        return self.finite[i] if i < len(self.finite) else INF

    def __len__(self):
        return len(self.finite)

    def dominates(self, other):
        """Termwise self_n >= other_n."""
        return all(self[i] >= other[i] for i in range(max(len(self), len(other))))

    def __lt__(self, other):
        # deterministic total order for sorting; not the poset order
        return (len(self.finite), self.finite) < (len(other.finite), other.finite)

    def __str__(self):
        return ",".join([str(h) for h in self.finite] + ["inf"])

    @classmethod
    def parse(cls, text):
        text = text.strip().strip("()")
        items = [s.strip() for s in text.split(",") if s.strip()]
        finite = []
        for i, s in enumerate(items):
            if s.lower() in ("inf", "oo", "∞"):
                if i != len(items) - 1:
                    raise InvalidInput(f"finite entries may not follow inf: {text!r}")
                break
            try:
                finite.append(int(s))
            except ValueError:
                raise InvalidInput(f"bad Ulm sequence entry {s!r}") from None
        return cls(tuple(finite))


def height(shape, a):
    return shape.height(shape.check_element(a))


def ulm_sequence(shape, a):
    a = shape.check_element(a)
    hs = []
    while any(a):
        hs.append(shape.height(a))
        a = shape.p_multiple(a)
    return UlmSequence(tuple(hs))


def ulm_invariants(shape):
    """f_beta = dim P(A)_beta / P(A)_{beta+1}, equal to m_{beta+1}; positive entries only."""
    return {alpha - 1: m for alpha, m in shape.multiplicities}


def linear_combination(shape, elements, coeffs):
    if len(elements) != len(coeffs):
        raise InvalidInput(f"{len(coeffs)} coefficients for {len(elements)} elements")
    return shape.combine(elements, coeffs)


def _factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primary_decomposition(cyclic_orders):
    """Split sum Z/n_j into its p-primary shapes, keyed by prime."""
    mults = {}
    for n in cyclic_orders:
        if isinstance(n, bool) or not isinstance(n, int) or n <= 1:
            raise InvalidInput(f"cyclic orders must be integers > 1, got {n!r}")
        for p, e in _factor(n).items():
            m = mults.setdefault(p, {})
            m[e] = m.get(e, 0) + 1
    assert all(is_prime(p) for p in mults)
    return {p: ModuleShape.of(m, p) for p, m in sorted(mults.items())}
