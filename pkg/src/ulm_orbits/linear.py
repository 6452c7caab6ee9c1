"""Howell forms over the chain ring R/p^K and the height tables M_h of a tuple.

A :class:`SubmoduleForm` is the Howell normal form of a row span in
(R/p^K)^n.  Over a chain ring every pivot can be normalized to a power of the
uniformizer, entries above a pivot p^v are reduced to codes < q^v, and the
Howell property (every span element vanishing on the first j columns is a
combination of the rows with pivot beyond j) is enforced by feeding
p^(K-v) * pivot_row back into the elimination.  The resulting rows depend only
on the span, so forms compare structurally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidInput, check_bound
from .ring import INF

EXHAUSTIVE_LIMIT = 2**20


@dataclass(frozen=True)
class SubmoduleForm:
    ring: object
    n: int
    rows: tuple = ()

    @property
    def pivots(self):
        """(column, valuation) per row."""
        out = []
        for row in self.rows:
            c = next(j for j, x in enumerate(row) if x)
            out.append((c, self.ring.valuation(row[c])))
        return out

    def is_zero(self):
        return not self.rows

    def __str__(self):
        if not self.rows:
            return "0"
        fmt = self.ring.format
        return "<" + "; ".join("(" + ",".join(fmt(x) for x in r) + ")" for r in self.rows) + ">"

    def to_json(self):
        return [[self.ring.to_json(x) for x in row] for row in self.rows]


def _normalize_rows(ring, n, rows):
    size = ring.size
    out = []
    for row in rows:
        row = tuple(row)
        if len(row) != n:
            raise InvalidInput(f"row {row} does not have length {n}")
        out.append([x % size for x in row])
    return out


def howell_form(ring, n, rows):
    """Canonical generator matrix of span(rows) in (R/p^K)^n."""
    K = ring.precision
    mul, sub, val = ring.mul, ring.sub, ring.valuation
    work = [r for r in _normalize_rows(ring, n, rows) if any(r)]
    result = []
    for c in range(n):
        best, best_v = None, INF
        for idx, row in enumerate(work):
            if row[c]:
                v = val(row[c])
                if v < best_v:
                    best, best_v = idx, v
        if best is None:
            continue
        prow = work.pop(best)
        v = best_v
        uinv = ring.inverse(ring.divide_p_power(prow[c], v))
        prow = [mul(uinv, x) for x in prow]
        remaining = []
        for row in work:
            x = row[c]
            if x:
                f = ring.divide_p_power(x, v)
                row = [sub(y, mul(f, z)) for y, z in zip(row, prow)]
            if any(row):
                remaining.append(row)
        if v > 0:
            shift = ring.p_power(K - v)
            ann = [mul(shift, x) for x in prow]
            if any(ann):
                remaining.append(ann)
        work = remaining
        result.append(prow)
    # reduce entries above each pivot to codes < q^v
    for i, row in enumerate(result):
        c = next(j for j, x in enumerate(row) if x)
        v = val(row[c])
        for j in range(i):
            x = result[j][c]
            f = ring.divide_p_power(x, v)
            if f:
                result[j] = [sub(y, mul(f, z)) for y, z in zip(result[j], row)]
    return SubmoduleForm(ring, n, tuple(tuple(r) for r in result))


def zero_form(ring, n):
    return SubmoduleForm(ring, n, ())


def full_form(ring, n):
    return SubmoduleForm(ring, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def reduce_vector(form, v):
    """Residue of v after subtracting pivot-row multiples; zero iff v is in the span."""
    ring = form.ring
    v = [x % ring.size for x in v]
    for row in form.rows:
        c = next(j for j, x in enumerate(row) if x)
        if any(v[:c]):
            return v
        x = v[c]
        if x:
            w = ring.valuation(row[c])
            if ring.valuation(x) < w:
                return v
            f = ring.divide_p_power(x, w)
            v = [ring.sub(y, ring.mul(f, z)) for y, z in zip(v, row)]
    return v


def membership(form, v):
    if len(v) != form.n:
        raise InvalidInput(f"vector length {len(v)} differs from {form.n}")
    return not any(reduce_vector(form, v))


def includes(F, G):
    """span(G) is contained in span(F)."""
    if F.n != G.n:
        raise InvalidInput("forms of different lengths")
    return all(membership(F, row) for row in G.rows)


def log_cardinality(form):
    K = form.ring.precision
    return sum(K - v for _, v in form.pivots)


def span_elements(form, bound=None):
    """Every vector of span(form), by exhaustive combination of its rows."""
    ring = form.ring
    check_bound("span enumeration", ring.size ** len(form.rows), bound)
    out = set()
    for coeffs in itertools.product(ring.residues(), repeat=len(form.rows)):
        v = [0] * form.n
        for r, row in zip(coeffs, form.rows):
            if r:
                v = [ring.add(y, ring.mul(r, z)) for y, z in zip(v, row)]
        out.add(tuple(v))
    return out


def form_from_vectors(ring, n, vectors):
    """Howell form of a (possibly huge) vector set, adding only non-members."""
    form = zero_form(ring, n)
    for v in vectors:
        if not membership(form, v):
            form = howell_form(ring, n, form.rows + (tuple(v),))
    return form


# -- height tables -------------------------------------------------------


def _table_exhaustive(shape, elements, ring):
    n = len(elements)
    K = ring.precision
    members = [[] for _ in range(K + 1)]
    for r in itertools.product(ring.residues(), repeat=n):
        h = shape.height(shape.combine(elements, r))
        top = K if h == INF else min(h, K)
        for j in range(top + 1):
            members[j].append(r)
    return tuple(form_from_vectors(ring, n, vs) for vs in members)


def _kernel_mod_height(shape, elements, ring, h):
    """{r : sum r_i a_i in p^h A} as the kernel of R^n -> A/p^h A."""
    n = len(elements)
    m = shape.rank
    rows = []
    for i, a in enumerate(elements):
        rows.append(tuple(a) + tuple(int(i == j) for j in range(n)))
    for j, alpha in enumerate(shape.orders):
        rel = [0] * (m + n)
        rel[j] = ring.p_power(min(alpha, h))
        rows.append(tuple(rel))
    form = howell_form(ring, m + n, rows)
    kernel = [row[m:] for row in form.rows if not any(row[:m])]
    return howell_form(ring, n, kernel)


def _table_kernel(shape, elements, ring):
    K = ring.precision
    n = len(elements)
    return (full_form(ring, n),) + tuple(
        _kernel_mod_height(shape, elements, ring, h) for h in range(1, K + 1)
    )


@lru_cache(maxsize=1 << 18)
def _height_table(shape, elements, precision, method):
    ring = shape.ring.with_precision(precision)
    if method == "auto":
        method = "enumerate" if ring.size ** len(elements) <= EXHAUSTIVE_LIMIT else "kernel"
    if method == "enumerate":
        return _table_exhaustive(shape, elements, ring)
    if method == "kernel":
        return _table_kernel(shape, elements, ring)
    raise InvalidInput(f"unknown method {method!r}")


def height_table(shape, elements, method="auto", precision=None):
    """[M_0, ..., M_K] with M_h = {r mod p^K : h(sum r_i a_i) >= h}.

    K defaults to the exponent of ``shape``; a larger ``precision`` lets tables
    of two shapes over the same ring be compared.  ``method`` picks exhaustive
    enumeration, the kernel computation, or (``"auto"``) enumeration when the
    coefficient space has at most 2^20 vectors.
    """
    try:
        key = tuple(tuple(a) for a in elements)
    except TypeError:
        raise InvalidInput(f"elements must be coordinate tuples, got {elements!r}") from None
    return _checked_table(shape, key, method, precision)


@lru_cache(maxsize=1 << 18)
def _checked_table(shape, elements, method, precision):
    # validation runs once per distinct input; repeated queries are lookups
    elements = tuple(shape.check_element(a) for a in elements)
    if not elements:
        raise InvalidInput("height_table needs at least one element")
    precision = shape.ring.precision if precision is None else precision
    if precision < shape.ring.precision:
        raise InvalidInput("precision below the module exponent")
    return _height_table(shape, elements, precision, method)
