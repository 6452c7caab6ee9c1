"""Residue arithmetic in R/p^K for the two supported discrete valuation rings.

Scalars are encoded as integer codes in ``range(q**K)``:

* ``kind="int"``: R is the integers localized at a prime p = q and the code is
  the residue itself.
* ``kind="poly"``: R is F_q[t] localized at t and the code packs the
  coefficients base q, lowest degree first (code = sum c_j q^j).

With this encoding the uniformizer p^v has code ``q**v`` in both backends,
reduction mod p^a is ``code % q**a``, the valuation is the number of trailing
zero base-q digits, and dividing an element of valuation >= v by p^v is
``code // q**v``.  Only addition and multiplication differ between backends.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import InvalidInput

INF = math.inf

KINDS = ("int", "poly")

_TABLE_LIMIT = 256


def is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(q):
    """Return (p, e) with q = p**e, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
    return None


def _poly_mulmod(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_rem(a, m, p):
    """Remainder of a by the monic polynomial m over F_p (lowest degree first)."""
    a = list(a)
    d = len(m) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * m[j]) % p
    return a[:d]


def _is_irreducible(m, p):
    d = len(m) - 1
    # a reducible polynomial of degree d has a monic factor of degree <= d // 2
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            f = list(low) + [1]
            if not any(_poly_rem(m, f, p)):
                return False
    return True


@lru_cache(maxsize=None)
def conway_candidate(p, e):
    """Lexicographically least monic irreducible of degree e over F_p.

    Coefficients are compared from the x^(e-1) term downwards, the usual
    ordering for Conway-style tables.  Returned lowest degree first.
    """
    for high_first in itertools.product(range(p), repeat=e):
        m = list(reversed(high_first)) + [1]
        if m[0] and _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


class GaloisField:
    """F_q as lookup tables; elements are ints whose base-p digits are the
    coefficients of a polynomial in x modulo ``modulus``."""

    def __init__(self, q):
        pe = prime_power(q)
        if pe is None:
            raise InvalidInput(f"field size {q} is not a prime power")
        self.q = q
        self.p, self.e = pe
        p, e = pe
        if e == 1:
            self.modulus = (0, 1)
            self.add = [[(x + y) % p for y in range(q)] for x in range(q)]
            self.mul = [[(x * y) % p for y in range(q)] for x in range(q)]
        else:
            self.modulus = conway_candidate(p, e)
            digits = [self._digits(x) for x in range(q)]
            self.add = [
                [self._pack([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)]
                for x in range(q)
            ]
            self.mul = [
                [
                    self._pack(_poly_rem(_poly_mulmod(digits[x], digits[y], p) + [0] * e, self.modulus, p))
                    for y in range(q)
                ]
                for x in range(q)
            ]
        self.neg = [self.add[x].index(0) for x in range(q)]
        self.inv = [None] + [self.mul[x].index(1) for x in range(1, q)]

    def _digits(self, x):
        out = []
        for _ in range(self.e):
            x, d = divmod(x, self.p)
            out.append(d)
        return out

    def _pack(self, digits):
        return sum(d * self.p**i for i, d in enumerate(digits))


@lru_cache(maxsize=None)
def galois_field(q):
    return GaloisField(q)


@dataclass(frozen=True)
class RingSpec:
    """R/p^K for R = Z_(p) (``kind="int"``) or F_q[t]_(t) (``kind="poly"``)."""

    kind: str
    q: int
    precision: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"ring kind must be one of {KINDS}, got {self.kind!r}")
        if not isinstance(self.q, int) or not isinstance(self.precision, int):
            raise InvalidInput("ring size and precision must be integers")
        if self.kind == "int" and not is_prime(self.q):
            raise InvalidInput(f"integer backend needs a prime, got {self.q}")
        if self.kind == "poly" and prime_power(self.q) is None:
            raise InvalidInput(f"polynomial backend needs a prime power, got {self.q}")
        if self.precision < 1:
            raise InvalidInput("precision must be at least 1")

    @classmethod
    def integers(cls, p, precision):
        return cls("int", p, precision)

    @classmethod
    def polynomials(cls, q, precision):
        return cls("poly", q, precision)

    def with_precision(self, precision):
        if precision == self.precision:
            return self
        return RingSpec(self.kind, self.q, precision)

    @property
    def characteristic_prime(self):
        return prime_power(self.q)[0]

    @cached_property
    def size(self):
        return self.q**self.precision

    @cached_property
    def field(self):
        return galois_field(self.q) if self.kind == "poly" else None

    @cached_property
    def _tables(self):
        if self.kind != "poly" or self.size > _TABLE_LIMIT:
            return None
        n = self.size
        add = [[self._poly_add(x, y) for y in range(n)] for x in range(n)]
        mul = [[self._poly_mul(x, y) for y in range(n)] for x in range(n)]
        neg = [self._poly_neg(x) for x in range(n)]
        return add, mul, neg

    def describe(self):
        if self.kind == "int":
            return f"Z/{self.q}^{self.precision}"
        text = f"F_{self.q}[t]/(t^{self.precision})"
        if self.field.e > 1:
            coeffs = "+".join(
                ("" if c == 1 or i == 0 else str(c)) + ("1" if i == 0 and c == 1 else "")
                + ("" if i == 0 else "x" if i == 1 else f"x^{i}")
                for i, c in reversed(list(enumerate(self.field.modulus)))
                if c
            )
            text += f" with F_{self.q} = F_{self.field.p}[x]/({coeffs})"
        return text

    # -- arithmetic on codes --------------------------------------------

    def _digits(self, x):
        q = self.q
        out = []
        for _ in range(self.precision):
            x, d = divmod(x, q)
            out.append(d)
        return out

    def _pack(self, digits):
        x = 0
        for d in reversed(digits):
            x = x * self.q + d
        return x

    def _poly_add(self, x, y):
        add = self.field.add
        return self._pack([add[a][b] for a, b in zip(self._digits(x), self._digits(y))])

    def _poly_neg(self, x):
        neg = self.field.neg
        return self._pack([neg[a] for a in self._digits(x)])

    def _poly_mul(self, x, y):
        f = self.field
        a, b = self._digits(x), self._digits(y)
        K = self.precision
        out = [0] * K
        for i, ai in enumerate(a):
            if ai:
                row = f.mul[ai]
                for j in range(K - i):
                    if b[j]:
                        out[i + j] = f.add[out[i + j]][row[b[j]]]
        return self._pack(out)

    def add(self, x, y):
        if self.kind == "int":
            return (x + y) % self.size
        t = self._tables
        return t[0][x][y] if t else self._poly_add(x, y)

    def mul(self, x, y):
        if self.kind == "int":
            return (x * y) % self.size
        t = self._tables
        return t[1][x][y] if t else self._poly_mul(x, y)

    def neg(self, x):
        if self.kind == "int":
            return (-x) % self.size
        t = self._tables
        return t[2][x] if t else self._poly_neg(x)

    def sub(self, x, y):
        if self.kind == "int":
            return (x - y) % self.size
        return self.add(x, self.neg(y))

    def valuation(self, x):
        """Largest v with x in p^v R/p^K; INF for zero."""
        x %= self.size
        if x == 0:
            return INF
        q = self.q
        v = 0
        while x % q == 0:
            x //= q
            v += 1
        return v

    def p_power(self, v):
        return self.q**v % self.size

    def reduce(self, x, alpha):
        """Reduce modulo p^alpha (alpha <= K)."""
        return x % self.q**alpha

    def divide_p_power(self, x, v):
        """y with p^v * y = x, for x of valuation >= v."""
        return x // self.q**v

    def is_unit(self, x):
        return x % self.q != 0

    def inverse(self, u):
        if not self.is_unit(u):
            raise ZeroDivisionError(f"{u} is not a unit in {self.describe()}")
        if self.kind == "int":
            return pow(u, -1, self.size)
        # Newton iteration y <- 2y - u y^2 doubles the t-adic precision
        y = self.field.inv[u % self.q]
        for _ in range(self.precision.bit_length() + 1):
            y = self.sub(self.add(y, y), self.mul(u, self.mul(y, y)))
        return y

    def unit_part(self, x):
        """(u, v) with x = u * p^v and u a unit (x nonzero)."""
        v = self.valuation(x)
        return self.divide_p_power(x, v), v

    def residues(self, precision=None):
        precision = self.precision if precision is None else precision
        if precision > self.precision or precision < 0:
            raise InvalidInput(f"precision {precision} outside 0..{self.precision}")
        return range(self.q**precision)

    # -- encoding ------------------------------------------------------

    def to_json(self, x):
        if self.kind == "int":
            return x
        digits = self._digits(x)
        while digits and digits[-1] == 0:
            digits.pop()
        return digits

    def from_json(self, value, alpha=None):
        alpha = self.precision if alpha is None else alpha
        if self.kind == "int":
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInput(f"integer scalar expected, got {value!r}")
            return value % self.q**alpha
        if isinstance(value, int) and not isinstance(value, bool):
            value = [value]
        if not isinstance(value, list) or not all(isinstance(c, int) for c in value):
            raise InvalidInput(f"coefficient list expected, got {value!r}")
        if any(c < 0 or c >= self.q for c in value):
            raise InvalidInput(f"coefficients must lie in 0..{self.q - 1}: {value!r}")
        code = 0
        for c in reversed(value[:alpha]):
            code = code * self.q + c
        return code

    def format(self, x):
        if self.kind == "int":
            return str(x)
        terms = []
        for d, c in enumerate(self._digits(x)):
            if not c:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                mono = "t" if d == 1 else f"t^{d}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) or "0"

    def parse(self, text, alpha=None):
        """Parse "6", "1+t", "2t^2" or a coefficient list "[1,1]"."""
        alpha = self.precision if alpha is None else alpha
        text = text.strip().replace(" ", "")
        if not text:
            raise InvalidInput("empty scalar")
        if self.kind == "int":
            try:
                return int(text) % self.q**alpha
            except ValueError:
                raise InvalidInput(f"not an integer scalar: {text!r}") from None
        if text.startswith("["):
            if not text.endswith("]"):
                raise InvalidInput(f"unterminated coefficient list: {text!r}")
            inner = text[1:-1]
            try:
                coeffs = [int(c) for c in inner.split(",")] if inner else []
            except ValueError:
                raise InvalidInput(f"bad coefficient list: {text!r}") from None
            return self.from_json(coeffs, alpha)
        coeffs = {}
        for term in text.split("+"):
            m = _TERM.fullmatch(term)
            if not m:
                raise InvalidInput(f"cannot parse polynomial term {term!r}")
            coef, var, exp = m.group(1), m.group(2), m.group(3)
            if not var and exp:
                raise InvalidInput(f"cannot parse polynomial term {term!r}")
            c = int(coef) if coef else 1
            d = (int(exp) if exp else 1) if var else 0
            if c >= self.q:
                raise InvalidInput(f"coefficient {c} outside F_{self.q}")
            coeffs[d] = self.field.add[coeffs.get(d, 0)][c]
        top = max(coeffs, default=0)
        return self.from_json([coeffs.get(d, 0) for d in range(top + 1)], alpha)


_TERM = re.compile(r"(\d*)\*?(t)?(?:\^(\d+))?")


@dataclass(frozen=True)
class Scalar:
    """A residue in R/p^K tied to its ring."""

    ring: RingSpec
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.ring.size:
            raise InvalidInput(f"code {self.code} not reduced in {self.ring.describe()}")

    def _check(self, other):
        if not isinstance(other, Scalar) or other.ring != self.ring:
            raise InvalidInput("scalars from different rings")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.ring, self.ring.add(self.code, other.code))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.ring, self.ring.sub(self.code, other.code))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.ring, self.ring.mul(self.code, other.code))

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.code))

    def valuation(self):
        return self.ring.valuation(self.code)

    def __str__(self):
        return self.ring.format(self.code)


def scalar_arith(op, x, y=None):
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise InvalidInput(f"unknown operation {op!r}")


def valuation(x):
    return x.valuation()


def enumerate_residues(spec, precision):
    return [Scalar(spec, c) for c in spec.residues(precision)]
