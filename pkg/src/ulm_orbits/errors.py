"""Exceptions and the enumeration bound shared by every exhaustive routine."""

import os

DEFAULT_BOUND = 2**20
BOUND_ENV = "ULM_ORBITS_BOUND"


class InvalidInput(ValueError):
    """Malformed shape, element, sequence or ideal."""


class BoundExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""

    def __init__(self, what, size, bound):
        super().__init__(f"{what}: {size} exceeds enumeration bound {bound}")
        self.size = size
        self.bound = bound


class NotHeightIncreasing(ValueError):
    """The assignment s_i -> t_i does not extend to a homomorphism.

    ``witness`` is a coefficient vector r with h(sum r_i s_i) >= ``height``
    but h(sum r_i t_i) < ``height``.
    """

    def __init__(self, witness, height):
        super().__init__(
            f"not height-increasing: coefficients {list(witness)} at height {height}"
        )
        self.witness = tuple(witness)
        self.height = height


class NotSameOrbit(ValueError):
    """No automorphism carries one tuple to the other."""


def default_bound():
    raw = os.environ.get(BOUND_ENV)
    if raw is None:
        return DEFAULT_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInput(f"{BOUND_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidInput(f"{BOUND_ENV} must be positive")
    return value


def check_bound(what, size, bound=None):
    bound = default_bound() if bound is None else bound
    if size > bound:
        raise BoundExceeded(what, size, bound)
