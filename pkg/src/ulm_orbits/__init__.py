"""Automorphism orbits, degenerations and orbit posets of tuples and
submodules in finite modules over discrete valuation rings."""

from .errors import BoundExceeded, InvalidInput, NotHeightIncreasing, NotSameOrbit
from .linear import SubmoduleForm, height_table, howell_form, includes, log_cardinality, membership
from .module import (
    ModuleShape,
    UlmSequence,
    height,
    linear_combination,
    primary_decomposition,
    ulm_invariants,
    ulm_sequence,
)
from .orbits import (
    HomTable,
    build_automorphism,
    chain_depth,
    degenerates,
    element_atoms,
    enumerate_tuple_orbits,
    extend_homomorphism,
    n_invariant,
    same_orbit,
    submodule_degenerates,
    submodule_same_orbit,
    tuple_atoms,
)
from .posets import (
    FinitePoset,
    OrderIdeal,
    PElem,
    build_Pf,
    enumerate_H_f,
    enumerate_ideals,
    hasse,
    ideal_from_sequence,
    ideal_of,
    kappa,
    orbit_poset_elements,
    p_order,
)
from .ring import INF, RingSpec, Scalar

__version__ = "0.1.0"
