"""Fixed-length factorization families in monoids of Z^d and their transport
to undermonoids."""

from .constructions import (
    IdealEnlargement,
    Perturbed,
    condition_i,
    condition_ii,
    enlarge_nongroup,
    local_obstruction_pipeline,
    maximal_forcing_probe,
    no_new_units_check,
    atoms_no_split_check,
    perturb,
    preserve_atoms_check,
    survival_leq,
    undermonoid_check,
    verify_ideal_properties,
)
from .extensions import (
    FactorizationFamily,
    build_family,
    check_intermediate,
    is_admissible,
    is_unit_reflecting,
    multiplicity_vector,
    persistence_map,
    reduction_map,
)
from .factorization import (
    Factorization,
    classify_window,
    enumerate_Z_ell,
    enumerate_Z_window,
    lengths,
)
from .lattice import IntegerLattice, hnf, lattice_contains, lattice_equal, lattice_intersect, snf
from .monoid import AtomClass, GradedMonoid, atoms_up_to_level, find_grading
from .verdict import DEFAULT_BOUND, BoundExhausted, State, Verdict

__version__ = "0.1.0"
