"""Stanley-Reisner invariants of simplicial complexes and the multiplicity bounds."""

from __future__ import annotations

from .classify import (
    ClassificationFlags,
    circuit_axiom_check,
    classify,
    is_cone,
    is_gorenstein,
    is_gorenstein_star,
    is_matroid,
    matroid_witness,
)
from .cm import (
    ConnectivitySequence,
    SkipTable,
    connectivity_sequence,
    is_almost_cm,
    is_cm,
    is_cm_hochster,
    is_cm_reisner,
    is_q_cm,
    q_max,
    q_max_with_witness,
    skips_from_m_sequence,
)
from .complex import (
    SimplicialComplex,
    core,
    delete_vertices,
    euler_characteristic,
    f_vector,
    faces,
    from_facets,
    h_vector,
    induced,
    irrelevant_complex,
    link,
    skeleton,
)
from .errors import *  # noqa: F401,F403
from .formats import complex_hash, dumps, load, loads
from .generators import FamilySpec
from .homology import FieldMatrix, FieldSpec, boundary_matrix, rank, reduced_betti
from .resolution import (
    BettiTable,
    ShiftSequences,
    betti_table,
    hochster_betti_table,
    is_pure_resolution,
    is_quasi_pure,
    k_polynomial,
    k_polynomial_check,
    minimal_nonfaces,
    multiplicity,
    multiplicity_bounds,
    shifts,
)
from .verify import (
    MultiplicityReport,
    consistency_euler_ds,
    equality_purity_check,
    fuzz_search,
    shrink,
    theorem_suite,
    verify_conjecture,
    verify_dim12,
    verify_gorenstein,
    verify_matroid_theorem,
)

__version__ = "0.1.0"
