"""Exact toolkit for strongly exceptional collections of line bundles on
projective space blown up at two points: sign-pattern classification of
divisor classes with nonvanishing higher cohomology, an independent toric
cohomology oracle, compatibility graphs with exact maximum-clique search,
and exhaustive per-n verifiers for the counting lemmas that bound collection
length below the Grothendieck rank 3n - 1."""

from ._kernels import BACKEND
from .cohomology import (
    DegreeChamber,
    SupportComplex,
    complex_from_faces,
    default_radius,
    enumerate_chambers,
    has_higher_cohomology,
    higher_cohomology_report,
    reduced_homology_ranks,
    support_complex,
)
from .divisors import AlphaRep, DivisorClass, alpha_to_basis, check_dimension, negative_block, sub
from .fan import (
    Fan,
    build_fan,
    divisor_class_to_ray_coeffs,
    is_complete,
    is_smooth,
    linearly_equivalent,
    primitive_collections,
    reduce_t_divisor,
    verify_batyrev_data,
)
from .forbidden import (
    ALL_PATTERNS,
    CompatibilityVerdict,
    SignPattern,
    brute_force_is_forbidden,
    compatible_with_zero,
    completeness_radius,
    feasible_patterns,
    forbidden_many,
    is_compatible,
    is_forbidden,
    pattern_feasible,
)
from .graphs import CompatGraph, Window, build_graph, is_clique, max_clique, naive_max_clique
from .lemmas import (
    LEMMA_IDS,
    CollectionAnalysis,
    HighType,
    analyze_collection,
    bound_table,
    classify_high,
    low_bundle_cap,
    observation_forces_high,
    run_verifier,
    theorem_bound,
    theorem_chain_holds,
    verify_all,
    verify_corollary_trzy,
    verify_lemma_8,
    verify_lemma_bound,
    verify_lemma_gl,
    verify_lemma_jeden,
    verify_lemma_jedwE,
    verify_lemma_l1,
    verify_lemma_pom,
    verify_remark_k,
    verify_theorem,
)
from .report import LemmaReport

__version__ = "0.1.0"
