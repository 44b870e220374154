//! Combinatorial-topological constructions behind colored Tverberg
//! partitions — chessboard complexes, deleted joins and products, mod-p
//! homology, cyclic actions with freeness certificates — plus
//! exact-rational search for the partitions themselves under affine maps
//! to Euclidean space and piecewise-linear maps to the flat torus.
//!
//! Everything on a certification path is exact: complexes are finite and
//! enumerated under a global face guard, homology is computed by exact
//! elimination over small prime fields, and geometric intersections are
//! decided by rational pivoting, never floating point.

pub mod cells;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod fp;
pub mod geometry;
pub mod guard;
pub mod homology;
pub mod rational;

pub use cells::{deleted_product, CellComplex, ProductCell};
pub use complex::{
    all_colorings, is_rainbow, rainbow_subcomplex, Coloring, Face, SimplicialComplex, VertexId,
};
pub use constructions::{
    chessboard, cyclic_action, deleted_join, is_free, is_free_exhaustive, iterated_join, join,
    rainbow_join_relabeling, test_space, CyclicAction, Freeness, LabeledJoinComplex,
};
pub use error::{Error, Result};
pub use geometry::{
    check_reduction_inequality, find_partition, find_partition_with_jobs, find_tightness_witness,
    for_each_partition, intersect_hulls, lift_configuration, reduction_count, torus_intersect,
    verify_reduction_roundtrip, ColoredConfiguration, HullWitness, Outcome, Target,
    TightnessOutcome, TverbergPartition, TverbergReport,
};
pub use guard::{face_guard, set_face_guard, DEFAULT_FACE_GUARD};
pub use rational::{format_rational, parse_rational, Rational};
pub use homology::{
    betti, betti_cells, cell_chain_complex, chain_complex, check_join_formula,
    homological_connectivity, BettiProfile, ChainComplexFp, JoinFormulaReport,
};
