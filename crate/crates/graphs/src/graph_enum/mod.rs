//! Admissible multigraphs: enumeration up to isomorphism, automorphism
//! groups, orientability, and brute-force Euler characteristics.

mod canon;
mod cycle_index;
mod enumerate;
mod multigraph;
mod oracle;
mod symmetry;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm, Labeling};
pub use cycle_index::{partition_count_oracle, partition_count_table, CycleIndexPoly};
pub use enumerate::{connected_admissible, degree_sequences, enumerate_multigraphs};
pub use multigraph::{named, MultiGraph};
pub use oracle::{
    check_connected_cap, chi_oracle, chi_oracle_direct, degree, orientable_counts, union_orientable_by_rule, GraphError, OracleMode,
    MAX_CONNECTED_RANK, MAX_DISCONNECTED_DEGREE,
};
pub use symmetry::{
    automorphism_group, boundary, compose, h0_determinant, h1_determinant, induced_edge_permutation,
    induced_vertex_permutation, integer_det, is_automorphism, lift_vertex_permutation, orientable,
    orientation_character, perm_sign, signed_edge_action, AutomorphismGroup, CycleBasis, Perm,
};
