//! Finite models of the commutative graph complexes: admissible multigraphs
//! up to isomorphism, their orientation behaviour, brute-force Euler
//! characteristics, and the chain complexes themselves at small rank.

pub mod chain_homology;
pub mod graph_enum;

pub use graphchi_core::euler_series::Parity;
