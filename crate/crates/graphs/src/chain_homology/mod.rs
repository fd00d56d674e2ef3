//! Even and odd graph complexes at small rank: generators, boundary maps
//! built from signed edge contractions, exact ranks and Betti numbers.
//!
//! Only non-loop edges are contracted. A contraction whose quotient is not
//! orientable contributes nothing.

mod complex;
mod linalg;

pub use complex::{
    betti_numbers, build_complex, build_complex_with, chi_from_betti, contract, contraction_coefficient,
    first_d_squared_failure, verify_chi, verify_d_squared, ChainComplex, ChainError, Generator, IsoChoice,
    RankInfo, SignConvention, MAX_COMPLEX_RANK,
};
pub use linalg::{rank_exact, rank_mod_p, SparseMatrix, CHECK_PRIMES};
