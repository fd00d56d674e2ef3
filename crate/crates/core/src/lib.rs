//! Exact generating-function machinery for Euler characteristics of
//! commutative and associative graph complexes.

pub mod exactnum;
pub mod powerseries;
pub mod euler_series;
