//! Asymptotic formulas for graph-complex Euler characteristics and numeric
//! quadrature of the integrals behind them.

pub mod asymptotics;
pub mod quadrature;

pub use graphchi_core::euler_series::Parity;
