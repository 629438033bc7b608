//! Exact unitary-group moment integrals `I_k(m;N)`, the piecewise-polynomial
//! coefficient `γ_k(c)` of their large-`N` asymptotics, and brute-force
//! divisor-sum variances over `F_q[t]` that those integrals predict.
//!
//! The crate is organised by subsystem:
//!
//! * [`exact`]: big rationals, dense polynomials, interpolation.
//! * [`moments`]: `I_k(m;N)` by closed form, lattice DP, Weyl-dimension sum,
//!   exhaustive enumeration and Haar Monte Carlo.
//! * [`gamma`]: exact reconstruction of `γ_k`, the Euler-product constant
//!   `a_k` and heuristic variance predictors.
//! * [`ffield`]: `d_k` sieves, short-interval and progression variances,
//!   Dirichlet characters over `F_q[t]`.

mod budget;
mod error;
pub mod exact;
pub mod ffield;
pub mod gamma;
pub mod moments;
pub mod stats;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exact::{binomial, lagrange_interpolate, BigInt, DensePoly, Rational};
pub use ffield::{DirichletCharacter, DivisorTable, FqPoly, Statistic, VarianceReport};
pub use gamma::{ConjectureInput, PiecewiseGamma};
pub use moments::{GTColumnState, HaarSample, MomentTable};
