//! Exact-arithmetic study of self-conjugate partitions under the Gibbs
//! uniform measure `𝔐_q(λ) = q^{|λ|} / Π(1+q^{2i−1})`.
//!
//! The crate computes the n-point correlation functions
//! `G(t_1,…,t_n) = ⟨Π_j Σ_i t_j^{λ_i−i+1/2}⟩` as truncated q-series with
//! Laurent-polynomial coefficients, verifies their q-difference equation and
//! theta-function closed forms as polynomial identities, reproduces the
//! quasimodular bracket structure over Γ(2), and simulates the q → 1⁻ limit
//! shape. Everything outside [`limitshape`] is exact rational arithmetic.
//!
//! Module map:
//! - [`partitions`]: partition combinatorics and Frobenius coordinates
//! - [`series`]: quarter-graded q-series, Laurent polynomials, X-series
//! - [`correlation`]: the n-point function and its q-difference equation
//! - [`theta`]: Jacobi theta series and the closed one/two-point formulas
//! - [`quasimod`]: Eisenstein series, Q-brackets, quasimodular decomposition
//! - [`limitshape`]: Monte Carlo sampling and limit-shape numerics

pub mod correlation;
pub mod limitshape;
pub mod partitions;
pub mod quasimod;
pub mod rat;
pub mod report;
pub mod rng;
pub mod series;
pub mod theta;

pub use partitions::{
    enumerate_self_conjugate, FrobeniusCoords, Partition, PartitionError, Profile,
};
pub use rat::Rat;
pub use series::{LaurentPoly, QSeries, SeriesError, XSeries};
