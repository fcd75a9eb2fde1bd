//! Combinatorics and exact linear algebra for square-zero strictly upper
//! triangular matrices.
//!
//! The crate has two halves that meet in [`checker`]:
//!
//! - combinatorial: fixed-point-free [`involution`]s, the moves that generate
//!   the Borel-orbit order on them ([`moves`]), the resulting DAG with its
//!   Hasse diagram and levels ([`poset`]), and orbit representatives via
//!   [`rank_profile`]s of scalar matrices;
//! - algebraic: sparse exact multivariate polynomials over `Q` or `F_p`
//!   ([`poly`], [`field`]), polynomial matrices with exact minors and ranks
//!   ([`polymatrix`]), and brute-force projective root search
//!   ([`projective`]).
//!
//! [`checker`] verifies the six defining conditions of a candidate matrix
//! instance and evaluates the boundary inequality `N >= 2^(r-1) * (R + C)`.

pub mod checker;
pub mod error;
pub mod field;
pub mod involution;
pub mod moves;
pub mod poly;
pub mod polymatrix;
pub mod poset;
pub mod projective;
pub mod rank_profile;

pub use error::{Error, Result};
