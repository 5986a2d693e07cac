//! Exact construction and verification of spectral-parameter r-matrices for
//! Lie bialgebra structures on `g[u]`, with `g = sl_n`.
//!
//! Everything is computed over arbitrary-precision rationals. The modules
//! follow the pipeline: a simple Lie algebra ([`lie`]), scalar rational
//! functions and residues ([`ratfun`]), the invariant forms on the classical
//! doubles ([`pairing`]), Lagrangian subalgebras and dual bases
//! ([`lagrangian`]), the closed-form r-matrix families ([`rmatrix`]), the
//! induced cobracket and its axioms ([`cobracket`]) and affine
//! reparametrisations between two-point families ([`twist`]).

pub mod cli;
pub mod cobracket;
pub mod error;
pub mod lagrangian;
pub mod lie;
pub mod linalg;
pub mod pairing;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod rmatrix;
pub mod twist;
pub mod wire;

pub use error::{Error, Result};
pub use lie::{ConstTensor2, ConstTensor3, GElement, LieAlgebraData};
pub use pairing::{AForm, CaseSpec, DoubleElement, DoubleType, LoopElement};
pub use rat::Rat;
pub use rmatrix::{RKind, SpectralTensor2};

