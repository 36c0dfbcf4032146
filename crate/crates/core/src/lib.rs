//! Numerical verification of log-Sobolev inequalities and hypercontractivity
//! for Fourier-multiplier semigroups on the cyclic groups Z_n.
//!
//! The building blocks are the Dirichlet form of a weight ([`spectral`]),
//! the absorbed stationarity system and its multi-start search ([`kkt`]),
//! the derivative cascades behind the Z_4 and Z_6 base cases ([`cascade`]),
//! the n to 2n induction checks ([`induction`]) and optimal hypercontractive
//! times ([`hyper`]).

// Input checks are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cascade;
pub mod config;
pub mod dft;
pub mod error;
pub mod hyper;
pub mod induction;
pub mod kkt;
pub mod par;
pub mod sampling;
pub mod spectral;
pub mod weights;

pub use config::{Defaults, Tolerances};
pub use error::{Error, Result};
pub use spectral::{build_form, PointVector, SpectralForm};
pub use weights::Weight;
