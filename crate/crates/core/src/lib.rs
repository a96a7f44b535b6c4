//! Gibbs measures of the q-state Potts model on the Cayley tree.
//!
//! The crate covers the full pipeline for zero-field Potts models:
//!
//! * [`model`]: parameters, boundary-field vectors and the tree recursion map.
//! * [`poly`]: closed-form cubic/quartic solvers with an independent
//!   bracketing root oracle and Descartes sign counting.
//! * [`ti`]: translation-invariant solutions, critical temperatures and
//!   the full lifted solution count.
//! * [`periodic`]: period-two solutions on the invariant sets `I_m` for the
//!   antiferromagnetic regime, their counts and `h`-profiles.
//! * [`verifier`]: a brute-force finite-volume oracle checking the
//!   compatibility condition on explicit small trees.
//! * [`cli`] / [`report`]: the command front end and its JSON report format.
//!
//! All quantities are computed in exponentiated coordinates `z = exp(h)`.

pub mod cli;
pub mod error;
pub mod model;
pub mod periodic;
pub mod poly;
pub mod report;
pub mod ti;
pub mod verifier;

pub use error::{Error, Result};
pub use model::{Coupling, FieldVector, InvariantClass, ModelParams};
pub use periodic::{PeriodicSolution, SolutionKind};
pub use poly::{Polynomial, RootDomain, RootReport};
pub use ti::{CriticalTheta, TISolution};

/// Max-norm below which a residual counts as zero.
pub const ZERO_TOL: f64 = 1e-10;
