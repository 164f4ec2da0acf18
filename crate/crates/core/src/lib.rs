//! Classical and quantum quasi-free particles with position-dependent mass.
//!
//! * [`profiles`]: mass functions with analytic derivatives.
//! * [`dynamics1d`], [`dynamics2d`]: classical trajectories, conserved
//!   quantities and confinement analysis on the line and in the plane.
//! * [`quantum`]: von Roos ordering coefficients and the Pöschl–Teller
//!   effective potentials they produce.
//! * [`spectra`]: finite-difference bound-state solver with the analytic
//!   ladders as reference.
//! * [`correspondence`]: joins classical confinement and quantum spectral
//!   class into per-ordering verdicts.
//! * [`sweep`]: data-parallel evaluation helpers (rayon, or sequential
//!   without the `parallel` feature).

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correspondence;
pub mod dynamics1d;
pub mod dynamics2d;
pub mod error;
pub mod numerics;
pub mod profiles;
pub mod quantum;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};
pub use profiles::{CustomProfile, MassProfile};
