//! Exact solutions and verification tools for the radially symmetric
//! pressureless Euler system
//!
//! ```text
//! ρ_t + (ρu)_r + (n-1)/r ρu  = 0
//! (ρu)_t + (ρu²)_r + (n-1)/r ρu² = 0
//! ```
//!
//! with a point mass `m0(t)` collecting everything that flows into the origin.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//!
//! * [`domain`]: initial data, region/front descriptors, samples, conserved pairs.
//! * [`riemann`]: case classification, shadow-wave speeds and masses, event
//!   times, and [`riemann::solve`] which assembles a global [`WavePlan`].
//! * [`plan`]: the piecewise plan itself, point evaluation and the origin-mass law.
//! * [`front_ode`]: the general shadow-wave front ODEs, an adaptive integrator,
//!   and the closed-form non-entropic front used as a counterexample.
//! * [`verify`]: entropy/overcompressibility checks, mass and momentum budgets,
//!   and ε-family weak residuals by composite Gauss–Legendre quadrature.
//! * [`oracle`]: an event-driven sticky-particle model of the same system.
#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod domain;
mod error;
pub mod front_ode;
pub mod oracle;
pub mod plan;
pub mod riemann;
pub mod verify;

pub use domain::{
    jump_brackets, surface_area, Atom, ConservedPair, FrontKind, FrontState, PseudoRiemannData, RegionProfile,
    SolutionSample,
};
pub use error::{Error, Result};
pub use plan::{EpsFamily, WavePlan};
pub use riemann::{classify, solve, CaseKind, CaseTag};
