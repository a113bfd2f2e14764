//! Explicit solution families of the conformal scalar curvature equation
//!
//! ```text
//! Δu + K u^{(n+2)/(n-2)} = 0   in ℝⁿ (or a punctured domain),  n ≥ 3
//! ```
//!
//! The crate builds the spherical, cylinder and Delaunay-Fowler families,
//! moves them around with the conformal transform algebra (Kelvin inversion,
//! translation, dilation, cylindrical coordinates, reflection), evaluates the
//! radial and translational Pohozaev boundary integrals, and computes the
//! tail diagnostics used to tell fast decay from slow decay.
//!
//! Module map:
//!
//! * [`numerics`]: dimension constants, sphere measures, quadrature rules,
//!   bracketing root finder, radial grids and the adaptive RK integrator.
//! * [`field`]: the [`Field`](field::Field) trait shared by every pointwise
//!   function on ℝⁿ, with its symmetry tag.
//! * [`solutions`]: spherical solutions, cylinder and constant solutions,
//!   Delaunay-Fowler profiles with Hamiltonian, neck-size and period.
//! * [`transforms`]: Kelvin transform, cylindrical fields, reflection and
//!   deformed Delaunay-Fowler solutions.
//! * [`pohozaev`]: radial and translational Pohozaev integrals, bulk
//!   corrections and invariant extraction.
//! * [`asymptotics`]: decay classification, Harnack and gradient
//!   diagnostics, blow-up rescaling.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod field;
pub mod numerics;
pub mod pohozaev;
pub mod solutions;
pub mod transforms;

pub use error::{Error, Result};
pub use field::{Field, Symmetry};
pub use numerics::Dimension;
