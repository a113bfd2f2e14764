//! Exact and ODE-constructed solution families.
//!
//! Spherical solutions live on ℝⁿ; the cylinder, constant and Delaunay-Fowler
//! solutions are profiles `v(t)` of the autonomous ODE
//!
//! ```text
//! v'' = ((n-2)/2)² v − n(n-2) v^{(n+2)/(n-2)}
//! ```
//!
//! which a cylindrical transform turns back into radial fields.

mod delaunay;
mod interp;
mod profiles;
mod spherical;

pub use delaunay::{
    constant_value, critical_energy, energy_to_neck, hamiltonian, integrate_delaunay, neck_to_energy, period,
    upper_turning_point, DelaunayProfile, Trajectory,
};
pub use interp::QuinticHermite;
pub use profiles::{ConstantSolution, CylinderSolution, Profile};
pub use spherical::{spherical_mass, MassEstimate, SphericalSolution};
