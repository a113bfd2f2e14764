//! Shared numerical machinery: dimension constants, sphere measures,
//! quadrature, root finding, radial grids and ODE integration.

mod dimension;
mod grid;
pub mod ode;
mod quadrature;
mod roots;
mod sphere;
pub mod vector;

pub use dimension::Dimension;
pub use grid::{least_squares_slope, RadialGrid, Spacing};
pub use quadrature::{integrate_adaptive, polar_quadrature, QuadratureKind, QuadratureRule};
pub use roots::find_root;
pub use sphere::{gamma_half, sphere_area, SphereMeasure};
