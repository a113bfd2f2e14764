//! Conformal transform algebra: Kelvin inversion, translation, cylindrical
//! coordinates, reflection, and the deformed Delaunay-Fowler solutions built
//! from them.

mod cylindrical;
mod deformed;
mod kelvin;

pub use cylindrical::{
    cylindrical_residual, from_cylinder, reflect, to_cylinder, CylindricalField, FromCylinder, Orientation,
};
pub use deformed::{deform_delaunay, DeformedDelaunay};
pub use kelvin::{kelvin, kelvin_spherical_params, KelvinField, KelvinParams, Translated};
