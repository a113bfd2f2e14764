//! Radial and translational Pohozaev boundary integrals on spheres about the
//! origin, for `Δu + K u^{(n+2)/(n-2)} = 0` (no `n(n-2)` factor: the solution
//! families are fed in with `K ≡ n(n-2)`).

mod curvature;
mod identities;
mod report;

pub use curvature::{CurvatureFunction, Tail};
pub use identities::{
    bulk_correction, radial_pohozaev, shell_bulk, translational_pohozaev, translational_pohozaev_vector, BulkCorrection,
};
pub use report::{extract_invariant, pohozaev_report, PohozaevReport, PohozaevSettings};
