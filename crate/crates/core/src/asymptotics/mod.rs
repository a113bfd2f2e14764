//! Tail diagnostics of positive solutions and the blow-up rescaling near an
//! isolated singularity.

mod blowup;
mod decay;
mod sampling;

pub use blowup::{
    blowup_rescale, cutoff_distance, normalized_blowup, weighted_value, NormalizedBlowup, ProfileSample, RescaleReport,
    RescaleSettings,
};
pub use decay::{
    classify_decay, gradient_bound, harnack_quotient, lower_bound_check, DecayClass, DecayReport, DecaySettings,
};
pub use sampling::SphereSampler;
