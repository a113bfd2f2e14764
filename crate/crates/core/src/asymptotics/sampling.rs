use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Symmetry;
use crate::numerics::vector;

/// Sample directions on the unit sphere adapted to a field's symmetry.
///
/// Radial fields need one direction, axisymmetric ones a uniform grid of
/// `count` polar angles in `[0, π]` (both poles included), and general
/// fields the `2n` coordinate directions plus `count` directions drawn
/// uniformly from a ChaCha8 stream seeded with `seed`.
#[derive(Debug, Clone)]
pub struct SphereSampler {
    directions: Vec<Vec<f64>>,
}

impl SphereSampler {
    pub fn new(n: usize, symmetry: &Symmetry, count: usize, seed: u64) -> Self {
        let count = count.max(2);
        let directions = match symmetry {
            Symmetry::Radial => vec![vector::unit(n, 0)],
            Symmetry::Axisymmetric(axis) => {
                let perp = vector::orthogonal_unit(axis);
                (0..count)
                    .map(|j| {
                        let phi = std::f64::consts::PI * j as f64 / (count - 1) as f64;
                        vector::polar_point(1.0, phi, axis, &perp)
                    })
                    .collect()
            }
            Symmetry::General => {
                let mut dirs = Vec::with_capacity(2 * n + count);
                for i in 0..n {
                    dirs.push(vector::unit(n, i));
                    dirs.push(vector::scale(&vector::unit(n, i), -1.0));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                while dirs.len() < 2 * n + count {
                    let p: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let r2 = vector::norm_sq(&p);
                    if r2 > 1e-4 && r2 <= 1.0 {
                        dirs.push(vector::scale(&p, 1.0 / r2.sqrt()));
                    }
                }
                dirs
            }
        };
        SphereSampler { directions }
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    /// Sample points on the sphere of radius `r` about `center`.
    pub fn points(&self, center: &[f64], r: f64) -> impl Iterator<Item = Vec<f64>> + '_ {
        let center = center.to_vec();
        self.directions.iter().map(move |d| vector::axpy(&center, r, d))
    }
}
