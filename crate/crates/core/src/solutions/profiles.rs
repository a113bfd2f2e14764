use crate::error::Result;
use crate::numerics::Dimension;

use super::delaunay::{constant_value, critical_energy, hamiltonian};

/// A solution `v(t)` of the cylindrical ODE, independent of the angle.
pub trait Profile: Send + Sync + std::fmt::Debug {
    fn dim(&self) -> Dimension;

    /// `(v, v')` at `t`.
    fn eval(&self, t: f64) -> (f64, f64);

    fn value(&self, t: f64) -> f64 {
        self.eval(t).0
    }

    /// Energy of the trajectory.
    fn energy(&self) -> Result<f64> {
        let (v, vp) = self.eval(0.0);
        hamiltonian(self.dim(), v, vp)
    }
}

/// `v₀(t) = (2 cosh t)^{(2-n)/2}`, the image of `u_{1,0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderSolution {
    pub n: Dimension,
}

impl CylinderSolution {
    pub fn new(n: Dimension) -> Self {
        CylinderSolution { n }
    }
}

impl Profile for CylinderSolution {
    fn dim(&self) -> Dimension {
        self.n
    }

    fn eval(&self, t: f64) -> (f64, f64) {
        let a = self.n.conformal_weight();
        // (2cosh t)^{-a} = e^{-a|t|} (1 + e^{-2|t|})^{-a}, stable for large |t|
        let e = (-2.0 * t.abs()).exp();
        let v = (-a * t.abs()).exp() * (1.0 + e).powf(-a);
        (v, -a * t.tanh() * v)
    }
}

/// The stationary solution `((n-2)/(4n))^{(n-2)/4}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantSolution {
    pub n: Dimension,
    pub value: f64,
}

impl ConstantSolution {
    pub fn new(n: Dimension) -> Self {
        ConstantSolution { n, value: constant_value(n) }
    }

    pub fn energy(&self) -> f64 {
        critical_energy(self.n)
    }
}

impl Profile for ConstantSolution {
    fn dim(&self) -> Dimension {
        self.n
    }

    fn eval(&self, _t: f64) -> (f64, f64) {
        (self.value, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn cylinder_values() {
        let c = CylinderSolution::new(dim(3));
        assert!((c.value(0.0) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(c.value(800.0) < 1e-170 && c.value(-800.0) < 1e-170);
        for t in [0.3, 1.7, 12.0] {
            assert_eq!(c.value(t), c.value(-t));
        }
    }

    #[test]
    fn cylinder_has_zero_energy() {
        for n in 3..8 {
            let c = CylinderSolution::new(dim(n));
            for t in [-3.0, -0.5, 0.0, 0.1, 2.5] {
                let (v, vp) = c.eval(t);
                assert!(hamiltonian(dim(n), v, vp).unwrap().abs() < 1e-15);
            }
        }
    }

    #[test]
    fn constant_is_at_critical_energy() {
        for n in 3..8 {
            let c = ConstantSolution::new(dim(n));
            let h = Profile::energy(&c).unwrap();
            assert!((h - c.energy()).abs() < 1e-15);
        }
    }
}
