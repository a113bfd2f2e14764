use crate::error::{Error, Result};

/// Space dimension `n ≥ 3`.
///
/// The critical exponent `p = (n+2)/(n-2)` and the mass exponent
/// `q = 2n/(n-2)` are always derived from `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain(format!("dimension must be at least 3, got {n}")));
        }
        Ok(Dimension(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    /// `(n+2)/(n-2)`
    #[inline]
    pub fn critical_exponent(self) -> f64 {
        let n = self.as_f64();
        (n + 2.0) / (n - 2.0)
    }

    /// `2n/(n-2)`
    #[inline]
    pub fn mass_exponent(self) -> f64 {
        let n = self.as_f64();
        2.0 * n / (n - 2.0)
    }

    /// `(n-2)/2`, the conformal weight of a scalar under dilation.
    #[inline]
    pub fn conformal_weight(self) -> f64 {
        (self.as_f64() - 2.0) / 2.0
    }

    /// `n(n-2)`, the curvature constant of the round sphere normalisation.
    #[inline]
    pub fn sphere_curvature(self) -> f64 {
        let n = self.as_f64();
        n * (n - 2.0)
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_dimensions() {
        assert!(Dimension::new(2).is_err());
        assert!(Dimension::new(0).is_err());
        assert!(Dimension::new(3).is_ok());
    }

    #[test]
    fn exponents() {
        let n = Dimension::new(3).unwrap();
        assert_eq!(n.critical_exponent(), 5.0);
        assert_eq!(n.mass_exponent(), 6.0);
        let n = Dimension::new(4).unwrap();
        assert_eq!(n.critical_exponent(), 3.0);
        assert_eq!(n.mass_exponent(), 4.0);
        assert_eq!(n.sphere_curvature(), 8.0);
    }
}
