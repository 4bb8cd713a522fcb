use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Model constants of the evolution equation
/// `D^gamma (u - a Λ² u) - Λ² u + m u = f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    /// Dunkl reflection parameter, `alpha >= -1/2`.
    pub alpha: f64,
    /// Pseudo-parabolic coefficient, `a > 0`.
    pub a: f64,
    /// Zeroth-order coefficient, `m > 0`.
    pub m: f64,
    /// Fractional order of the time derivative, `0 < gamma <= 1`.
    pub gamma: f64,
    /// Final time, `T > 0`.
    pub final_time: f64,
}

impl ProblemParams {
    pub fn new(alpha: f64, a: f64, m: f64, gamma: f64, final_time: f64) -> Result<Self> {
        if !(alpha >= -0.5) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be >= -1/2, got {alpha}"
            )));
        }
        if alpha > 10.0 {
            // Gamma(k + alpha + 1) growth degrades the Bessel series beyond this.
            return Err(Error::InvalidParameter(format!(
                "alpha must be <= 10, got {alpha}"
            )));
        }
        if !(a > 0.0) {
            return Err(Error::InvalidParameter(format!("a must be > 0, got {a}")));
        }
        if !(m > 0.0) {
            return Err(Error::InvalidParameter(format!("m must be > 0, got {m}")));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be in (0, 1], got {gamma}"
            )));
        }
        if !(final_time > 0.0) {
            return Err(Error::DegenerateHorizon(final_time));
        }
        Ok(Self {
            alpha,
            a,
            m,
            gamma,
            final_time,
        })
    }

    /// Upper bound on the spectral symbol, `max(m, 1/a)`.
    pub fn symbol_upper_bound(&self) -> f64 {
        self.m.max(1.0 / self.a)
    }

    /// Lower bound on the spectral symbol, `min(m, 1/a)`.
    pub fn symbol_lower_bound(&self) -> f64 {
        self.m.min(1.0 / self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(ProblemParams::new(-0.6, 1.0, 1.0, 0.5, 1.0).is_err());
        assert!(ProblemParams::new(0.0, 0.0, 1.0, 0.5, 1.0).is_err());
        assert!(ProblemParams::new(0.0, 1.0, -1.0, 0.5, 1.0).is_err());
        assert!(ProblemParams::new(0.0, 1.0, 1.0, 1.5, 1.0).is_err());
        assert!(ProblemParams::new(0.0, 1.0, 1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn symbol_bounds() {
        let p = ProblemParams::new(0.0, 0.5, 2.0, 0.5, 1.0).unwrap();
        assert_eq!(p.symbol_lower_bound(), 2.0);
        assert_eq!(p.symbol_upper_bound(), 2.0);
        let p = ProblemParams::new(0.0, 2.0, 1.0, 0.5, 1.0).unwrap();
        assert_eq!(p.symbol_lower_bound(), 0.5);
        assert_eq!(p.symbol_upper_bound(), 1.0);
    }
}
