/// Energy gaps below this are treated as zero when forming κ.
pub const KAPPA_GAP_FLOOR: f64 = 1e-14;

/// The three terms of an energy error identity for one approximation.
///
/// `energy_half_norm + nonlinear_measure` should equal `energy_gap`;
/// `residual` records how far apart they are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    /// `½ ‖∇(u − v)‖²_A`
    pub energy_half_norm: f64,
    /// The free-boundary measure `μ(v)`.
    pub nonlinear_measure: f64,
    /// `J(v) − J(u)`
    pub energy_gap: f64,
    /// `100 μ / (J(v) − J(u))`, undefined when the gap vanishes.
    pub kappa_percent: Option<f64>,
    pub residual: f64,
}

impl IdentityReport {
    pub fn new(energy_half_norm: f64, nonlinear_measure: f64, energy_gap: f64) -> Self {
        let kappa_percent = if energy_gap.abs() < KAPPA_GAP_FLOOR {
            None
        } else {
            Some(100.0 * nonlinear_measure / energy_gap)
        };
        Self {
            energy_half_norm,
            nonlinear_measure,
            energy_gap,
            kappa_percent,
            residual: (energy_half_norm + nonlinear_measure - energy_gap).abs(),
        }
    }

    /// True if the identity holds to `rel_tol · max(1, gap)`.
    pub fn identity_holds(&self, rel_tol: f64) -> bool {
        self.residual <= rel_tol * self.energy_gap.abs().max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_is_undefined_for_zero_gap() {
        let r = IdentityReport::new(0.0, 0.0, 0.0);
        assert_eq!(r.kappa_percent, None);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn kappa_and_residual() {
        let r = IdentityReport::new(1.0, 3.0, 4.0);
        assert_eq!(r.kappa_percent, Some(75.0));
        assert_eq!(r.residual, 0.0);
        assert!(r.identity_holds(1e-12));
        let r = IdentityReport::new(1.0, 3.0, 4.5);
        assert_eq!(r.residual, 0.5);
        assert!(!r.identity_holds(1e-3));
    }
}
