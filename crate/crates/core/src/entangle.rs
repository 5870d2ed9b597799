//! Separability and logarithmic negativity, both from a full covariance
//! matrix and from purities plus Delta, and the purity-only region
//! classifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covariance::{CovarianceMatrix, StandardForm};
use crate::error::{Error, Result, DEFAULT_TOL};
use crate::estimator;
use crate::param::{check_purity_constraints_with_tol, PurityPoint};

/// Entanglement regions in the space of global and marginal purities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionLabel {
    /// Every state with these purities is separable.
    Separable,
    /// Separable and entangled states both exist.
    Coexistence,
    /// Every state with these purities is entangled.
    Entangled,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Separable => "separable",
            Self::Coexistence => "coexistence",
            Self::Entangled => "entangled",
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Global-purity thresholds of the classifier at fixed marginals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionThresholds {
    /// `mu1 mu2 / (mu1 + mu2 - mu1 mu2)`: above it the most entangled states are entangled.
    pub separable: f64,
    /// `mu1 mu2 / sqrt(mu1^2 + mu2^2 - mu1^2 mu2^2)`: above it the least entangled states are entangled.
    pub coexistence: f64,
}

impl RegionThresholds {
    pub fn new(mu1: f64, mu2: f64) -> Self {
        let product = mu1 * mu2;
        Self {
            separable: product / (mu1 + mu2 - product),
            coexistence: product / (mu1 * mu1 + mu2 * mu2 - product * product).sqrt(),
        }
    }

    pub fn label(&self, mu: f64, tol: f64) -> RegionLabel {
        if mu <= self.separable + tol {
            RegionLabel::Separable
        } else if mu <= self.coexistence + tol {
            RegionLabel::Coexistence
        } else {
            RegionLabel::Entangled
        }
    }
}

pub fn classify(mu1: f64, mu2: f64, mu: f64) -> Result<RegionLabel> {
    classify_with_tol(mu1, mu2, mu, DEFAULT_TOL)
}

pub fn classify_with_tol(mu1: f64, mu2: f64, mu: f64, tol: f64) -> Result<RegionLabel> {
    check_purity_constraints_with_tol(mu1, mu2, mu, tol)?;
    Ok(RegionThresholds::new(mu1, mu2).label(mu, tol))
}

/// Delta of the partial transpose in purity variables:
/// `-delta + 1/(2 mu1^2) + 1/(2 mu2^2)`.
pub fn delta_tilde(mu1: f64, mu2: f64, delta: f64) -> f64 {
    -delta + 0.5 / (mu1 * mu1) + 0.5 / (mu2 * mu2)
}

/// `2 n~^2 = D~ - sqrt(D~^2 - 1/(4 mu^2))`, evaluated through the conjugate
/// root. No region checks.
pub(crate) fn ppt_eigenvalue_unchecked(mu1: f64, mu2: f64, mu: f64, delta: f64) -> f64 {
    let dt = delta_tilde(mu1, mu2, delta);
    let det4 = 0.25 / (mu * mu);
    let root = (dt * dt - det4).max(0.0).sqrt();
    (det4 / (2.0 * (dt + root))).sqrt()
}

/// Smallest symplectic eigenvalue of the partial transpose of any state with
/// the given purities and Delta.
pub fn ppt_smallest_eigenvalue(p: &PurityPoint) -> Result<f64> {
    let delta = p.require_delta()?;
    p.validate(DEFAULT_TOL)?;
    Ok(ppt_eigenvalue_unchecked(p.mu1, p.mu2, p.mu, delta))
}

/// `max(0, -ln(2 n~))`.
pub fn log_negativity(n_tilde_minus: f64) -> Result<f64> {
    if !(n_tilde_minus > 0.0) || !n_tilde_minus.is_finite() {
        return Err(Error::Malformed(format!(
            "symplectic eigenvalue must be positive and finite, got {n_tilde_minus}"
        )));
    }
    Ok((-(2.0 * n_tilde_minus).ln()).max(0.0))
}

/// Anything whose partially transposed state has a computable smallest
/// symplectic eigenvalue.
pub trait PartialTranspose {
    fn ppt_smallest_eigenvalue(&self) -> Result<f64>;

    fn is_separable(&self) -> Result<bool> {
        Ok(self.ppt_smallest_eigenvalue()? >= 0.5 - DEFAULT_TOL)
    }

    fn log_negativity(&self) -> Result<f64> {
        log_negativity(self.ppt_smallest_eigenvalue()?)
    }
}

impl PartialTranspose for PurityPoint {
    fn ppt_smallest_eigenvalue(&self) -> Result<f64> {
        ppt_smallest_eigenvalue(self)
    }
}

impl PartialTranspose for CovarianceMatrix {
    fn ppt_smallest_eigenvalue(&self) -> Result<f64> {
        CovarianceMatrix::ppt_smallest_eigenvalue(self)
    }
}

impl PartialTranspose for StandardForm {
    fn ppt_smallest_eigenvalue(&self) -> Result<f64> {
        self.check_physical()?;
        Ok(self.spectrum(true).n_minus)
    }
}

/// PPT criterion: separable iff `n~_minus >= 1/2`.
pub fn is_separable<T: PartialTranspose + ?Sized>(state: &T) -> Result<bool> {
    state.is_separable()
}

/// Finite-difference and closed-form derivative of `n~_minus^2` with
/// respect to Delta at fixed purities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaSlope {
    pub finite_difference: f64,
    pub analytic: f64,
}

/// `d n~^2 / d delta = (D~ / sqrt(D~^2 - 1/(4 mu^2)) - 1) / 2`.
pub fn ppt_slope(mu1: f64, mu2: f64, mu: f64, delta: f64) -> f64 {
    let dt = delta_tilde(mu1, mu2, delta);
    0.5 * (dt / (dt * dt - 0.25 / (mu * mu)).sqrt() - 1.0)
}

/// Central difference with step `h` against [`ppt_slope`]; both `delta - h`
/// and `delta + h` must lie within the bounds.
pub fn delta_monotonicity_check(p: &PurityPoint, h: f64) -> Result<DeltaSlope> {
    let delta = p.require_delta()?;
    if !(h > 0.0) {
        return Err(Error::Malformed(format!("step must be positive, got {h}")));
    }
    let bounds = p.validate(DEFAULT_TOL)?;
    bounds.check(delta - h, 0.0)?;
    bounds.check(delta + h, 0.0)?;
    let f = |d: f64| ppt_eigenvalue_unchecked(p.mu1, p.mu2, p.mu, d).powi(2);
    Ok(DeltaSlope {
        finite_difference: (f(delta + h) - f(delta - h)) / (2.0 * h),
        analytic: ppt_slope(p.mu1, p.mu2, p.mu, delta),
    })
}

/// Exact entanglement (when Delta is known) alongside the
/// purity-only bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub region: RegionLabel,
    pub n_tilde_minus: Option<f64>,
    pub log_negativity: Option<f64>,
    pub en_max: f64,
    pub en_min: f64,
    pub en_avg: f64,
    pub rel_err: f64,
}

impl EntanglementReport {
    pub fn from_purities(p: &PurityPoint, tol: f64) -> Result<Self> {
        let estimate = estimator::estimate_with_tol(p.mu1, p.mu2, p.mu, tol)?;
        let n_tilde_minus = match p.delta {
            Some(delta) => {
                p.validate(tol)?;
                Some(ppt_eigenvalue_unchecked(p.mu1, p.mu2, p.mu, delta))
            }
            None => None,
        };
        Self::assemble(estimate, n_tilde_minus)
    }

    /// Uses the symplectic spectrum of the matrix itself for the exact value.
    pub fn from_covariance(cm: &CovarianceMatrix, tol: f64) -> Result<Self> {
        cm.check_physical_with_tol(tol)?;
        let p = cm.invariants()?.purities();
        let estimate = estimator::estimate_with_tol(p.mu1, p.mu2, p.mu, tol)?;
        let n_tilde = cm.ppt_smallest_eigenvalue()?;
        Self::assemble(estimate, Some(n_tilde))
    }

    fn assemble(e: estimator::EstimateResult, n_tilde_minus: Option<f64>) -> Result<Self> {
        let log_negativity = n_tilde_minus.map(log_negativity).transpose()?;
        Ok(Self {
            region: e.region,
            n_tilde_minus,
            log_negativity,
            en_max: e.en_max,
            en_min: e.en_min,
            en_avg: e.en_avg,
            rel_err: e.rel_err,
        })
    }

    /// `en_min - tol <= E_N <= en_max + tol`; `None` without an exact value.
    pub fn bounds_contain(&self, tol: f64) -> Option<bool> {
        self.log_negativity.map(|en| en >= self.en_min - tol && en <= self.en_max + tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ppt_eigenvalues_at_reference_points() {
        let vac = PurityPoint::new(1.0, 1.0, 1.0).with_delta(0.5);
        assert_abs_diff_eq!(ppt_smallest_eigenvalue(&vac).unwrap(), 0.5, epsilon = 1e-15);

        // D~ = 19/6 at the most entangled state
        assert_abs_diff_eq!(delta_tilde(0.5, 0.5, 5.0 / 6.0), 19.0 / 6.0, epsilon = 1e-15);
        let gmems = PurityPoint::new(0.5, 0.5, 0.6).with_delta(5.0 / 6.0);
        let n = ppt_smallest_eigenvalue(&gmems).unwrap();
        assert_abs_diff_eq!(n, 0.23623, epsilon = 1e-5);
        // brute-force value from the unsimplified root
        let dt: f64 = 19.0 / 6.0;
        let direct = (0.5 * (dt - (dt * dt - 0.25 / 0.36).sqrt())).sqrt();
        assert_abs_diff_eq!(n, direct, epsilon = 1e-13);

        let glems = PurityPoint::new(0.5, 0.5, 0.6).with_delta(0.25 * (1.0 + 1.0 / 0.36));
        assert_abs_diff_eq!(ppt_smallest_eigenvalue(&glems).unwrap(), 0.24066, epsilon = 2e-5);
    }

    #[test]
    fn ppt_eigenvalue_rejects_out_of_region() {
        let p = PurityPoint::new(0.5, 0.5, 0.6).with_delta(0.5);
        assert!(matches!(ppt_smallest_eigenvalue(&p), Err(Error::OutOfRegion(_))));
    }

    #[test]
    fn log_negativity_values() {
        assert_eq!(log_negativity(0.5).unwrap(), 0.0);
        assert_eq!(log_negativity(0.7).unwrap(), 0.0);
        assert_abs_diff_eq!(log_negativity(0.23623).unwrap(), -(0.47246_f64).ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(log_negativity((-2.0_f64).exp() / 2.0).unwrap(), 2.0, epsilon = 1e-15);
        assert!(log_negativity(0.0).is_err());
        assert!(log_negativity(-1.0).is_err());
        assert!(log_negativity(f64::NAN).is_err());
    }

    #[test]
    fn separability_of_reference_states() {
        assert!(is_separable(&CovarianceMatrix::vacuum()).unwrap());
        let c = |mu: f64| 0.5 * (4.0 - 1.0 / mu).sqrt();
        let entangled = StandardForm::new(1.0, 1.0, c(0.6), -c(0.6));
        assert!(!is_separable(&entangled).unwrap());
        let separable = StandardForm::new(1.0, 1.0, c(0.3), -c(0.3));
        assert!(is_separable(&separable).unwrap());
        let p = PurityPoint::new(0.5, 0.5, 0.3).with_delta(0.5 / 0.3);
        assert!(is_separable(&p).unwrap());
    }

    #[test]
    fn classifier_regions() {
        assert_eq!(classify(0.5, 0.5, 0.30).unwrap(), RegionLabel::Separable);
        assert_eq!(classify(0.5, 0.5, 0.35).unwrap(), RegionLabel::Coexistence);
        assert_eq!(classify(0.5, 0.5, 0.60).unwrap(), RegionLabel::Entangled);
        let t = RegionThresholds::new(0.5, 0.5);
        assert_abs_diff_eq!(t.separable, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.coexistence, 0.25 / 0.4375_f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(t.coexistence, 0.377_964_473, epsilon = 1e-9);
        assert!(matches!(classify(0.5, 0.5, 0.2), Err(Error::OutOfRegion(_))));
    }

    #[test]
    fn classifier_ties_go_to_the_lower_region() {
        let t = RegionThresholds::new(0.5, 0.5);
        assert_eq!(t.label(t.separable, DEFAULT_TOL), RegionLabel::Separable);
        assert_eq!(t.label(t.separable + 2e-9, DEFAULT_TOL), RegionLabel::Coexistence);
        assert_eq!(t.label(t.coexistence, DEFAULT_TOL), RegionLabel::Coexistence);
        assert_eq!(t.label(t.coexistence + 2e-9, DEFAULT_TOL), RegionLabel::Entangled);
    }

    #[test]
    fn slope_is_positive_and_matches_finite_difference() {
        let p = PurityPoint::new(0.5, 0.5, 0.6).with_delta(0.89);
        let s = delta_monotonicity_check(&p, 1e-5).unwrap();
        assert!(s.analytic > 0.0 && s.finite_difference > 0.0);
        assert_abs_diff_eq!(s.analytic, s.finite_difference, epsilon = 1e-8);

        let b = p.validate(DEFAULT_TOL).unwrap();
        for i in 1..=100 {
            let delta = b.min + (b.max - b.min) * i as f64 / 101.0;
            assert!(ppt_slope(0.5, 0.5, 0.6, delta) > 0.0);
        }
    }

    #[test]
    fn slope_vanishes_for_large_delta_tilde() {
        let mut last = f64::INFINITY;
        for dt in [10.0, 100.0, 1e3, 1e4] {
            // choose delta so that D~ = dt at mu = 0.6
            let delta = -dt + 4.0;
            let slope = ppt_slope(0.5, 0.5, 0.6, delta);
            assert!(slope > 0.0 && slope < last);
            last = slope;
        }
        assert!(last < 1e-8);
    }

    #[test]
    fn slope_step_must_stay_in_bounds() {
        let p = PurityPoint::new(0.5, 0.5, 0.6).with_delta(5.0 / 6.0);
        assert!(matches!(delta_monotonicity_check(&p, 1e-5), Err(Error::OutOfRegion(_))));
    }

    #[test]
    fn report_for_gmems_point() {
        let p = PurityPoint::new(0.5, 0.5, 0.6).with_delta(5.0 / 6.0);
        let r = EntanglementReport::from_purities(&p, DEFAULT_TOL).unwrap();
        assert_eq!(r.region, RegionLabel::Entangled);
        assert_abs_diff_eq!(r.log_negativity.unwrap(), r.en_max, epsilon = 1e-12);
        assert_eq!(r.bounds_contain(1e-9), Some(true));
        let bare = EntanglementReport::from_purities(&PurityPoint::new(0.5, 0.5, 0.6), DEFAULT_TOL).unwrap();
        assert_eq!(bare.log_negativity, None);
        assert_eq!(bare.bounds_contain(1e-9), None);
    }
}
