//! Parametrization of two-mode states by their global purity `mu`, marginal
//! purities `mu1`, `mu2`, and the invariant `delta`.

use serde::{Deserialize, Serialize};

use crate::covariance::StandardForm;
use crate::error::{Error, RegionViolation, Result, DEFAULT_TOL};

/// Global and marginal purities, optionally with Delta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PurityPoint {
    pub mu1: f64,
    pub mu2: f64,
    pub mu: f64,
    #[serde(default)]
    pub delta: Option<f64>,
}

impl PurityPoint {
    pub fn new(mu1: f64, mu2: f64, mu: f64) -> Self {
        Self { mu1, mu2, mu, delta: None }
    }

    pub fn with_delta(self, delta: f64) -> Self {
        Self { delta: Some(delta), ..self }
    }

    pub fn require_delta(&self) -> Result<f64> {
        self.delta.ok_or_else(|| Error::Malformed("purity point carries no delta".into()))
    }

    /// Checks the purity constraints and, if present, that `delta` lies within
    /// its bounds.
    pub fn validate(&self, tol: f64) -> Result<DeltaBounds> {
        check_purity_constraints_with_tol(self.mu1, self.mu2, self.mu, tol)?;
        let bounds = DeltaBounds::evaluate(self.mu1, self.mu2, self.mu);
        if let Some(delta) = self.delta {
            bounds.check(delta, tol)?;
        }
        Ok(bounds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("purity points always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}

/// Largest global purity compatible with the marginals,
/// `mu1 mu2 / (mu1 mu2 + |mu1 - mu2|)`.
pub fn max_global_purity(mu1: f64, mu2: f64) -> f64 {
    let product = mu1 * mu2;
    product / (product + (mu1 - mu2).abs())
}

pub fn check_purity_constraints(mu1: f64, mu2: f64, mu: f64) -> Result<(), RegionViolation> {
    check_purity_constraints_with_tol(mu1, mu2, mu, DEFAULT_TOL)
}

/// Passes iff all purities lie in `(0, 1]` and
/// `mu1 mu2 <= mu <= mu1 mu2 / (mu1 mu2 + |mu1 - mu2|)`, each side closed
/// with slack `tol`.
pub fn check_purity_constraints_with_tol(mu1: f64, mu2: f64, mu: f64, tol: f64) -> Result<(), RegionViolation> {
    for (name, value) in [("mu1", mu1), ("mu2", mu2), ("mu", mu)] {
        if !(value > 0.0 && value <= 1.0 + tol) {
            return Err(RegionViolation::PurityRange { name, value });
        }
    }
    let lower = mu1 * mu2;
    if mu < lower - tol {
        return Err(RegionViolation::BelowProduct { mu, bound: lower });
    }
    let upper = max_global_purity(mu1, mu2);
    if mu > upper + tol {
        return Err(RegionViolation::AboveMarginalBound { mu, bound: upper });
    }
    Ok(())
}

/// Range of Delta at fixed purities.
///
/// `max` is the smaller of two branches: `other` (from the existence of the
/// standard form) and `heisenberg = (1 + 1/mu^2)/4` (saturation of the
/// uncertainty relation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaBounds {
    pub min: f64,
    pub max: f64,
    pub heisenberg: f64,
    pub other: f64,
}

impl DeltaBounds {
    pub(crate) fn evaluate(mu1: f64, mu2: f64, mu: f64) -> Self {
        let product = mu1 * mu2;
        let p2 = product * product;
        let min = 0.5 / mu + (mu1 - mu2).powi(2) / (4.0 * p2);
        let other = (mu1 + mu2).powi(2) / (4.0 * p2) - 0.5 / mu;
        let heisenberg = 0.25 * (1.0 + 1.0 / (mu * mu));
        Self { min, max: other.min(heisenberg), heisenberg, other }
    }

    pub fn heisenberg_active(&self) -> bool {
        self.heisenberg <= self.other
    }

    pub fn contains(&self, delta: f64, tol: f64) -> bool {
        self.check(delta, tol).is_ok()
    }

    pub fn check(&self, delta: f64, tol: f64) -> Result<(), RegionViolation> {
        if !(delta >= self.min - tol) {
            return Err(RegionViolation::DeltaBelowMin { delta, min: self.min });
        }
        if !(delta <= self.max + tol) {
            return Err(RegionViolation::DeltaAboveMax { delta, max: self.max });
        }
        Ok(())
    }
}

pub fn delta_bounds(mu1: f64, mu2: f64, mu: f64) -> Result<DeltaBounds> {
    check_purity_constraints(mu1, mu2, mu)?;
    Ok(DeltaBounds::evaluate(mu1, mu2, mu))
}

/// Purities and Delta of a physical standard form.
pub fn purity_point(sf: &StandardForm) -> Result<PurityPoint> {
    sf.check_physical()?;
    Ok(sf.invariants().purities())
}

/// Inverts [`purity_point`]: `a = 1/(2 mu1)`, `b = 1/(2 mu2)` and
/// `c_pm = s/2 +- eps` with `s = |c+ + c-|`, `2 eps = |c+ - c-|`.
pub fn standard_form_from_purities(p: &PurityPoint) -> Result<StandardForm> {
    standard_form_from_purities_with_tol(p, DEFAULT_TOL)
}

pub fn standard_form_from_purities_with_tol(p: &PurityPoint, tol: f64) -> Result<StandardForm> {
    let delta = p.require_delta()?;
    let bounds = p.validate(tol)?;
    Ok(standard_form_unchecked(p.mu1, p.mu2, p.mu, delta, &bounds))
}

/// Both nested radicands are differences of squares. Writing them as products
/// isolates the factors `delta - min` and `other - delta`, which vanish
/// exactly on the extremal states, so saturating inputs produce exact zeros.
pub(crate) fn standard_form_unchecked(mu1: f64, mu2: f64, mu: f64, delta: f64, bounds: &DeltaBounds) -> StandardForm {
    let product = mu1 * mu2;
    let sum = mu1 + mu2;
    let shifted = delta - (mu1 - mu2).powi(2) / (4.0 * product * product);

    // mu1 mu2 [shifted^2 - 1/(4 mu^2)]
    let above_min = (delta - bounds.min).max(0.0);
    let s_sq = product * above_min * (shifted + 0.5 / mu).max(0.0);
    let half_sum = 0.5 * s_sq.sqrt();

    // ([sum^2 - 4 P^2 delta]^2 / P^3 - 4 P / mu^2) / 64
    let below_other = (bounds.other - delta).max(0.0);
    let second = (sum * sum - 4.0 * product * product * delta + 2.0 * product * product / mu).max(0.0);
    let eps = 0.125 * (4.0 * below_other * second / product).sqrt();

    StandardForm::new(0.5 / mu1, 0.5 / mu2, half_sum + eps, half_sum - eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Unfactored inversion, nested radicals and all.
    fn nested_inversion(mu1: f64, mu2: f64, mu: f64, delta: f64) -> (f64, f64) {
        let p = mu1 * mu2;
        let first = 0.5 * (p * ((delta - (mu1 - mu2).powi(2) / (4.0 * p * p)).powi(2) - 1.0 / (4.0 * mu * mu))).sqrt();
        let eps =
            0.125 * (((mu1 + mu2).powi(2) - 4.0 * p * p * delta).powi(2) / p.powi(3) - 4.0 * p / (mu * mu)).sqrt();
        (first + eps, first - eps)
    }

    #[test]
    fn factored_inversion_matches_nested_form() {
        for &(mu1, mu2, mu, t) in
            &[(0.5, 0.5, 0.6, 0.3), (0.8, 0.4, 0.4, 0.5), (0.3, 0.7, 0.3, 0.9), (0.2, 0.25, 0.1, 0.1)]
        {
            let b = DeltaBounds::evaluate(mu1, mu2, mu);
            let delta = b.min + t * (b.max - b.min);
            let sf = standard_form_unchecked(mu1, mu2, mu, delta, &b);
            let (cp, cm) = nested_inversion(mu1, mu2, mu, delta);
            assert_abs_diff_eq!(sf.c_plus, cp, epsilon = 1e-10);
            assert_abs_diff_eq!(sf.c_minus, cm, epsilon = 1e-10);
        }
    }

    #[test]
    fn purity_points_of_reference_forms() {
        assert_eq!(purity_point(&StandardForm::vacuum()).unwrap(), PurityPoint::new(1.0, 1.0, 1.0).with_delta(0.5));
        assert_eq!(
            purity_point(&StandardForm::new(1.0, 1.0, 0.0, 0.0)).unwrap(),
            PurityPoint::new(0.5, 0.5, 0.25).with_delta(2.0)
        );
        let c = 0.763_762_615_825_973_3;
        let p = purity_point(&StandardForm::new(1.0, 1.0, c, -c)).unwrap();
        assert_abs_diff_eq!(p.mu1, 0.5);
        assert_abs_diff_eq!(p.mu, 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(p.delta.unwrap(), 5.0 / 6.0, epsilon = 1e-12);
        assert!(purity_point(&StandardForm::new(0.4, 0.4, 0.0, 0.0)).is_err());
    }

    #[test]
    fn inversion_reference_points() {
        let vac = standard_form_from_purities(&PurityPoint::new(1.0, 1.0, 1.0).with_delta(0.5)).unwrap();
        assert_eq!(vac, StandardForm::vacuum());

        let gmems = standard_form_from_purities(&PurityPoint::new(0.5, 0.5, 0.6).with_delta(5.0 / 6.0)).unwrap();
        assert_abs_diff_eq!(gmems.a, 1.0);
        assert_abs_diff_eq!(gmems.c_plus, 0.763_762_615_825_973_3, epsilon = 1e-9);
        assert_abs_diff_eq!(gmems.c_minus, -0.763_762_615_825_973_3, epsilon = 1e-9);

        let thermal = standard_form_from_purities(&PurityPoint::new(0.5, 0.5, 0.25).with_delta(2.0)).unwrap();
        assert_eq!(thermal, StandardForm::new(1.0, 1.0, 0.0, 0.0));
    }

    #[test]
    fn inversion_requires_delta() {
        assert!(matches!(standard_form_from_purities(&PurityPoint::new(0.5, 0.5, 0.6)), Err(Error::Malformed(_))));
    }

    #[test]
    fn delta_out_of_bounds_names_side() {
        let p = PurityPoint::new(0.5, 0.5, 0.6);
        assert!(matches!(
            standard_form_from_purities(&p.with_delta(0.8)),
            Err(Error::OutOfRegion(RegionViolation::DeltaBelowMin { .. }))
        ));
        assert!(matches!(
            standard_form_from_purities(&p.with_delta(1.0)),
            Err(Error::OutOfRegion(RegionViolation::DeltaAboveMax { .. }))
        ));
    }

    #[test]
    fn bounds_at_reference_points() {
        let b = delta_bounds(0.5, 0.5, 0.25).unwrap();
        assert_abs_diff_eq!(b.min, 2.0);
        assert_abs_diff_eq!(b.max, 2.0);

        let b = delta_bounds(1.0, 1.0, 1.0).unwrap();
        assert_eq!((b.min, b.max), (0.5, 0.5));

        let b = delta_bounds(0.5, 0.5, 0.6).unwrap();
        assert_abs_diff_eq!(b.min, 5.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b.max, 0.25 * (1.0 + 1.0 / 0.36), epsilon = 1e-15);
        assert_abs_diff_eq!(b.max, 0.944_444_444_444_444, epsilon = 1e-12);
        assert!(b.heisenberg_active());

        assert!(delta_bounds(0.5, 0.5, 0.2).is_err());
    }

    #[test]
    fn purity_constraints() {
        assert_eq!(
            check_purity_constraints(0.5, 0.5, 0.2),
            Err(RegionViolation::BelowProduct { mu: 0.2, bound: 0.25 })
        );
        assert_eq!(check_purity_constraints(0.5, 0.5, 0.9), Ok(()));
        match check_purity_constraints(0.8, 0.4, 0.6) {
            Err(RegionViolation::AboveMarginalBound { bound, .. }) => {
                assert_abs_diff_eq!(bound, 4.0 / 9.0, epsilon = 1e-15)
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            check_purity_constraints(0.0, 0.5, 0.5),
            Err(RegionViolation::PurityRange { name: "mu1", .. })
        ));
        assert!(matches!(
            check_purity_constraints(0.5, 0.5, 1.1),
            Err(RegionViolation::PurityRange { name: "mu", .. })
        ));
        // closed boundaries
        assert_eq!(check_purity_constraints(0.5, 0.5, 0.25), Ok(()));
        assert_eq!(check_purity_constraints(0.8, 0.4, 4.0 / 9.0), Ok(()));
    }

    #[test]
    fn json_shape() {
        let p = PurityPoint::new(0.5, 0.5, 0.6).with_delta(0.9);
        assert_eq!(p.to_json(), r#"{"mu1":0.5,"mu2":0.5,"mu":0.6,"delta":0.9}"#);
        assert_eq!(PurityPoint::from_json(r#"{"mu1":0.5,"mu2":0.5,"mu":0.6}"#).unwrap().delta, None);
    }
}
