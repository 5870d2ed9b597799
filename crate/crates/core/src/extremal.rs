//! Extremal families at fixed purities: maximally entangled (lower Delta
//! bound), least entangled (upper bound), maximally entangled at fixed
//! marginals, and the squeezed thermal states that realize the first family.

use serde::{Deserialize, Serialize};

use crate::covariance::StandardForm;
use crate::error::{Error, Result, DEFAULT_TOL};
use crate::param::{check_purity_constraints, max_global_purity, standard_form_unchecked, DeltaBounds};

/// Two-mode squeezing `r` applied to a product of thermal states with
/// symplectic eigenvalues `n_minus` (mode 1) and `n_plus` (mode 2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedThermalParams {
    pub r: f64,
    pub n_minus: f64,
    pub n_plus: f64,
}

impl SqueezedThermalParams {
    pub fn new(r: f64, n_minus: f64, n_plus: f64) -> Result<Self> {
        let params = Self { r, n_minus, n_plus };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r >= 0.0) || !self.r.is_finite() {
            return Err(Error::UnphysicalParameters(format!("squeezing must be >= 0, got {}", self.r)));
        }
        for (name, n) in [("n_minus", self.n_minus), ("n_plus", self.n_plus)] {
            if !(n >= 0.5 - DEFAULT_TOL) || !n.is_finite() {
                return Err(Error::UnphysicalParameters(format!("{name} must be >= 1/2, got {n}")));
            }
        }
        Ok(())
    }
}

/// Most entangled states: `c_pm = +-1/2 sqrt(1/(mu1 mu2) - 1/mu)`.
pub fn gmems(mu1: f64, mu2: f64, mu: f64) -> Result<StandardForm> {
    check_purity_constraints(mu1, mu2, mu)?;
    Ok(gmems_unchecked(mu1, mu2, mu))
}

fn gmems_unchecked(mu1: f64, mu2: f64, mu: f64) -> StandardForm {
    let c = 0.5 * (1.0 / (mu1 * mu2) - 1.0 / mu).max(0.0).sqrt();
    StandardForm::new(0.5 / mu1, 0.5 / mu2, c, -c)
}

/// Least entangled states saturating the uncertainty relation,
/// `delta = (1 + 1/mu^2)/4`.
///
/// Only defined where that value is the active upper bound on Delta;
/// see [`least_entangled`] for the full purity range.
pub fn glems(mu1: f64, mu2: f64, mu: f64) -> Result<StandardForm> {
    check_purity_constraints(mu1, mu2, mu)?;
    let bounds = DeltaBounds::evaluate(mu1, mu2, mu);
    if bounds.heisenberg > bounds.other + DEFAULT_TOL {
        return Err(Error::InactiveBranch { heisenberg: bounds.heisenberg, other: bounds.other });
    }
    Ok(glems_unchecked(mu1, mu2, mu))
}

/// ```text
/// c_pm = 1/8 sqrt(P [-4/mu^2 + (1 + 1/mu^2 - D^2/P^2)^2])
///     +- 1/(8 mu) sqrt(-4P + [(1 + mu^2) P^2 - mu^2 S^2]^2 / (mu^2 P^3))
/// ```
/// with both radicands split into linear factors.
fn glems_unchecked(mu1: f64, mu2: f64, mu: f64) -> StandardForm {
    let product = mu1 * mu2;
    let sum = mu1 + mu2;
    let u = 1.0 / mu;
    let d = (mu1 - mu2).abs() / product;
    let first = product * (u - 1.0 - d) * (u - 1.0 + d) * (u + 1.0 - d) * (u + 1.0 + d);
    let half_sum = 0.125 * first.max(0.0).sqrt();

    let (pm, pp, ms) = (product * (1.0 - mu), product * (1.0 + mu), mu * sum);
    let second = (pm - ms) * (pm + ms) * (pp - ms) * (pp + ms) / (mu * mu * product.powi(3));
    let eps = 0.125 * u * second.max(0.0).sqrt();

    StandardForm::new(0.5 / mu1, 0.5 / mu2, half_sum + eps, half_sum - eps)
}

/// States with the largest Delta at these purities: the closed-form
/// least entangled state where the uncertainty branch is active, otherwise
/// the generic inversion at the upper bound.
pub fn least_entangled(mu1: f64, mu2: f64, mu: f64) -> Result<StandardForm> {
    check_purity_constraints(mu1, mu2, mu)?;
    let bounds = DeltaBounds::evaluate(mu1, mu2, mu);
    if bounds.heisenberg <= bounds.other + DEFAULT_TOL {
        Ok(glems_unchecked(mu1, mu2, mu))
    } else {
        Ok(standard_form_unchecked(mu1, mu2, mu, bounds.max, &bounds))
    }
}

/// Maximally entangled state at fixed marginals, where the global purity
/// takes its largest admissible value and the two extremal families meet.
pub fn gmemms(mu1: f64, mu2: f64) -> Result<StandardForm> {
    let mu = max_global_purity(mu1, mu2);
    let most = gmems(mu1, mu2, mu)?;
    let least = least_entangled(mu1, mu2, mu)?;
    // Compare invariants: the standard-form entries carry square-root
    // sensitivity at the saturated bound, the invariants do not.
    let (x, y) = (most.invariants(), least.invariants());
    let scale = x.delta.max(1.0);
    let gap = (x.delta - y.delta).abs().max((x.det_gamma - y.det_gamma).abs()).max((x.det_sigma - y.det_sigma).abs());
    if gap > 1e-9 * scale {
        return Err(Error::UnphysicalParameters(format!(
            "extremal families differ by {gap:e} at the marginal purity bound"
        )));
    }
    Ok(most)
}

pub fn squeezed_thermal(params: &SqueezedThermalParams) -> StandardForm {
    let (ch, sh) = (params.r.cosh(), params.r.sinh());
    let (ch2, sh2) = (ch * ch, sh * sh);
    let c = 0.5 * (params.n_minus + params.n_plus) * (2.0 * params.r).sinh();
    StandardForm::new(params.n_minus * ch2 + params.n_plus * sh2, params.n_plus * ch2 + params.n_minus * sh2, c, -c)
}

/// Squeezed thermal parameters reproducing [`gmems`].
///
/// The squeezing follows from `tanh 2r = 2 c_plus / (a + b)
/// = 2 sqrt(mu1 mu2 - mu1^2 mu2^2 / mu) / (mu1 + mu2)`. The thermal values
/// are the symplectic spectrum of the state, assigned so that
/// `a - b = n_minus - n_plus`.
pub fn gmems_squeezing(mu1: f64, mu2: f64, mu: f64) -> Result<SqueezedThermalParams> {
    let sf = gmems(mu1, mu2, mu)?;
    let product = mu1 * mu2;
    let tanh_2r = 2.0 * (product - product * product / mu).max(0.0).sqrt() / (mu1 + mu2);
    let r = 0.5 * tanh_2r.atanh();
    let spectrum = sf.spectrum(false);
    let (n_minus, n_plus) =
        if sf.a <= sf.b { (spectrum.n_minus, spectrum.n_plus) } else { (spectrum.n_plus, spectrum.n_minus) };
    Ok(SqueezedThermalParams { r, n_minus, n_plus })
}
