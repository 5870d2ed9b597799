//! Upper and lower bounds on the logarithmic negativity from the global and
//! marginal purities alone, and the averaged estimate built from them.

use serde::{Deserialize, Serialize};

use crate::entangle::{classify_with_tol, RegionLabel};
use crate::error::{Result, DEFAULT_TOL};
use crate::param::{check_purity_constraints, DeltaBounds};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub en_max: f64,
    pub en_min: f64,
    pub en_avg: f64,
    pub rel_err: f64,
    pub region: RegionLabel,
}

/// Logarithmic negativity of the most entangled states (lower Delta bound).
pub fn en_max(mu1: f64, mu2: f64, mu: f64) -> Result<f64> {
    check_purity_constraints(mu1, mu2, mu)?;
    Ok(en_max_unchecked(mu1, mu2, mu))
}

/// Logarithmic negativity of the least entangled states (upper Delta bound).
pub fn en_min(mu1: f64, mu2: f64, mu: f64) -> Result<f64> {
    check_purity_constraints(mu1, mu2, mu)?;
    Ok(en_min_unchecked(mu1, mu2, mu))
}

/// `-1/2 ln[-1/mu + (S / 2P^2)(S - sqrt(S^2 - 4P^2/mu))]` with `S = mu1 + mu2`,
/// `P = mu1 mu2`. Rationalizing the bracket gives `(2P / (mu (S + sqrt(..))))^2`,
/// which has no cancellation.
pub(crate) fn en_max_unchecked(mu1: f64, mu2: f64, mu: f64) -> f64 {
    let sum = mu1 + mu2;
    let product = mu1 * mu2;
    let root = (sum * sum - 4.0 * product * product / mu).max(0.0).sqrt();
    (mu * (sum + root) / (2.0 * product)).ln().max(0.0)
}

/// `-1/2 ln[K - sqrt(K^2 - 1/mu^2)]` with
/// `K = 1/mu1^2 + 1/mu2^2 - 1/(2 mu^2) - 1/2`, valid where the uncertainty
/// relation is the active upper bound on Delta. Elsewhere the least
/// entangled states are separable.
pub(crate) fn en_min_unchecked(mu1: f64, mu2: f64, mu: f64) -> f64 {
    let bounds = DeltaBounds::evaluate(mu1, mu2, mu);
    if bounds.heisenberg > bounds.other + DEFAULT_TOL {
        return 0.0;
    }
    let inv_mu_sq = 1.0 / (mu * mu);
    let k = 1.0 / (mu1 * mu1) + 1.0 / (mu2 * mu2) - 0.5 * inv_mu_sq - 0.5;
    let root = (k * k - inv_mu_sq).max(0.0).sqrt();
    (0.5 * ((k + root) / inv_mu_sq).ln()).max(0.0)
}

pub fn estimate(mu1: f64, mu2: f64, mu: f64) -> Result<EstimateResult> {
    estimate_with_tol(mu1, mu2, mu, DEFAULT_TOL)
}

/// Both bounds, their mean, and the relative error
/// `(en_max - en_min) / (en_max + en_min)` (zero when both bounds vanish).
pub fn estimate_with_tol(mu1: f64, mu2: f64, mu: f64, tol: f64) -> Result<EstimateResult> {
    let region = classify_with_tol(mu1, mu2, mu, tol)?;
    let en_max = en_max_unchecked(mu1, mu2, mu);
    let en_min = en_min_unchecked(mu1, mu2, mu).min(en_max);
    let total = en_max + en_min;
    let rel_err = if total > 0.0 { (en_max - en_min) / total } else { 0.0 };
    Ok(EstimateResult { en_max, en_min, en_avg: 0.5 * total, rel_err, region })
}
