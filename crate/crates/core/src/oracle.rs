//! Seeded Monte Carlo checks of the analytic bounds.
//!
//! States are drawn in standard-form coordinates by rejection sampling, then
//! pushed through the covariance-matrix pipeline (symplectic spectrum of the
//! partial transpose) and compared against the purity-only formulas.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::covariance::StandardForm;
use crate::entangle::{log_negativity, RegionLabel, RegionThresholds};
use crate::error::{Error, Result, DEFAULT_TOL};
use crate::estimator::{en_max_unchecked, en_min_unchecked};
use crate::extremal::{gmems, gmems_squeezing, least_entangled, squeezed_thermal};
use crate::param::{max_global_purity, DeltaBounds, PurityPoint};

/// Consecutive rejections after which the sampler gives up.
pub const MAX_CONSECUTIVE_REJECTIONS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    /// Upper end of the sampling range for `a` and `b`.
    pub a_max: f64,
    pub tolerance: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self { seed: 0, count: 100_000, a_max: 5.0, tolerance: DEFAULT_TOL }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Config("count must be positive".into()));
        }
        if !(self.a_max > 0.5) || !self.a_max.is_finite() {
            return Err(Error::Config(format!("a_max must exceed 1/2, got {}", self.a_max)));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::Config(format!("tolerance must be >= 0, got {}", self.tolerance)));
        }
        Ok(())
    }
}

/// Rejection sampler over physical standard forms: `a, b ~ U[1/2, a_max]`,
/// `c_plus, c_minus ~ U[-sqrt(ab), sqrt(ab)]`. Emits canonical orientation.
#[derive(Debug, Clone)]
pub struct StandardFormSampler {
    rng: ChaCha8Rng,
    a_max: f64,
    trials: u64,
    accepted: u64,
}

impl StandardFormSampler {
    pub fn new(seed: u64, a_max: f64) -> Result<Self> {
        SampleConfig { seed, count: 1, a_max, tolerance: DEFAULT_TOL }.validate()?;
        Ok(Self { rng: ChaCha8Rng::seed_from_u64(seed), a_max, trials: 0, accepted: 0 })
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.accepted as f64 / self.trials as f64
        }
    }
}

impl Iterator for StandardFormSampler {
    type Item = Result<StandardForm>;

    fn next(&mut self) -> Option<Self::Item> {
        for _ in 0..MAX_CONSECUTIVE_REJECTIONS {
            self.trials += 1;
            let a = self.rng.random_range(0.5..=self.a_max);
            let b = self.rng.random_range(0.5..=self.a_max);
            let limit = (a * b).sqrt();
            let c_plus = self.rng.random_range(-limit..=limit);
            let c_minus = self.rng.random_range(-limit..=limit);
            let sf = StandardForm::new(a, b, c_plus, c_minus);
            if sf.check_physical().is_ok() {
                self.accepted += 1;
                return Some(Ok(sf.canonical()));
            }
        }
        Some(Err(Error::Config(format!("no physical state in {MAX_CONSECUTIVE_REJECTIONS} consecutive trials"))))
    }
}

/// Draws `cfg.count` physical standard forms; returns them with the sampler
/// state (for acceptance statistics).
pub fn random_standard_forms(cfg: &SampleConfig) -> Result<(Vec<StandardForm>, StandardFormSampler)> {
    cfg.validate()?;
    let mut sampler = StandardFormSampler::new(cfg.seed, cfg.a_max)?;
    let forms = sampler.by_ref().take(cfg.count).collect::<Result<Vec<_>>>()?;
    Ok((forms, sampler))
}

/// Margins of one state against every purity-only claim. Negative margins
/// are violations (beyond the tolerance used to judge them).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointCheck {
    /// `mu - mu1 mu2`
    pub no_lptp: f64,
    /// `max_global_purity - mu`
    pub marginal_bound: f64,
    pub delta_lower: f64,
    pub delta_upper: f64,
    /// `E_N - en_min`
    pub en_lower: f64,
    /// `en_max - E_N`
    pub en_upper: f64,
    pub region: RegionLabel,
    pub region_consistent: bool,
}

impl PointCheck {
    pub fn violations(&self, tol: f64) -> ViolationCounts {
        let flag = |margin: f64| u64::from(!(margin >= -tol));
        let mut v = ViolationCounts {
            no_lptp: flag(self.no_lptp),
            marginal_bound: flag(self.marginal_bound),
            delta_bounds: flag(self.delta_lower.min(self.delta_upper)),
            en_containment: flag(self.en_lower.min(self.en_upper)),
            region_consistency: u64::from(!self.region_consistent),
            total: 0,
        };
        v.total = v.no_lptp + v.marginal_bound + v.delta_bounds + v.en_containment + v.region_consistency;
        v
    }
}

/// Checks a purity point (with Delta) whose exact logarithmic negativity
/// and separability were computed independently.
pub fn check_point(p: &PurityPoint, exact_en: f64, separable: bool, tol: f64) -> Result<PointCheck> {
    let delta = p.require_delta()?;
    let (mu1, mu2, mu) = (p.mu1, p.mu2, p.mu);
    let bounds = DeltaBounds::evaluate(mu1, mu2, mu);
    let region = RegionThresholds::new(mu1, mu2).label(mu, tol);
    let region_consistent = match region {
        RegionLabel::Separable => separable,
        RegionLabel::Entangled => !separable,
        RegionLabel::Coexistence => true,
    };
    Ok(PointCheck {
        no_lptp: mu - mu1 * mu2,
        marginal_bound: max_global_purity(mu1, mu2) - mu,
        delta_lower: delta - bounds.min,
        delta_upper: bounds.max - delta,
        en_lower: exact_en - en_min_unchecked(mu1, mu2, mu),
        en_upper: en_max_unchecked(mu1, mu2, mu) - exact_en,
        region,
        region_consistent,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationCounts {
    pub no_lptp: u64,
    pub marginal_bound: u64,
    pub delta_bounds: u64,
    pub en_containment: u64,
    pub region_consistency: u64,
    pub total: u64,
}

impl ViolationCounts {
    fn add(&mut self, other: &Self) {
        self.no_lptp += other.no_lptp;
        self.marginal_bound += other.marginal_bound;
        self.delta_bounds += other.delta_bounds;
        self.en_containment += other.en_containment;
        self.region_consistency += other.region_consistency;
        self.total += other.total;
    }
}

/// Smallest margin seen for each check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstMargins {
    pub no_lptp: f64,
    pub marginal_bound: f64,
    pub delta_lower: f64,
    pub delta_upper: f64,
    pub en_lower: f64,
    pub en_upper: f64,
}

impl WorstMargins {
    fn new() -> Self {
        Self {
            no_lptp: f64::INFINITY,
            marginal_bound: f64::INFINITY,
            delta_lower: f64::INFINITY,
            delta_upper: f64::INFINITY,
            en_lower: f64::INFINITY,
            en_upper: f64::INFINITY,
        }
    }

    fn update(&mut self, c: &PointCheck) {
        self.no_lptp = self.no_lptp.min(c.no_lptp);
        self.marginal_bound = self.marginal_bound.min(c.marginal_bound);
        self.delta_lower = self.delta_lower.min(c.delta_lower);
        self.delta_upper = self.delta_upper.min(c.delta_upper);
        self.en_lower = self.en_lower.min(c.en_lower);
        self.en_upper = self.en_upper.min(c.en_upper);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionCounts {
    pub separable: u64,
    pub coexistence: u64,
    pub entangled: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub config: SampleConfig,
    pub samples: u64,
    pub trials: u64,
    pub acceptance_rate: f64,
    pub violations: ViolationCounts,
    pub worst_margins: WorstMargins,
    pub regions: RegionCounts,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.violations.total == 0
    }
}

/// Checks one physical standard form through the covariance-matrix pipeline.
pub fn check_state(sf: &StandardForm, tol: f64) -> Result<PointCheck> {
    let cm = sf.to_covariance();
    let inv = cm.invariants()?;
    let p = inv.purities();
    let n_tilde = inv.spectrum(true)?.n_minus;
    let en = log_negativity(n_tilde)?;
    check_point(&p, en, n_tilde >= 0.5 - tol, tol)
}

/// Every sampled state must respect the purity constraints, Delta
/// bounds, `en_min <= E_N <= en_max` and the region scheme.
pub fn validate_bounds(cfg: &SampleConfig) -> Result<BoundsReport> {
    let (forms, sampler) = random_standard_forms(cfg)?;
    let mut violations = ViolationCounts::default();
    let mut worst = WorstMargins::new();
    let mut regions = RegionCounts { separable: 0, coexistence: 0, entangled: 0 };
    for sf in &forms {
        let check = check_state(sf, cfg.tolerance)?;
        violations.add(&check.violations(cfg.tolerance));
        worst.update(&check);
        match check.region {
            RegionLabel::Separable => regions.separable += 1,
            RegionLabel::Coexistence => regions.coexistence += 1,
            RegionLabel::Entangled => regions.entangled += 1,
        }
    }
    Ok(BoundsReport {
        config: *cfg,
        samples: forms.len() as u64,
        trials: sampler.trials(),
        acceptance_rate: sampler.acceptance_rate(),
        violations,
        worst_margins: worst,
        regions,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub config: SampleConfig,
    pub triples: u64,
    /// `|en_max - E_N(most entangled state)|`
    pub max_dev_en_max: f64,
    /// `|en_min - E_N(least entangled state)|`
    pub max_dev_en_min: f64,
    /// Largest entry difference between the most entangled standard form and
    /// the squeezed thermal state rebuilt from its squeezing parameters.
    pub max_dev_squeezing: f64,
    /// `|en_max - en_min|` at unit global purity.
    pub max_dev_pure: f64,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        let tol = self.config.tolerance;
        self.max_dev_en_max <= tol
            && self.max_dev_en_min <= tol
            && self.max_dev_squeezing <= tol
            && self.max_dev_pure <= tol
    }
}

/// Draws admissible purity triples `mu1, mu2 ~ U[1/(2 a_max), 1]`,
/// `mu ~ U[mu1 mu2, max_global_purity]`.
pub fn random_purity_triple<R: Rng>(rng: &mut R, a_max: f64) -> (f64, f64, f64) {
    let low = 0.5 / a_max;
    let mu1 = rng.random_range(low..=1.0);
    let mu2 = rng.random_range(low..=1.0);
    let mu = rng.random_range(mu1 * mu2..=max_global_purity(mu1, mu2));
    (mu1, mu2, mu)
}

fn pipeline_en(sf: &StandardForm) -> Result<f64> {
    log_negativity(sf.to_covariance().invariants()?.spectrum(true)?.n_minus)
}

/// Closed-form bounds against the symplectic pipeline applied to the
/// constructed extremal states.
pub fn crosscheck_closed_forms(cfg: &SampleConfig) -> Result<CrosscheckReport> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = CrosscheckReport {
        config: *cfg,
        triples: 0,
        max_dev_en_max: 0.0,
        max_dev_en_min: 0.0,
        max_dev_squeezing: 0.0,
        max_dev_pure: 0.0,
    };
    for _ in 0..cfg.count {
        let (mu1, mu2, mu) = random_purity_triple(&mut rng, cfg.a_max);
        let most = gmems(mu1, mu2, mu)?;
        let least = least_entangled(mu1, mu2, mu)?;
        report.max_dev_en_max = report.max_dev_en_max.max((en_max_unchecked(mu1, mu2, mu) - pipeline_en(&most)?).abs());
        report.max_dev_en_min =
            report.max_dev_en_min.max((en_min_unchecked(mu1, mu2, mu) - pipeline_en(&least)?).abs());

        let rebuilt = squeezed_thermal(&gmems_squeezing(mu1, mu2, mu)?);
        let gap =
            [most.a - rebuilt.a, most.b - rebuilt.b, most.c_plus - rebuilt.c_plus, most.c_minus - rebuilt.c_minus]
                .iter()
                .fold(0.0_f64, |m, v| m.max(v.abs()));
        report.max_dev_squeezing = report.max_dev_squeezing.max(gap);

        let mu_i = mu1;
        report.max_dev_pure =
            report.max_dev_pure.max((en_max_unchecked(mu_i, mu_i, 1.0) - en_min_unchecked(mu_i, mu_i, 1.0)).abs());
        report.triples += 1;
    }
    Ok(report)
}
