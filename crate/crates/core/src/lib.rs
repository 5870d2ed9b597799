//! Entanglement of two-mode Gaussian states from global and marginal purities.
//!
//! A zero-mean two-mode Gaussian state is fixed, up to local unitaries, by
//! four numbers: the marginal purities `mu1`, `mu2`, the global purity `mu`,
//! and the invariant `delta`. At fixed purities `delta` is confined to a closed
//! interval and the logarithmic negativity decreases monotonically along it,
//! so the purities alone bound the entanglement from above and below.
//!
//! - [`covariance`]: covariance matrices, invariants, symplectic spectra,
//!   standard form.
//! - [`param`]: the `(mu1, mu2, mu, delta)` coordinates and their validity region.
//! - [`entangle`]: PPT criterion, logarithmic negativity, region classifier.
//! - [`extremal`]: most/least entangled states and squeezed thermal states.
//! - [`estimator`]: purity-only bounds on the logarithmic negativity.
//! - [`oracle`]: seeded Monte Carlo validation of all of the above.
//!
//! ```
//! use gce_core::{estimate, RegionLabel};
//!
//! let e = estimate(0.5, 0.5, 0.6).unwrap();
//! assert_eq!(e.region, RegionLabel::Entangled);
//! assert!(e.en_min <= e.en_avg && e.en_avg <= e.en_max);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod covariance;
pub mod entangle;
pub mod error;
pub mod estimator;
pub mod extremal;
pub mod oracle;
pub mod param;

pub use covariance::{CovarianceMatrix, Invariants, StandardForm, SymplecticSpectrum, VACUUM_CONVENTION};
pub use entangle::{
    classify, classify_with_tol, delta_monotonicity_check, is_separable, log_negativity, ppt_smallest_eigenvalue,
    DeltaSlope, EntanglementReport, PartialTranspose, RegionLabel, RegionThresholds,
};
pub use error::{Error, PhysicalityViolation, RegionViolation, Result, DEFAULT_TOL};
pub use estimator::{en_max, en_min, estimate, estimate_with_tol, EstimateResult};
pub use extremal::{glems, gmemms, gmems, gmems_squeezing, least_entangled, squeezed_thermal, SqueezedThermalParams};
pub use oracle::{
    crosscheck_closed_forms, random_standard_forms, validate_bounds, BoundsReport, CrosscheckReport, SampleConfig,
};
pub use param::{
    check_purity_constraints, check_purity_constraints_with_tol, delta_bounds, max_global_purity, purity_point,
    standard_form_from_purities, DeltaBounds, PurityPoint,
};
