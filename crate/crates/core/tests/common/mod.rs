#![allow(dead_code)]

use gce_core::covariance::Matrix4;
use gce_core::{max_global_purity, CovarianceMatrix, DeltaBounds, PurityPoint};
use nalgebra::SMatrix;
use rand::Rng;

/// `R(theta) diag(e^r, e^-r) R(phi)`, determinant one.
pub fn single_mode_symplectic(theta: f64, r: f64, phi: f64) -> [[f64; 2]; 2] {
    let rot = |t: f64| [[t.cos(), -t.sin()], [t.sin(), t.cos()]];
    let sq = [[r.exp(), 0.0], [0.0, (-r).exp()]];
    mul2(&mul2(&rot(theta), &sq), &rot(phi))
}

fn mul2(x: &[[f64; 2]; 2], y: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

pub fn direct_sum(s1: [[f64; 2]; 2], s2: [[f64; 2]; 2]) -> Matrix4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = s1[i][j];
            out[i + 2][j + 2] = s2[i][j];
        }
    }
    out
}

pub fn random_local_symplectic<R: Rng>(rng: &mut R, max_squeeze: f64) -> Matrix4 {
    let mut one = || {
        single_mode_symplectic(
            rng.random_range(0.0..std::f64::consts::TAU),
            rng.random_range(-max_squeeze..=max_squeeze),
            rng.random_range(0.0..std::f64::consts::TAU),
        )
    };
    let s1 = one();
    let s2 = one();
    direct_sum(s1, s2)
}

/// Valid purity point from unit-interval coordinates.
pub fn purity_point_from_unit(mu1: f64, mu2: f64, t: f64, s: f64) -> PurityPoint {
    let low = mu1 * mu2;
    let mu = low + t * (max_global_purity(mu1, mu2) - low);
    let b = gce_core::delta_bounds(mu1, mu2, mu).expect("admissible by construction");
    PurityPoint::new(mu1, mu2, mu).with_delta(b.min + s * (b.max - b.min))
}

pub fn random_purity_point<R: Rng>(rng: &mut R) -> PurityPoint {
    purity_point_from_unit(
        rng.random_range(0.1..=1.0),
        rng.random_range(0.1..=1.0),
        rng.random_range(0.0..=1.0),
        rng.random_range(0.0..=1.0),
    )
}

pub fn bounds_of(p: &PurityPoint) -> DeltaBounds {
    gce_core::delta_bounds(p.mu1, p.mu2, p.mu).unwrap()
}

/// Smallest eigenvalue of `sigma + i Omega / 2`, via its real 8x8 embedding
/// `[[sigma, -Omega/2], [Omega/2, sigma]]`, plus the smallest eigenvalue of
/// `sigma` itself.
pub fn oracle_eigenvalues(cm: &CovarianceMatrix) -> (f64, f64) {
    let s = cm.entries();
    let omega = gce_core::covariance::SYMPLECTIC_FORM;
    let big = SMatrix::<f64, 8, 8>::from_fn(|i, j| match (i < 4, j < 4) {
        (true, true) => s[i][j],
        (false, false) => s[i - 4][j - 4],
        (true, false) => -0.5 * omega[i][j - 4],
        (false, true) => 0.5 * omega[i - 4][j],
    });
    let small = SMatrix::<f64, 4, 4>::from_fn(|i, j| s[i][j]);
    (big.symmetric_eigenvalues().min(), small.symmetric_eigenvalues().min())
}
