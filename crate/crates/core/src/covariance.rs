//! Covariance matrices of two-mode Gaussian states, their local and global
//! symplectic invariants, symplectic spectra and standard-form reduction.
//!
//! Quadratures are ordered `(x1, p1, x2, p2)` and the vacuum has covariance
//! `I/2`, so the uncertainty principle reads `n_minus >= 1/2` and the purity of
//! a two-mode state is `1 / (4 sqrt(det sigma))`.

use serde::{Deserialize, Serialize};

use crate::error::{clamped_sqrt, Error, PhysicalityViolation, Result, DEFAULT_TOL};
use crate::param::PurityPoint;

/// Value of the `convention` field in covariance-matrix JSON documents.
pub const VACUUM_CONVENTION: &str = "vacuum=1/2";

/// The two-mode symplectic form `omega (+) omega`, `omega = [[0, 1], [-1, 0]]`.
pub const SYMPLECTIC_FORM: [[f64; 4]; 4] =
    [[0.0, 1.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0], [0.0, 0.0, -1.0, 0.0]];

pub type Matrix4 = [[f64; 4]; 4];
pub type Matrix2 = [[f64; 2]; 2];

#[inline]
fn det2(m: &Matrix2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn det3(m: &Matrix4) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Laplace expansion over the 2x2 minors of the first two rows.
fn det4(m: &Matrix4) -> f64 {
    let s0 = m[0][0] * m[1][1] - m[1][0] * m[0][1];
    let s1 = m[0][0] * m[1][2] - m[1][0] * m[0][2];
    let s2 = m[0][0] * m[1][3] - m[1][0] * m[0][3];
    let s3 = m[0][1] * m[1][2] - m[1][1] * m[0][2];
    let s4 = m[0][1] * m[1][3] - m[1][1] * m[0][3];
    let s5 = m[0][2] * m[1][3] - m[1][2] * m[0][3];

    let c5 = m[2][2] * m[3][3] - m[3][2] * m[2][3];
    let c4 = m[2][1] * m[3][3] - m[3][1] * m[2][3];
    let c3 = m[2][1] * m[3][2] - m[3][1] * m[2][2];
    let c2 = m[2][0] * m[3][3] - m[3][0] * m[2][3];
    let c1 = m[2][0] * m[3][2] - m[3][0] * m[2][2];
    let c0 = m[2][0] * m[3][1] - m[3][0] * m[2][1];

    s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
}

fn mul2(x: &Matrix2, y: &Matrix2) -> Matrix2 {
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// For symmetric positive definite `m` with `det m = d^2`, the symmetric
/// `S = sqrt(d) m^(-1/2)`: unit determinant and `S m S = d I`.
fn normalizing_symplectic(m: &Matrix2) -> Matrix2 {
    let d = det2(m).sqrt();
    // sqrt(m) = (m + d I) / sqrt(tr m + 2 d); invert through the adjugate
    let denom = (m[0][0] + m[1][1] + 2.0 * d).sqrt() * d.sqrt();
    [[(m[1][1] + d) / denom, -m[0][1] / denom], [-m[1][0] / denom, (m[0][0] + d) / denom]]
}

/// Real symmetric 4x4 second-moment matrix of a two-mode Gaussian state.
///
/// Construction does not validate; use [`CovarianceMatrix::check_physical`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CovarianceDoc", into = "CovarianceDoc")]
pub struct CovarianceMatrix {
    entries: Matrix4,
}

#[derive(Serialize, Deserialize)]
struct CovarianceDoc {
    convention: String,
    matrix: Matrix4,
}

impl TryFrom<CovarianceDoc> for CovarianceMatrix {
    type Error = Error;

    fn try_from(doc: CovarianceDoc) -> Result<Self> {
        if doc.convention != VACUUM_CONVENTION {
            return Err(Error::Malformed(format!(
                "unsupported convention {:?}, expected {VACUUM_CONVENTION:?}",
                doc.convention
            )));
        }
        Ok(Self::new(doc.matrix))
    }
}

impl From<CovarianceMatrix> for CovarianceDoc {
    fn from(cm: CovarianceMatrix) -> Self {
        Self { convention: VACUUM_CONVENTION.to_owned(), matrix: cm.entries }
    }
}

/// The local (`det_alpha`, `det_beta`, `det_gamma`) and global (`det_sigma`,
/// `delta`) symplectic invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub det_alpha: f64,
    pub det_beta: f64,
    pub det_gamma: f64,
    pub det_sigma: f64,
    /// Invariant `Delta = det_alpha + det_beta + 2 det_gamma`.
    pub delta: f64,
}

/// Symplectic eigenvalues `(n_minus, n_plus)` of a state, or of its partial
/// transpose when `transposed` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub n_minus: f64,
    pub n_plus: f64,
    pub transposed: bool,
}

/// Standard form `alpha = diag(a, a)`, `beta = diag(b, b)`,
/// `gamma = diag(c_plus, c_minus)`.
///
/// Canonical orientation is `c_plus >= |c_minus|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardForm {
    pub a: f64,
    pub b: f64,
    pub c_plus: f64,
    pub c_minus: f64,
}

impl CovarianceMatrix {
    pub fn new(entries: Matrix4) -> Self {
        Self { entries }
    }

    pub fn vacuum() -> Self {
        StandardForm::vacuum().to_covariance()
    }

    pub fn entries(&self) -> &Matrix4 {
        &self.entries
    }

    fn block(&self, row: usize, col: usize) -> Matrix2 {
        let e = &self.entries;
        [[e[row][col], e[row][col + 1]], [e[row + 1][col], e[row + 1][col + 1]]]
    }

    pub fn alpha(&self) -> Matrix2 {
        self.block(0, 0)
    }

    pub fn beta(&self) -> Matrix2 {
        self.block(2, 2)
    }

    pub fn gamma(&self) -> Matrix2 {
        self.block(0, 2)
    }

    fn scale(&self) -> f64 {
        self.entries.iter().flatten().fold(1.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn check_symmetric(&self, tol: f64) -> std::result::Result<(), PhysicalityViolation> {
        let e = &self.entries;
        if e.iter().flatten().any(|v| !v.is_finite()) {
            return Err(PhysicalityViolation::NotFinite);
        }
        let slack = tol * self.scale();
        for row in 0..4 {
            for col in row + 1..4 {
                let asymmetry = (e[row][col] - e[col][row]).abs();
                if asymmetry > slack {
                    return Err(PhysicalityViolation::NotSymmetric { row, col, asymmetry });
                }
            }
        }
        Ok(())
    }

    /// Block determinants and Delta. Fails on non-symmetric input.
    pub fn invariants(&self) -> Result<Invariants> {
        self.check_symmetric(DEFAULT_TOL).map_err(|v| Error::Malformed(v.to_string()))?;
        Ok(self.invariants_unchecked())
    }

    fn invariants_unchecked(&self) -> Invariants {
        let det_alpha = det2(&self.alpha());
        let det_beta = det2(&self.beta());
        let det_gamma = det2(&self.gamma());
        Invariants {
            det_alpha,
            det_beta,
            det_gamma,
            det_sigma: self.det_sigma(),
            delta: det_alpha + det_beta + 2.0 * det_gamma,
        }
    }

    /// Through the local reduction when both local blocks are positive
    /// definite: the cofactor expansion loses about `eps * max|entry|^4`,
    /// which matters for strongly squeezed, nearly pure states.
    fn det_sigma(&self) -> f64 {
        let (alpha, beta) = (self.alpha(), self.beta());
        if alpha[0][0] > 0.0 && beta[0][0] > 0.0 && det2(&alpha) > 0.0 && det2(&beta) > 0.0 {
            let sf = self.local_reduction();
            let ab = sf.a * sf.b;
            (ab - sf.c_plus * sf.c_plus) * (ab - sf.c_minus * sf.c_minus)
        } else {
            det4(&self.entries)
        }
    }

    pub fn check_physical(&self) -> std::result::Result<SymplecticSpectrum, PhysicalityViolation> {
        self.check_physical_with_tol(DEFAULT_TOL)
    }

    /// Runs the physicality checks in order (finite, symmetric, positive
    /// definite, positive determinant, `n_minus >= 1/2 - tol`) and reports the
    /// first failure. On success returns the symplectic spectrum.
    pub fn check_physical_with_tol(&self, tol: f64) -> std::result::Result<SymplecticSpectrum, PhysicalityViolation> {
        self.check_symmetric(tol)?;
        let e = &self.entries;
        let minors = [e[0][0], e[0][0] * e[1][1] - e[0][1] * e[1][0], det3(e)];
        for (i, &minor) in minors.iter().enumerate() {
            if !(minor > 0.0) {
                return Err(PhysicalityViolation::NotPositiveDefinite { order: i + 1, minor });
            }
        }
        let det = self.det_sigma();
        if !(det > 0.0) {
            return Err(PhysicalityViolation::NonPositiveDeterminant { det });
        }
        let spectrum = self.local_reduction().spectrum(false);
        if spectrum.n_minus < 0.5 - tol {
            return Err(PhysicalityViolation::Uncertainty { n_minus: spectrum.n_minus });
        }
        Ok(spectrum)
    }

    pub fn is_physical(&self) -> bool {
        self.check_physical().is_ok()
    }

    /// Global and marginal purities, with Delta attached.
    pub fn purities(&self) -> Result<PurityPoint> {
        self.check_physical()?;
        Ok(self.invariants_unchecked().purities())
    }

    /// Canonical standard form, reached by explicit local symplectic
    /// transformations. The result carries the same four invariants as the
    /// input (see [`StandardForm::from_invariants`] for the algebraic route),
    /// but stays accurate near pure states, where recovering `c_plus + c_minus`
    /// from the invariants loses half the digits.
    pub fn to_standard_form(&self) -> Result<StandardForm> {
        self.check_physical()?;
        Ok(self.local_reduction())
    }

    /// `S1 + S2` brings both local blocks to multiples of the identity; the
    /// correlation block is then diagonalized by local rotations, which is a
    /// signed 2x2 singular value decomposition.
    ///
    /// Needs positive definite local blocks.
    fn local_reduction(&self) -> StandardForm {
        let (alpha, beta, gamma) = (self.alpha(), self.beta(), self.gamma());
        let s1 = normalizing_symplectic(&alpha);
        let s2 = normalizing_symplectic(&beta);
        let g = mul2(&mul2(&s1, &gamma), &s2);
        let e = (g[0][0] + g[1][1]).hypot(g[0][1] - g[1][0]);
        let f = (g[0][0] - g[1][1]).hypot(g[0][1] + g[1][0]);
        StandardForm { a: det2(&alpha).sqrt(), b: det2(&beta).sqrt(), c_plus: 0.5 * (e + f), c_minus: 0.5 * (e - f) }
    }

    /// Smallest symplectic eigenvalue of the partially transposed state.
    pub fn ppt_smallest_eigenvalue(&self) -> Result<f64> {
        self.check_physical()?;
        Ok(self.local_reduction().spectrum(true).n_minus)
    }

    /// `S^T sigma S`.
    pub fn congruence(&self, s: &Matrix4) -> Self {
        let e = &self.entries;
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = 0.0;
                for k in 0..4 {
                    for l in 0..4 {
                        acc += s[k][i] * e[k][l] * s[l][j];
                    }
                }
                *cell = acc;
            }
        }
        Self { entries: out }
    }

    /// Mirror reflection `p2 -> -p2`.
    pub fn partial_transpose(&self) -> Self {
        let mut entries = self.entries;
        for i in 0..4 {
            if i != 3 {
                entries[i][3] = -entries[i][3];
                entries[3][i] = -entries[3][i];
            }
        }
        Self { entries }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("covariance matrices always serialize")
    }
}

impl Invariants {
    /// `delta` of the partially transposed state: the sign of `det_gamma` flips.
    pub fn delta_tilde(&self) -> f64 {
        self.delta - 4.0 * self.det_gamma
    }

    /// `2 n^2 = D -/+ sqrt(D^2 - 4 det_sigma)` with `D` Delta of the
    /// state or of its partial transpose.
    ///
    /// The smaller root is evaluated as `2 det_sigma / (D + sqrt(..))` to avoid
    /// cancellation near pure states.
    pub fn spectrum(&self, transposed: bool) -> Result<SymplecticSpectrum> {
        let d = if transposed { self.delta_tilde() } else { self.delta };
        if !(d > 0.0) || !(self.det_sigma > 0.0) {
            return Err(Error::UnphysicalParameters(format!(
                "symplectic spectrum needs positive Delta and determinant (got {d}, {})",
                self.det_sigma
            )));
        }
        let root = clamped_sqrt(d * d - 4.0 * self.det_sigma, d * d).ok_or_else(|| {
            Error::UnphysicalParameters(format!(
                "negative discriminant {} in the symplectic spectrum",
                d * d - 4.0 * self.det_sigma
            ))
        })?;
        let n_plus_sq = 0.5 * (d + root);
        let n_minus_sq = 2.0 * self.det_sigma / (d + root);
        Ok(SymplecticSpectrum { n_minus: n_minus_sq.sqrt(), n_plus: n_plus_sq.sqrt(), transposed })
    }

    pub fn purities(&self) -> PurityPoint {
        PurityPoint {
            mu1: 0.5 / self.det_alpha.sqrt(),
            mu2: 0.5 / self.det_beta.sqrt(),
            mu: 0.25 / self.det_sigma.sqrt(),
            delta: Some(self.delta),
        }
    }
}

impl StandardForm {
    pub fn new(a: f64, b: f64, c_plus: f64, c_minus: f64) -> Self {
        Self { a, b, c_plus, c_minus }
    }

    pub fn vacuum() -> Self {
        Self::new(0.5, 0.5, 0.0, 0.0)
    }

    pub fn is_canonical(&self) -> bool {
        self.c_plus >= self.c_minus.abs()
    }

    /// Locally equivalent form with `c_plus >= |c_minus|`; keeps `c_plus c_minus`
    /// and `c_plus^2 + c_minus^2`.
    pub fn canonical(&self) -> Self {
        let c_plus = self.c_plus.abs().max(self.c_minus.abs());
        let product = self.c_plus * self.c_minus;
        let c_minus = if c_plus > 0.0 { product / c_plus } else { 0.0 };
        Self { c_plus, c_minus, ..*self }
    }

    /// Embeds the standard form as a covariance matrix without validation.
    pub fn to_covariance(&self) -> CovarianceMatrix {
        let Self { a, b, c_plus, c_minus } = *self;
        CovarianceMatrix::new([
            [a, 0.0, c_plus, 0.0],
            [0.0, a, 0.0, c_minus],
            [c_plus, 0.0, b, 0.0],
            [0.0, c_minus, 0.0, b],
        ])
    }

    /// Checked embedding: fails if the induced matrix is unphysical.
    pub fn covariance(&self) -> Result<CovarianceMatrix> {
        let cm = self.to_covariance();
        cm.check_physical()?;
        Ok(cm)
    }

    pub fn check_physical(&self) -> std::result::Result<SymplecticSpectrum, PhysicalityViolation> {
        self.check_physical_with_tol(DEFAULT_TOL)
    }

    /// Same checks and order as [`CovarianceMatrix::check_physical_with_tol`],
    /// with the leading minors written out for the block-diagonal pattern.
    pub fn check_physical_with_tol(&self, tol: f64) -> std::result::Result<SymplecticSpectrum, PhysicalityViolation> {
        let Self { a, b, c_plus, c_minus } = *self;
        if ![a, b, c_plus, c_minus].iter().all(|v| v.is_finite()) {
            return Err(PhysicalityViolation::NotFinite);
        }
        let ab = a * b;
        let minors = [a, a * a, a * (ab - c_plus * c_plus)];
        for (i, &minor) in minors.iter().enumerate() {
            if !(minor > 0.0) {
                return Err(PhysicalityViolation::NotPositiveDefinite { order: i + 1, minor });
            }
        }
        let det = (ab - c_plus * c_plus) * (ab - c_minus * c_minus);
        if !(det > 0.0) {
            return Err(PhysicalityViolation::NonPositiveDeterminant { det });
        }
        let spectrum = self.spectrum(false);
        if spectrum.n_minus < 0.5 - tol {
            return Err(PhysicalityViolation::Uncertainty { n_minus: spectrum.n_minus });
        }
        Ok(spectrum)
    }

    /// Symplectic spectrum (of the state, or of its partial transpose).
    ///
    /// The discriminant is used in the factored form
    /// `D^2 - 4 det_sigma = (a^2 - b^2)^2 + 4 (a c+ + b c-)(b c+ + a c-)`,
    /// whose factors vanish exactly on pure states instead of cancelling.
    /// Assumes a positive definite form.
    pub fn spectrum(&self, transposed: bool) -> SymplecticSpectrum {
        let Self { a, b, c_plus, .. } = *self;
        let c_minus = if transposed { -self.c_minus } else { self.c_minus };
        let ab = a * b;
        let det_sigma = (ab - c_plus * c_plus) * (ab - c_minus * c_minus);
        let delta = a * a + b * b + 2.0 * c_plus * c_minus;
        let disc = (a * a - b * b).powi(2) + 4.0 * (a * c_plus + b * c_minus) * (b * c_plus + a * c_minus);
        let root = disc.max(0.0).sqrt();
        SymplecticSpectrum {
            n_minus: (2.0 * det_sigma / (delta + root)).sqrt(),
            n_plus: (0.5 * (delta + root)).sqrt(),
            transposed,
        }
    }

    /// Invariants read off the block structure directly.
    pub fn invariants(&self) -> Invariants {
        let Self { a, b, c_plus, c_minus } = *self;
        let ab = a * b;
        let det_gamma = c_plus * c_minus;
        Invariants {
            det_alpha: a * a,
            det_beta: b * b,
            det_gamma,
            det_sigma: (ab - c_plus * c_plus) * (ab - c_minus * c_minus),
            delta: a * a + b * b + 2.0 * det_gamma,
        }
    }

    /// Solves `c+ c- = det_gamma`, `ab (c+^2 + c-^2) = (ab)^2 + det_gamma^2 - det_sigma`
    /// for the canonical orientation.
    pub fn from_invariants(inv: &Invariants) -> Result<Self> {
        if !(inv.det_alpha > 0.0) || !(inv.det_beta > 0.0) {
            return Err(Error::UnphysicalParameters("local determinants must be positive".into()));
        }
        let a = inv.det_alpha.sqrt();
        let b = inv.det_beta.sqrt();
        let ab = a * b;
        let product = inv.det_gamma;
        let sum_sq = (ab * ab + product * product - inv.det_sigma) / ab;
        let scale = sum_sq.abs().max(product.abs());
        let err = || {
            Error::UnphysicalParameters(format!("inconsistent invariants: c+^2 + c-^2 = {sum_sq}, c+ c- = {product}"))
        };
        // |c+ + c-| and |c+ - c-|
        let sum = clamped_sqrt(sum_sq + 2.0 * product, scale).ok_or_else(err)?;
        let diff = clamped_sqrt(sum_sq - 2.0 * product, scale).ok_or_else(err)?;
        let c_plus = 0.5 * (sum + diff);
        let c_minus = if c_plus > 0.0 { product / c_plus } else { 0.0 };
        Ok(Self { a, b, c_plus, c_minus })
    }
}

impl From<StandardForm> for CovarianceMatrix {
    fn from(sf: StandardForm) -> Self {
        sf.to_covariance()
    }
}
