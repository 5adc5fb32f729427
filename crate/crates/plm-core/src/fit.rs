//! Closed-form least-squares fitting of the four parameterized models.
//!
//! Each fit minimizes the shadow-fading standard deviation
//! `sigma = sqrt((1/N)·Σ residual²)` — the population form, dividing by N,
//! not N − p. Residuals are always recomputed against the fitted model's own
//! forward evaluation, so a reported `FitResult` is self-consistent with
//! `ModelParams::path_loss_db` bit for bit.

use alloc::vec::Vec;

use thiserror::Error;

use crate::dataset::{frequency_counts, unique_frequencies, PathLossSample};
use crate::math;
use crate::models::{
    compute_f0, fspl_1m, AbgParams, CiParams, CifParams, FiParams, ModelKind, ModelParams,
};
use crate::units::FrequencyGhz;

/// Relative pivot threshold below which a normal-equation system is declared
/// singular.
const PIVOT_RTOL: f64 = 1e-12;

/// Below this magnitude of the fitted exponent, the frequency-balance ratio
/// `b = c2/c1` is numerically meaningless.
const MIN_STABLE_N: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("cannot fit an empty sample set")]
    EmptySampleSet,
    #[error("degenerate geometry: every sample sits at the 1 m reference distance")]
    DegenerateGeometry,
    #[error("singular design: sample geometry does not determine the parameters (distances all equal, a single frequency for a frequency-dependent fit, or exact collinearity)")]
    SingularDesign,
    #[error(
        "fitted exponent {n} is too close to zero to define the frequency-balance coefficient b"
    )]
    UnstableB { n: f64 },
}

/// How the reference frequency of a frequency-weighted fit is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum F0Mode {
    /// Sample-count-weighted mean of the dataset's frequencies, rounded to
    /// integer GHz.
    Auto,
    /// Caller-supplied value.
    Explicit(FrequencyGhz),
}

/// Outcome of a model fit: the parameters, the shadow-fading spread, and the
/// per-sample residuals behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub model: ModelKind,
    pub params: ModelParams,
    /// Shadow-fading standard deviation, dB (population form).
    pub sigma_db: f64,
    /// `measured − modeled` per sample, dB, in sample order.
    pub residuals_db: Vec<f64>,
    pub sample_count: usize,
    /// Distinct frequencies in the fitted data, ascending.
    pub freq_set_ghz: Vec<FrequencyGhz>,
    /// Reference frequency used, for frequency-weighted fits only.
    pub f0_ghz: Option<FrequencyGhz>,
}

/// Residuals of a bound model against a sample set, and their standard
/// deviation `sqrt((1/N)·Σ r²)`.
pub fn residual_stats(
    samples: &[PathLossSample],
    model: &ModelParams,
) -> Result<(f64, Vec<f64>), FitError> {
    if samples.is_empty() {
        return Err(FitError::EmptySampleSet);
    }
    let residuals: Vec<f64> = samples
        .iter()
        .map(|s| s.path_loss_db - model.path_loss_db(s.freq, s.dist))
        .collect();
    Ok((sigma_of(&residuals), residuals))
}

fn sigma_of(residuals: &[f64]) -> f64 {
    let ss: f64 = residuals.iter().map(|r| r * r).sum();
    math::sqrt(ss / residuals.len() as f64)
}

fn finish(
    samples: &[PathLossSample],
    params: ModelParams,
    f0: Option<FrequencyGhz>,
) -> Result<FitResult, FitError> {
    let (sigma_db, residuals_db) = residual_stats(samples, &params)?;
    Ok(FitResult {
        model: params.kind(),
        params,
        sigma_db,
        residuals_db,
        sample_count: samples.len(),
        freq_set_ghz: unique_frequencies(samples),
        f0_ghz: f0,
    })
}

// ---------------------------------------------------------------------------
// Normal-equation solver
// ---------------------------------------------------------------------------

/// Solves `m · x = rhs` by Gaussian elimination with partial pivoting.
/// Returns `None` if any pivot falls below `PIVOT_RTOL` relative to the
/// largest entry of the original matrix.
#[allow(clippy::needless_range_loop)] // row ops touch two rows of `m` at once
fn solve<const K: usize>(mut m: [[f64; K]; K], mut rhs: [f64; K]) -> Option<[f64; K]> {
    let mut largest = 0.0;
    for row in &m {
        for &v in row {
            let a = math::abs(v);
            if a > largest {
                largest = a;
            }
        }
    }
    if largest == 0.0 {
        return None;
    }
    let threshold = PIVOT_RTOL * largest;

    for col in 0..K {
        // pick the largest remaining pivot in this column
        let mut pivot_row = col;
        for row in col + 1..K {
            if math::abs(m[row][col]) > math::abs(m[pivot_row][col]) {
                pivot_row = row;
            }
        }
        if math::abs(m[pivot_row][col]) < threshold {
            return None;
        }
        if pivot_row != col {
            m.swap(pivot_row, col);
            rhs.swap(pivot_row, col);
        }
        for row in col + 1..K {
            let factor = m[row][col] / m[col][col];
            for k in col..K {
                m[row][k] -= factor * m[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }

    let mut x = [0.0; K];
    for col in (0..K).rev() {
        let mut acc = rhs[col];
        for k in col + 1..K {
            acc -= m[col][k] * x[k];
        }
        x[col] = acc / m[col][col];
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// The four fits
// ---------------------------------------------------------------------------

/// Fits the close-in model: subtracts the per-sample free space anchor and
/// regresses the excess loss on `10·log10(d)` through the origin.
///
/// Works for single- and multi-frequency input alike.
pub fn fit_ci(samples: &[PathLossSample]) -> Result<FitResult, FitError> {
    if samples.is_empty() {
        return Err(FitError::EmptySampleSet);
    }
    let mut sum_ad = 0.0;
    let mut sum_dd = 0.0;
    for s in samples {
        let a = s.path_loss_db - fspl_1m(s.freq);
        let d = 10.0 * math::log10(s.dist.meters());
        sum_ad += a * d;
        sum_dd += d * d;
    }
    if sum_dd == 0.0 {
        return Err(FitError::DegenerateGeometry);
    }
    let n = sum_ad / sum_dd;
    finish(samples, ModelParams::Ci(CiParams { n }), None)
}

/// Fits the floating-intercept line: ordinary least squares of path loss on
/// `(10·log10(d), 1)`.
pub fn fit_fi(samples: &[PathLossSample]) -> Result<FitResult, FitError> {
    if samples.is_empty() {
        return Err(FitError::EmptySampleSet);
    }
    let mut m = [[0.0; 2]; 2];
    let mut rhs = [0.0; 2];
    for s in samples {
        let x = 10.0 * math::log10(s.dist.meters());
        let y = s.path_loss_db;
        m[0][0] += x * x;
        m[0][1] += x;
        m[1][0] += x;
        m[1][1] += 1.0;
        rhs[0] += x * y;
        rhs[1] += y;
    }
    let [alpha, beta_db] = solve(m, rhs).ok_or(FitError::SingularDesign)?;
    finish(samples, ModelParams::Fi(FiParams { alpha, beta_db }), None)
}

/// Fits the alpha-beta-gamma model: ordinary least squares of path loss on
/// `(10·log10(d), 1, 10·log10(f))`, solved through the 3×3 normal equations.
///
/// Needs at least two distinct frequencies and two distinct distances;
/// anything less leaves the design rank-deficient.
pub fn fit_abg(samples: &[PathLossSample]) -> Result<FitResult, FitError> {
    if samples.is_empty() {
        return Err(FitError::EmptySampleSet);
    }
    let mut m = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for s in samples {
        let x = [
            10.0 * math::log10(s.dist.meters()),
            1.0,
            10.0 * math::log10(s.freq.ghz()),
        ];
        let y = s.path_loss_db;
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += x[i] * x[j];
            }
            rhs[i] += x[i] * y;
        }
    }
    let [alpha, beta_db, gamma] = solve(m, rhs).ok_or(FitError::SingularDesign)?;
    finish(
        samples,
        ModelParams::Abg(AbgParams {
            alpha,
            beta_db,
            gamma,
        }),
        None,
    )
}

/// Fits the frequency-weighted close-in model.
///
/// The model is linear in `(n, n·b)`, so the fit is an intercept-free
/// two-parameter least squares on `x1 = 10·log10(d)` and
/// `x2 = x1·(f − f0)/f0`, with `b` recovered as the ratio afterwards.
/// Single-frequency input bypasses the regression entirely: the model
/// reverts to the close-in form, so `b = 0` and `n` comes from [`fit_ci`].
pub fn fit_cif(samples: &[PathLossSample], f0_mode: F0Mode) -> Result<FitResult, FitError> {
    if samples.is_empty() {
        return Err(FitError::EmptySampleSet);
    }
    let counts = frequency_counts(samples);
    let f0 = match f0_mode {
        F0Mode::Auto => {
            // counts from a nonempty sample set are themselves nonempty
            compute_f0(&counts).expect("frequency counts are nonempty")
        }
        F0Mode::Explicit(f0) => f0,
    };

    if counts.len() == 1 {
        let ci = fit_ci(samples)?;
        let n = match ci.params {
            ModelParams::Ci(p) => p.n,
            _ => unreachable!(),
        };
        return finish(
            samples,
            ModelParams::Cif(CifParams { n, b: 0.0, f0 }),
            Some(f0),
        );
    }

    let mut m = [[0.0; 2]; 2];
    let mut rhs = [0.0; 2];
    for s in samples {
        let a = s.path_loss_db - fspl_1m(s.freq);
        let x1 = 10.0 * math::log10(s.dist.meters());
        let x2 = x1 * (s.freq.ghz() - f0.ghz()) / f0.ghz();
        m[0][0] += x1 * x1;
        m[0][1] += x1 * x2;
        m[1][0] += x1 * x2;
        m[1][1] += x2 * x2;
        rhs[0] += a * x1;
        rhs[1] += a * x2;
    }
    let [c1, c2] = solve(m, rhs).ok_or(FitError::DegenerateGeometry)?;
    if math::abs(c1) < MIN_STABLE_N {
        return Err(FitError::UnstableB { n: c1 });
    }
    let n = c1;
    let b = c2 / c1;
    finish(samples, ModelParams::Cif(CifParams { n, b, f0 }), Some(f0))
}
