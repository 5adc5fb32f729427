//! The four large-scale path loss models and their shared free-space anchor.
//!
//! All models predict *mean* path loss in dB over distance (and frequency for
//! the multi-frequency forms); the stochastic shadow-fading term is handled by
//! the synthesis and residual machinery, never here. Every formula works in
//! base-10 logarithms, and all transcendental math goes through [`crate::math`]
//! so results are bit-identical across platforms.

use crate::math;
use crate::units::{DistanceM, DomainError, FrequencyGhz};

/// Speed of light in vacuum, m/s (exact by definition).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Free space path loss in dB at a 1 m reference distance:
/// `20·log10(4π·f/c)` with `f` in Hz.
///
/// This is the fixed anchor that the close-in models attach their
/// distance-dependent slope to.
pub fn fspl_1m(f: FrequencyGhz) -> f64 {
    20.0 * math::log10(4.0 * core::f64::consts::PI * f.hz() / SPEED_OF_LIGHT)
}

// ---------------------------------------------------------------------------
// Parameter records
// ---------------------------------------------------------------------------

/// Floating-intercept (alpha-beta) line: `PL = 10·alpha·log10(d) + beta`.
///
/// Both coefficients are unconstrained in sign — measured fits can and do
/// produce negative slopes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiParams {
    /// Dimensionless slope coefficient (per decade of distance, times 10).
    pub alpha: f64,
    /// Floating intercept in dB.
    pub beta_db: f64,
}

impl FiParams {
    pub fn new(alpha: f64, beta_db: f64) -> Result<Self, DomainError> {
        check_finite("alpha", alpha)?;
        check_finite("beta", beta_db)?;
        Ok(FiParams { alpha, beta_db })
    }
}

/// Close-in free-space reference model: `PL = FSPL(f, 1 m) + 10·n·log10(d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiParams {
    /// Path loss exponent; 2 in free space.
    pub n: f64,
}

impl CiParams {
    pub fn new(n: f64) -> Result<Self, DomainError> {
        check_finite("n", n)?;
        Ok(CiParams { n })
    }
}

/// Alpha-beta-gamma model:
/// `PL = 10·alpha·log10(d) + beta + 10·gamma·log10(f)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbgParams {
    /// Distance coefficient.
    pub alpha: f64,
    /// Offset in dB.
    pub beta_db: f64,
    /// Frequency coefficient.
    pub gamma: f64,
}

impl AbgParams {
    pub fn new(alpha: f64, beta_db: f64, gamma: f64) -> Result<Self, DomainError> {
        check_finite("alpha", alpha)?;
        check_finite("beta", beta_db)?;
        check_finite("gamma", gamma)?;
        Ok(AbgParams {
            alpha,
            beta_db,
            gamma,
        })
    }
}

/// Close-in model with a frequency-weighted exponent:
/// `PL = FSPL(f, 1 m) + 10·n·(1 + b·(f − f0)/f0)·log10(d)`.
///
/// `f0` is the reference frequency balancing the linear frequency dependence;
/// with `b = 0` the model collapses to the plain close-in form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CifParams {
    /// Distance-dependence exponent at `f = f0`.
    pub n: f64,
    /// Dimensionless frequency-balance coefficient.
    pub b: f64,
    /// Reference frequency.
    pub f0: FrequencyGhz,
}

impl CifParams {
    pub fn new(n: f64, b: f64, f0: FrequencyGhz) -> Result<Self, DomainError> {
        check_finite("n", n)?;
        check_finite("b", b)?;
        Ok(CifParams { n, b, f0 })
    }

    /// Effective distance exponent at frequency `f`.
    pub fn effective_n(&self, f: FrequencyGhz) -> f64 {
        self.n * (1.0 + self.b * (f.ghz() - self.f0.ghz()) / self.f0.ghz())
    }
}

fn check_finite(name: &'static str, value: f64) -> Result<(), DomainError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(DomainError::NonFiniteParameter { name, value })
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Mean path loss of the floating-intercept model at distance `d`.
pub fn eval_fi(p: FiParams, d: DistanceM) -> f64 {
    10.0 * p.alpha * math::log10(d.meters()) + p.beta_db
}

/// Mean path loss of the close-in model at frequency `f`, distance `d`.
pub fn eval_ci(p: CiParams, f: FrequencyGhz, d: DistanceM) -> f64 {
    fspl_1m(f) + 10.0 * p.n * math::log10(d.meters())
}

/// Mean path loss of the alpha-beta-gamma model.
pub fn eval_abg(p: AbgParams, f: FrequencyGhz, d: DistanceM) -> f64 {
    10.0 * p.alpha * math::log10(d.meters()) + p.beta_db + 10.0 * p.gamma * math::log10(f.ghz())
}

/// Mean path loss of the frequency-weighted close-in model.
///
/// Evaluated as `FSPL + 10·n_eff·log10(d)` with the effective exponent folded
/// first, so `b = 0` reproduces [`eval_ci`] bit-for-bit.
pub fn eval_cif(p: CifParams, f: FrequencyGhz, d: DistanceM) -> f64 {
    let n_eff = p.effective_n(f);
    fspl_1m(f) + 10.0 * n_eff * math::log10(d.meters())
}

// ---------------------------------------------------------------------------
// Model dispatch
// ---------------------------------------------------------------------------

/// Identifier for one of the four parameterized models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelKind {
    Fi,
    Ci,
    Abg,
    Cif,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Fi, ModelKind::Ci, ModelKind::Abg, ModelKind::Cif];

    /// Lowercase machine token, as used on the command line and in CSV.
    pub fn token(self) -> &'static str {
        match self {
            ModelKind::Fi => "fi",
            ModelKind::Ci => "ci",
            ModelKind::Abg => "abg",
            ModelKind::Cif => "cif",
        }
    }

    /// Conventional display name.
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Fi => "FI",
            ModelKind::Ci => "CI",
            ModelKind::Abg => "ABG",
            ModelKind::Cif => "CIF",
        }
    }

    pub fn parse_token(s: &str) -> Option<ModelKind> {
        match s {
            "fi" => Some(ModelKind::Fi),
            "ci" => Some(ModelKind::Ci),
            "abg" => Some(ModelKind::Abg),
            "cif" => Some(ModelKind::Cif),
            _ => None,
        }
    }
}

impl core::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// A parameter record for any of the four models, ready to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Fi(FiParams),
    Ci(CiParams),
    Abg(AbgParams),
    Cif(CifParams),
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::Fi(_) => ModelKind::Fi,
            ModelParams::Ci(_) => ModelKind::Ci,
            ModelParams::Abg(_) => ModelKind::Abg,
            ModelParams::Cif(_) => ModelKind::Cif,
        }
    }

    /// Mean path loss in dB at `(f, d)`, dispatching to the model's evaluator.
    pub fn path_loss_db(&self, f: FrequencyGhz, d: DistanceM) -> f64 {
        match *self {
            ModelParams::Fi(p) => eval_fi(p, d),
            ModelParams::Ci(p) => eval_ci(p, f, d),
            ModelParams::Abg(p) => eval_abg(p, f, d),
            ModelParams::Cif(p) => eval_cif(p, f, d),
        }
    }

    /// Model value at the 1 m reference distance (the log-distance term is
    /// zero there, so this is the model's intercept at frequency `f`).
    pub fn intercept_db(&self, f: FrequencyGhz) -> f64 {
        match *self {
            ModelParams::Fi(p) => p.beta_db,
            ModelParams::Ci(_) | ModelParams::Cif(_) => fspl_1m(f),
            ModelParams::Abg(p) => p.beta_db + 10.0 * p.gamma * math::log10(f.ghz()),
        }
    }

    /// Coefficient of `10·log10(d)` at frequency `f`; the model gains
    /// `10·slope` dB per decade of distance.
    pub fn distance_slope(&self, f: FrequencyGhz) -> f64 {
        match *self {
            ModelParams::Fi(p) => p.alpha,
            ModelParams::Ci(p) => p.n,
            ModelParams::Abg(p) => p.alpha,
            ModelParams::Cif(p) => p.effective_n(f),
        }
    }
}

// ---------------------------------------------------------------------------
// Reference frequency
// ---------------------------------------------------------------------------

/// Sample-count-weighted mean frequency of a measurement plan, rounded to the
/// nearest integer GHz (halfway cases round away from zero).
///
/// Takes `(frequency, sample_count)` pairs; the plan must be nonempty and
/// every count at least 1.
pub fn compute_f0(counts: &[(FrequencyGhz, usize)]) -> Result<FrequencyGhz, DomainError> {
    if counts.is_empty() {
        return Err(DomainError::EmptyFrequencyPlan);
    }
    let mut weighted = 0.0;
    let mut total = 0.0;
    for &(f, count) in counts {
        if count == 0 {
            return Err(DomainError::ZeroSampleCount);
        }
        weighted += f.ghz() * count as f64;
        total += count as f64;
    }
    FrequencyGhz::new(math::round(weighted / total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(ghz: f64) -> FrequencyGhz {
        FrequencyGhz::new(ghz).unwrap()
    }

    fn d(m: f64) -> DistanceM {
        DistanceM::new(m).unwrap()
    }

    #[test]
    fn fspl_anchor_values() {
        assert!((fspl_1m(f(1.0)) - 32.45).abs() < 0.01);
        assert!((fspl_1m(f(28.0)) - 61.39).abs() < 0.01);
        assert!((fspl_1m(f(73.5)) - 69.77).abs() < 0.01);
        // full-precision value of the 1 GHz anchor, used by the cross-model
        // identity checks
        assert!((fspl_1m(f(1.0)) - 32.447_783_221_883_38).abs() < 1e-9);
    }

    #[test]
    fn fi_evaluation() {
        let p = FiParams::new(2.5, 80.6).unwrap();
        assert!((eval_fi(p, d(100.0)) - 130.6).abs() < 1e-9);
        // at 1 m the log term vanishes for any slope
        for alpha in [-0.8, 0.0, 3.9] {
            let p = FiParams::new(alpha, 115.6).unwrap();
            assert_eq!(eval_fi(p, d(1.0)), 115.6);
        }
        let flat = FiParams::new(0.0, 50.0).unwrap();
        assert!((eval_fi(flat, d(1000.0)) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn ci_evaluation() {
        let p = CiParams::new(3.4).unwrap();
        assert!((eval_ci(p, f(28.0), d(100.0)) - 129.39).abs() < 0.02);
        // 1 m anchor
        for n in [0.5, 2.0, 3.4] {
            let p = CiParams::new(n).unwrap();
            assert_eq!(eval_ci(p, f(28.0), d(1.0)), fspl_1m(f(28.0)));
        }
        let free_space = CiParams::new(2.0).unwrap();
        assert!((eval_ci(free_space, f(28.0), d(10.0)) - 81.39).abs() < 0.02);
    }

    #[test]
    fn abg_evaluation() {
        let p = AbgParams::new(2.8, 46.7, 1.9).unwrap();
        assert!((eval_abg(p, f(28.0), d(100.0)) - 130.20).abs() < 0.02);
        // both log terms vanish at d = 1 m, f = 1 GHz
        let q = AbgParams::new(3.1, 1.3, 3.8).unwrap();
        assert_eq!(eval_abg(q, f(1.0), d(1.0)), 1.3);
    }

    #[test]
    fn abg_reduces_to_ci_with_free_space_coefficients() {
        // alpha = n, gamma = 2, beta = FSPL at 1 GHz reproduces the close-in
        // model for every frequency and distance
        let beta_star = fspl_1m(f(1.0));
        for n in [1.2, 2.0, 3.4] {
            let abg = AbgParams::new(n, beta_star, 2.0).unwrap();
            let ci = CiParams::new(n).unwrap();
            for (fg, dm) in [(1.0, 1.0), (28.0, 100.0), (73.5, 17.3), (5.0, 1234.5)] {
                let delta = eval_abg(abg, f(fg), d(dm)) - eval_ci(ci, f(fg), d(dm));
                assert!(delta.abs() < 1e-9, "mismatch at f={fg} d={dm}: {delta}");
            }
        }
    }

    #[test]
    fn cif_evaluation() {
        let p = CifParams::new(3.0, 0.21, f(51.0)).unwrap();
        assert!((eval_cif(p, f(73.5), d(10.0)) - 102.55).abs() < 0.05);
    }

    #[test]
    fn cif_with_zero_b_is_exactly_ci() {
        for n in [-0.5, 1.1, 3.4] {
            let cif = CifParams::new(n, 0.0, f(51.0)).unwrap();
            let ci = CiParams::new(n).unwrap();
            for (fg, dm) in [(1.0, 1.0), (28.0, 61.7), (73.5, 186.0), (140.0, 9.9)] {
                // bit-for-bit, not approximately
                assert_eq!(eval_cif(cif, f(fg), d(dm)), eval_ci(ci, f(fg), d(dm)));
            }
        }
    }

    #[test]
    fn cif_at_reference_frequency_is_exactly_ci() {
        let cif = CifParams::new(2.7, 0.18, f(51.0)).unwrap();
        let ci = CiParams::new(2.7).unwrap();
        for dm in [1.0, 3.9, 45.9, 200.0] {
            assert_eq!(eval_cif(cif, f(51.0), d(dm)), eval_ci(ci, f(51.0), d(dm)));
        }
    }

    #[test]
    fn intercept_and_slope_helpers_agree_with_evaluation() {
        let models = [
            ModelParams::Fi(FiParams::new(2.5, 80.6).unwrap()),
            ModelParams::Ci(CiParams::new(3.4).unwrap()),
            ModelParams::Abg(AbgParams::new(2.8, 46.7, 1.9).unwrap()),
            ModelParams::Cif(CifParams::new(3.0, 0.21, f(51.0)).unwrap()),
        ];
        for m in models {
            for fg in [1.0, 28.0, 73.5] {
                let fq = f(fg);
                assert!((m.path_loss_db(fq, d(1.0)) - m.intercept_db(fq)).abs() < 1e-12);
                // slope helper matches a finite decade step
                let rise = m.path_loss_db(fq, d(100.0)) - m.path_loss_db(fq, d(10.0));
                assert!((rise - 10.0 * m.distance_slope(fq)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn reference_frequency_weighting_and_rounding() {
        let equal = [(f(28.0), 5), (f(73.5), 5)];
        assert_eq!(compute_f0(&equal).unwrap().ghz(), 51.0);

        let single = [(f(28.0), 7)];
        assert_eq!(compute_f0(&single).unwrap().ghz(), 28.0);

        let skewed = [(f(28.0), 3), (f(73.5), 1)];
        // weighted mean 39.375 rounds down
        assert_eq!(compute_f0(&skewed).unwrap().ghz(), 39.0);

        // halfway cases round away from zero
        let tie = [(f(1.0), 1), (f(2.0), 1)];
        assert_eq!(compute_f0(&tie).unwrap().ghz(), 2.0);
    }

    #[test]
    fn reference_frequency_rejects_bad_plans() {
        assert!(matches!(
            compute_f0(&[]),
            Err(DomainError::EmptyFrequencyPlan)
        ));
        assert!(matches!(
            compute_f0(&[(f(28.0), 0)]),
            Err(DomainError::ZeroSampleCount)
        ));
    }

    #[test]
    fn parameter_records_reject_non_finite_values() {
        assert!(FiParams::new(f64::NAN, 0.0).is_err());
        assert!(CiParams::new(f64::INFINITY).is_err());
        assert!(AbgParams::new(1.0, f64::NEG_INFINITY, 2.0).is_err());
        assert!(CifParams::new(1.0, f64::NAN, f(51.0)).is_err());
    }

    #[test]
    fn model_kind_tokens() {
        for kind in ModelKind::ALL {
            assert_eq!(ModelKind::parse_token(kind.token()), Some(kind));
        }
        assert_eq!(ModelKind::parse_token("ABG"), None);
        assert_eq!(ModelKind::parse_token("all"), None);
    }
}
