//! Brute-force grid search over model parameters, used to cross-check the
//! closed-form fits.
//!
//! The oracle knows nothing about normal equations: it just walks a bounded
//! parameter box, measures the shadow-fading sigma at every grid point, and
//! keeps the first minimum in lexicographic grid order. Slow by design,
//! trustworthy by construction.

use alloc::vec::Vec;

use thiserror::Error;

use crate::dataset::{frequency_counts, PathLossSample};
use crate::math;
use crate::models::{
    compute_f0, fspl_1m, AbgParams, CiParams, CifParams, FiParams, ModelKind, ModelParams,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("cannot run the grid search on an empty sample set")]
    EmptySampleSet,
    #[error("grid axis is invalid: min {min}, max {max}, step {step} (need finite min <= max and step > 0)")]
    InvalidAxis { min: f64, max: f64, step: f64 },
    #[error("model {model} takes {expected} parameter axes, got {got}")]
    WrongAxisCount {
        model: ModelKind,
        expected: usize,
        got: usize,
    },
}

/// One inclusive parameter axis: `min, min + step, ..., up to max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl GridAxis {
    pub fn new(min: f64, max: f64, step: f64) -> Result<GridAxis, OracleError> {
        if min.is_finite() && max.is_finite() && step.is_finite() && min <= max && step > 0.0 {
            Ok(GridAxis { min, max, step })
        } else {
            Err(OracleError::InvalidAxis { min, max, step })
        }
    }

    fn points(&self) -> usize {
        // small epsilon so max itself lands on the grid despite rounding
        ((self.max - self.min) / self.step + 1e-9) as usize + 1
    }

    fn value(&self, i: usize) -> f64 {
        self.min + i as f64 * self.step
    }
}

/// Winning grid point of an exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSearchResult {
    pub params: ModelParams,
    pub sigma_db: f64,
}

/// Exhaustively searches the parameter box for the sigma-minimizing grid
/// point.
///
/// Axes follow each model's canonical parameter order — FI: `[alpha, beta]`,
/// CI: `[n]`, ABG: `[alpha, beta, gamma]`, CIF: `[n, b]`. The CIF reference
/// frequency is not searched; it is computed from the samples exactly as
/// [`crate::fit::fit_cif`] does in auto mode. Ties keep the first minimum in
/// lexicographic grid order (earlier axes more significant).
pub fn grid_oracle_fit(
    samples: &[PathLossSample],
    model: ModelKind,
    axes: &[GridAxis],
) -> Result<GridSearchResult, OracleError> {
    if samples.is_empty() {
        return Err(OracleError::EmptySampleSet);
    }
    let expected = match model {
        ModelKind::Ci => 1,
        ModelKind::Fi | ModelKind::Cif => 2,
        ModelKind::Abg => 3,
    };
    if axes.len() != expected {
        return Err(OracleError::WrongAxisCount {
            model,
            expected,
            got: axes.len(),
        });
    }
    for axis in axes {
        // re-validate; axes may have been constructed literally
        GridAxis::new(axis.min, axis.max, axis.step)?;
    }

    let n_samples = samples.len() as f64;
    // precompute per-sample regressors once; the hot loop is then pure
    // arithmetic
    let pl: Vec<f64> = samples.iter().map(|s| s.path_loss_db).collect();
    let x1: Vec<f64> = samples
        .iter()
        .map(|s| 10.0 * math::log10(s.dist.meters()))
        .collect();

    // comparisons run on the mean squared residual; sqrt is monotone, so the
    // argmin (and first-minimum tie handling) is the same as on sigma
    let mut best_ss = f64::INFINITY;
    let mut best: Option<ModelParams> = None;

    match model {
        ModelKind::Ci => {
            let a: Vec<f64> = samples
                .iter()
                .zip(&pl)
                .map(|(s, &p)| p - fspl_1m(s.freq))
                .collect();
            for i in 0..axes[0].points() {
                let n = axes[0].value(i);
                let mut ss = 0.0;
                for k in 0..a.len() {
                    let r = a[k] - n * x1[k];
                    ss += r * r;
                }
                if ss < best_ss {
                    best_ss = ss;
                    best = Some(ModelParams::Ci(CiParams { n }));
                }
            }
        }
        ModelKind::Fi => {
            for i in 0..axes[0].points() {
                let alpha = axes[0].value(i);
                for j in 0..axes[1].points() {
                    let beta = axes[1].value(j);
                    let mut ss = 0.0;
                    for k in 0..pl.len() {
                        let r = pl[k] - (alpha * x1[k] + beta);
                        ss += r * r;
                    }
                    if ss < best_ss {
                        best_ss = ss;
                        best = Some(ModelParams::Fi(FiParams {
                            alpha,
                            beta_db: beta,
                        }));
                    }
                }
            }
        }
        ModelKind::Abg => {
            let xf: Vec<f64> = samples
                .iter()
                .map(|s| 10.0 * math::log10(s.freq.ghz()))
                .collect();
            for i in 0..axes[0].points() {
                let alpha = axes[0].value(i);
                for j in 0..axes[1].points() {
                    let beta = axes[1].value(j);
                    for g in 0..axes[2].points() {
                        let gamma = axes[2].value(g);
                        let mut ss = 0.0;
                        for k in 0..pl.len() {
                            let r = pl[k] - (alpha * x1[k] + beta + gamma * xf[k]);
                            ss += r * r;
                        }
                        if ss < best_ss {
                            best_ss = ss;
                            best = Some(ModelParams::Abg(AbgParams {
                                alpha,
                                beta_db: beta,
                                gamma,
                            }));
                        }
                    }
                }
            }
        }
        ModelKind::Cif => {
            let counts = frequency_counts(samples);
            let f0 = compute_f0(&counts).expect("nonempty sample set has frequencies");
            let a: Vec<f64> = samples
                .iter()
                .zip(&pl)
                .map(|(s, &p)| p - fspl_1m(s.freq))
                .collect();
            let x2: Vec<f64> = samples
                .iter()
                .zip(&x1)
                .map(|(s, &x)| x * (s.freq.ghz() - f0.ghz()) / f0.ghz())
                .collect();
            for i in 0..axes[0].points() {
                let n = axes[0].value(i);
                for j in 0..axes[1].points() {
                    let b = axes[1].value(j);
                    let nb = n * b;
                    let mut ss = 0.0;
                    for k in 0..a.len() {
                        let r = a[k] - (n * x1[k] + nb * x2[k]);
                        ss += r * r;
                    }
                    if ss < best_ss {
                        best_ss = ss;
                        best = Some(ModelParams::Cif(CifParams { n, b, f0 }));
                    }
                }
            }
        }
    }

    let params = best.expect("validated axes yield at least one grid point");
    Ok(GridSearchResult {
        params,
        sigma_db: math::sqrt(best_ss / n_samples),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{fit_ci, fit_fi};
    use crate::units::{DistanceM, Environment, FrequencyGhz, Scenario};

    fn sample(f: f64, d: f64, pl: f64) -> PathLossSample {
        PathLossSample::new(
            Scenario::UmiStreetCanyon,
            Environment::Nlos,
            FrequencyGhz::new(f).unwrap(),
            DistanceM::new(d).unwrap(),
            pl,
        )
        .unwrap()
    }

    #[test]
    fn ci_grid_matches_hand_example() {
        let samples = [sample(28.0, 10.0, 81.39), sample(28.0, 100.0, 111.39)];
        let axis = GridAxis::new(0.0, 5.0, 0.01).unwrap();
        let result = grid_oracle_fit(&samples, ModelKind::Ci, &[axis]).unwrap();
        match result.params {
            ModelParams::Ci(p) => assert!((p.n - 2.40).abs() < 1e-9, "n = {}", p.n),
            _ => unreachable!(),
        }
        // the closed form does at least as well as the best grid point
        let closed = fit_ci(&samples).unwrap();
        assert!(closed.sigma_db <= result.sigma_db + 1e-9);
        // and the grid winner is within one step of it
        match (result.params, closed.params) {
            (ModelParams::Ci(g), ModelParams::Ci(c)) => {
                assert!((g.n - c.n).abs() <= 0.01 + 1e-9);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn fi_grid_recovers_noise_free_line() {
        let truth = FiParams {
            alpha: 2.0,
            beta_db: 50.0,
        };
        let samples: alloc::vec::Vec<PathLossSample> = [2.0, 10.0, 55.0, 120.0]
            .iter()
            .map(|&d| {
                let pl = crate::models::eval_fi(truth, DistanceM::new(d).unwrap());
                sample(28.0, d, pl)
            })
            .collect();
        let axes = [
            GridAxis::new(1.5, 2.5, 0.01).unwrap(),
            GridAxis::new(45.0, 55.0, 0.1).unwrap(),
        ];
        let result = grid_oracle_fit(&samples, ModelKind::Fi, &axes).unwrap();
        match result.params {
            ModelParams::Fi(p) => {
                assert!((p.alpha - 2.0).abs() <= 0.01 + 1e-9);
                assert!((p.beta_db - 50.0).abs() <= 0.1 + 1e-9);
            }
            _ => unreachable!(),
        }
        let closed = fit_fi(&samples).unwrap();
        assert!(closed.sigma_db <= result.sigma_db + 1e-9);
    }

    #[test]
    fn tie_break_keeps_first_grid_point() {
        // one sample at 1 m: every exponent predicts the same loss, so every
        // grid point ties and the first (smallest n) must win
        let samples = [sample(28.0, 1.0, 70.0)];
        let axis = GridAxis::new(1.0, 3.0, 0.5).unwrap();
        let result = grid_oracle_fit(&samples, ModelKind::Ci, &[axis]).unwrap();
        match result.params {
            ModelParams::Ci(p) => assert_eq!(p.n, 1.0),
            _ => unreachable!(),
        }
    }

    #[test]
    fn axis_point_enumeration_is_inclusive() {
        let axis = GridAxis::new(0.0, 5.0, 0.01).unwrap();
        assert_eq!(axis.points(), 501);
        assert!((axis.value(500) - 5.0).abs() < 1e-9);
        let coarse = GridAxis::new(2.0, 2.0, 1.0).unwrap();
        assert_eq!(coarse.points(), 1);
    }

    #[test]
    fn error_cases() {
        let samples = [sample(28.0, 10.0, 90.0)];
        assert!(matches!(
            grid_oracle_fit(&[], ModelKind::Ci, &[GridAxis::new(0.0, 1.0, 0.1).unwrap()]),
            Err(OracleError::EmptySampleSet)
        ));
        assert!(matches!(
            grid_oracle_fit(
                &samples,
                ModelKind::Fi,
                &[GridAxis::new(0.0, 1.0, 0.1).unwrap()]
            ),
            Err(OracleError::WrongAxisCount {
                expected: 2,
                got: 1,
                ..
            })
        ));
        assert!(matches!(
            GridAxis::new(1.0, 0.0, 0.1),
            Err(OracleError::InvalidAxis { .. })
        ));
        assert!(matches!(
            GridAxis::new(0.0, 1.0, 0.0),
            Err(OracleError::InvalidAxis { .. })
        ));
        // literal struct with a bad step is caught inside the search
        let bad = GridAxis {
            min: 0.0,
            max: 1.0,
            step: -0.5,
        };
        assert!(matches!(
            grid_oracle_fit(&samples, ModelKind::Ci, &[bad]),
            Err(OracleError::InvalidAxis { .. })
        ));
    }
}
