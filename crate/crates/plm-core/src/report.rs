//! Side-by-side model comparison over one dataset: fit whatever is fittable,
//! record why the rest was skipped, rank by shadow-fading sigma, and diff
//! fitted parameters against the built-in registry where a matching reference
//! row exists.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::dataset::Dataset;
use crate::fit::{fit_abg, fit_ci, fit_cif, fit_fi, F0Mode, FitResult};
use crate::models::{ModelKind, ModelParams};
use crate::registry::{reference_lookup, FreqKey, ReferenceEntry};
use crate::units::{Environment, FrequencyGhz, Scenario};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReportError {
    #[error("cannot compare models on an empty dataset")]
    EmptyDataset,
    #[error("no models requested")]
    NoModelsRequested,
    #[error("none of the requested models is fittable on this dataset")]
    NoFittableModel {
        /// Why each requested model was skipped.
        reasons: Vec<(ModelKind, String)>,
    },
}

/// What the compared dataset looks like. Scenario and environment are `None`
/// when the dataset mixes values.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSummary {
    pub scenario: Option<Scenario>,
    pub environment: Option<Environment>,
    pub frequencies: Vec<FrequencyGhz>,
    pub distance_range_m: (f64, f64),
    pub sample_count: usize,
    pub source: String,
}

/// Fitted-vs-reference differences for one model, `fitted − reference`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegistryDelta {
    pub reference: ReferenceEntry,
    /// Per-parameter deltas, `(name, fitted − reference)`.
    pub param_deltas: Vec<(&'static str, f64)>,
    pub sigma_delta_db: f64,
}

/// Per-model outcome inside a report.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)] // a handful of entries per report; boxing buys nothing
pub enum ModelOutcome {
    Fitted {
        fit: FitResult,
        /// Extra context, e.g. that a frequency-weighted fit reverts to the
        /// plain close-in form on single-frequency data.
        note: Option<String>,
        /// Present when the dataset's (scenario, environment, frequency set)
        /// exactly matches a registry row for this model.
        registry_delta: Option<RegistryDelta>,
    },
    Skipped {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelEntry {
    pub model: ModelKind,
    pub outcome: ModelOutcome,
}

/// One entry per requested model plus a dataset summary and a sigma ranking
/// over the models that were actually fitted.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub summary: DatasetSummary,
    pub entries: Vec<ModelEntry>,
    /// Fitted models ordered by ascending sigma; ties keep the canonical
    /// FI, CI, ABG, CIF order.
    pub sigma_ranking: Vec<ModelKind>,
}

impl ComparisonReport {
    pub fn entry(&self, model: ModelKind) -> Option<&ModelEntry> {
        self.entries.iter().find(|e| e.model == model)
    }

    pub fn fit(&self, model: ModelKind) -> Option<&FitResult> {
        match self.entry(model) {
            Some(ModelEntry {
                outcome: ModelOutcome::Fitted { fit, .. },
                ..
            }) => Some(fit),
            _ => None,
        }
    }
}

/// Fits every requested model the dataset supports and assembles the
/// comparison.
///
/// Models whose preconditions the data cannot meet are skipped with a
/// recorded reason, not errored — only a dataset where *nothing* fits is an
/// error. Requested models are deduplicated and processed in canonical
/// FI, CI, ABG, CIF order.
pub fn compare_models(
    ds: &Dataset,
    models: &[ModelKind],
    f0_mode: F0Mode,
) -> Result<ComparisonReport, ReportError> {
    if models.is_empty() {
        return Err(ReportError::NoModelsRequested);
    }
    if ds.is_empty() {
        return Err(ReportError::EmptyDataset);
    }

    let summary = summarize(ds);
    let n_freqs = summary.frequencies.len();

    let mut entries = Vec::new();
    for kind in ModelKind::ALL {
        if !models.contains(&kind) {
            continue;
        }
        let outcome = match kind {
            ModelKind::Fi => {
                if n_freqs > 1 {
                    skip(alloc::format!(
                        "floating-intercept fits are per-frequency; this dataset spans {n_freqs} frequencies — filter to one first"
                    ))
                } else {
                    fitted(fit_fi(&ds.samples), None)
                }
            }
            ModelKind::Ci => fitted(fit_ci(&ds.samples), None),
            ModelKind::Abg => {
                if n_freqs < 2 {
                    skip(alloc::format!(
                        "needs at least two distinct frequencies, dataset has {n_freqs}"
                    ))
                } else {
                    fitted(fit_abg(&ds.samples), None)
                }
            }
            ModelKind::Cif => {
                let note = if n_freqs == 1 {
                    Some(String::from("reverts to CI (single-frequency input)"))
                } else {
                    None
                };
                fitted(fit_cif(&ds.samples, f0_mode), note)
            }
        };
        let outcome = attach_registry_delta(outcome, &summary, kind);
        entries.push(ModelEntry {
            model: kind,
            outcome,
        });
    }

    let mut ranked: Vec<(ModelKind, f64)> = entries
        .iter()
        .filter_map(|e| match &e.outcome {
            ModelOutcome::Fitted { fit, .. } => Some((e.model, fit.sigma_db)),
            ModelOutcome::Skipped { .. } => None,
        })
        .collect();
    if ranked.is_empty() {
        let reasons = entries
            .into_iter()
            .map(|e| match e.outcome {
                ModelOutcome::Skipped { reason } => (e.model, reason),
                ModelOutcome::Fitted { .. } => unreachable!(),
            })
            .collect();
        return Err(ReportError::NoFittableModel { reasons });
    }
    // stable sort: equal sigmas keep canonical model order
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1));
    let sigma_ranking = ranked.into_iter().map(|(kind, _)| kind).collect();

    Ok(ComparisonReport {
        summary,
        entries,
        sigma_ranking,
    })
}

fn skip(reason: String) -> ModelOutcome {
    ModelOutcome::Skipped { reason }
}

fn fitted(result: Result<FitResult, crate::fit::FitError>, note: Option<String>) -> ModelOutcome {
    match result {
        Ok(fit) => ModelOutcome::Fitted {
            fit,
            note,
            registry_delta: None,
        },
        Err(e) => ModelOutcome::Skipped {
            reason: e.to_string(),
        },
    }
}

fn summarize(ds: &Dataset) -> DatasetSummary {
    let mut scenario = Some(ds.samples[0].scenario.clone());
    let mut environment = Some(ds.samples[0].environment);
    for s in &ds.samples[1..] {
        if scenario.as_ref() != Some(&s.scenario) {
            scenario = None;
        }
        if environment != Some(s.environment) {
            environment = None;
        }
    }
    DatasetSummary {
        scenario,
        environment,
        frequencies: ds.unique_frequencies(),
        distance_range_m: ds.distance_range_m().expect("dataset checked nonempty"),
        sample_count: ds.len(),
        source: ds.source.clone(),
    }
}

fn attach_registry_delta(
    outcome: ModelOutcome,
    summary: &DatasetSummary,
    kind: ModelKind,
) -> ModelOutcome {
    let ModelOutcome::Fitted {
        fit,
        note,
        registry_delta: _,
    } = outcome
    else {
        return outcome;
    };
    let delta = match (&summary.scenario, summary.environment) {
        (Some(scenario), Some(env)) => {
            let key = if summary.frequencies.len() == 1 {
                FreqKey::Single(summary.frequencies[0])
            } else {
                FreqKey::Multi(summary.frequencies.clone())
            };
            reference_lookup(scenario, env, &key, kind).map(|reference| RegistryDelta {
                param_deltas: param_deltas(&fit.params, &reference.params),
                sigma_delta_db: fit.sigma_db - reference.sigma_db,
                reference,
            })
        }
        _ => None,
    };
    ModelOutcome::Fitted {
        fit,
        note,
        registry_delta: delta,
    }
}

fn param_deltas(fitted: &ModelParams, reference: &ModelParams) -> Vec<(&'static str, f64)> {
    let mut out = Vec::new();
    match (fitted, reference) {
        (ModelParams::Fi(a), ModelParams::Fi(b)) => {
            out.push(("alpha", a.alpha - b.alpha));
            out.push(("beta_db", a.beta_db - b.beta_db));
        }
        (ModelParams::Ci(a), ModelParams::Ci(b)) => {
            out.push(("n", a.n - b.n));
        }
        (ModelParams::Abg(a), ModelParams::Abg(b)) => {
            out.push(("alpha", a.alpha - b.alpha));
            out.push(("beta_db", a.beta_db - b.beta_db));
            out.push(("gamma", a.gamma - b.gamma));
        }
        (ModelParams::Cif(a), ModelParams::Cif(b)) => {
            out.push(("n", a.n - b.n));
            out.push(("b", a.b - b.b));
        }
        // lookup was keyed by model kind, so mixed variants cannot happen
        _ => unreachable!("registry delta across different model kinds"),
    }
    out
}
