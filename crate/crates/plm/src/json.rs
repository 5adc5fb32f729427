//! JSON rendering for every machine-readable output.
//!
//! Documents are assembled from a tiny ordered value model rather than a
//! serialization framework: field order is part of the output contract
//! (byte-determinism), and all numbers go through the shared six-significant-
//! digit formatter.

use plm_core::{
    ComparisonReport, Dataset, FitResult, FrequencyGhz, ModelEntry, ModelOutcome, ModelParams,
    ReferenceEntry, RegistryDelta,
};

use crate::fmt::sig6;

#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    Num(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

/// Object constructor: keys in the given order.
fn obj(fields: Vec<(&str, Json)>) -> Json {
    Json::Obj(
        fields
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    )
}

impl Json {
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, depth: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Num(v) => out.push_str(&sig6(*v)),
            Json::Str(s) => write_escaped(out, s),
            Json::Arr(items) if items.is_empty() => out.push_str("[]"),
            Json::Arr(items) => {
                // short numeric arrays stay on one line; anything structured
                // gets one element per line
                let inline = items
                    .iter()
                    .all(|i| matches!(i, Json::Num(_) | Json::Null | Json::Bool(_)))
                    && items.len() <= 8;
                if inline {
                    out.push('[');
                    for (i, item) in items.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        item.write(out, depth);
                    }
                    out.push(']');
                } else {
                    out.push_str("[\n");
                    for (i, item) in items.iter().enumerate() {
                        indent(out, depth + 1);
                        item.write(out, depth + 1);
                        if i + 1 < items.len() {
                            out.push(',');
                        }
                        out.push('\n');
                    }
                    indent(out, depth);
                    out.push(']');
                }
            }
            Json::Obj(fields) if fields.is_empty() => out.push_str("{}"),
            Json::Obj(fields) => {
                out.push_str("{\n");
                for (i, (key, value)) in fields.iter().enumerate() {
                    indent(out, depth + 1);
                    write_escaped(out, key);
                    out.push_str(": ");
                    value.write(out, depth + 1);
                    if i + 1 < fields.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                indent(out, depth);
                out.push('}');
            }
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    out.push_str(&"  ".repeat(depth));
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn num_arr(values: impl IntoIterator<Item = f64>) -> Json {
    Json::Arr(values.into_iter().map(Json::Num).collect())
}

fn freq_arr(freqs: &[FrequencyGhz]) -> Json {
    num_arr(freqs.iter().map(|f| f.ghz()))
}

/// `params` object with one entry per model parameter, canonical names.
pub fn params_obj(params: &ModelParams) -> Json {
    match params {
        ModelParams::Fi(p) => obj(vec![
            ("alpha", Json::Num(p.alpha)),
            ("beta_db", Json::Num(p.beta_db)),
        ]),
        ModelParams::Ci(p) => obj(vec![("n", Json::Num(p.n))]),
        ModelParams::Abg(p) => obj(vec![
            ("alpha", Json::Num(p.alpha)),
            ("beta_db", Json::Num(p.beta_db)),
            ("gamma", Json::Num(p.gamma)),
        ]),
        ModelParams::Cif(p) => obj(vec![("n", Json::Num(p.n)), ("b", Json::Num(p.b))]),
    }
}

fn model_f0(params: &ModelParams) -> Json {
    match params {
        ModelParams::Cif(p) => Json::Num(p.f0.ghz()),
        _ => Json::Null,
    }
}

fn opt_freq(f: Option<FrequencyGhz>) -> Json {
    f.map(|f| Json::Num(f.ghz())).unwrap_or(Json::Null)
}

pub fn fit_value(fit: &FitResult, include_residuals: bool) -> Json {
    let mut fields = vec![
        ("model", Json::Str(fit.model.token().into())),
        ("params", params_obj(&fit.params)),
        ("sigma_db", Json::Num(fit.sigma_db)),
        ("n_samples", Json::Num(fit.sample_count as f64)),
        ("freq_ghz_set", freq_arr(&fit.freq_set_ghz)),
        ("f0_ghz", opt_freq(fit.f0_ghz)),
    ];
    if include_residuals {
        fields.push(("residuals", num_arr(fit.residuals_db.iter().copied())));
    }
    obj(fields)
}

pub fn fit_json(fit: &FitResult, include_residuals: bool) -> String {
    fit_value(fit, include_residuals).render()
}

fn reference_value(e: &ReferenceEntry) -> Json {
    obj(vec![
        ("scenario", Json::Str(e.scenario.token())),
        ("environment", Json::Str(e.environment.token().into())),
        ("model", Json::Str(e.model.token().into())),
        ("freq_ghz_set", freq_arr(&e.frequencies)),
        (
            "dist_range_m",
            num_arr([e.distance_range_m.0, e.distance_range_m.1]),
        ),
        ("params", params_obj(&e.params)),
        ("f0_ghz", model_f0(&e.params)),
        ("sigma_db", Json::Num(e.sigma_db)),
        (
            "note",
            e.note.map(|n| Json::Str(n.into())).unwrap_or(Json::Null),
        ),
    ])
}

pub fn registry_json(entries: &[ReferenceEntry]) -> String {
    Json::Arr(entries.iter().map(reference_value).collect()).render()
}

fn delta_value(d: &RegistryDelta) -> Json {
    obj(vec![
        (
            "param_deltas",
            obj(d
                .param_deltas
                .iter()
                .map(|&(name, v)| (name, Json::Num(v)))
                .collect()),
        ),
        ("sigma_delta_db", Json::Num(d.sigma_delta_db)),
        ("reference", reference_value(&d.reference)),
    ])
}

fn entry_value(entry: &ModelEntry, include_residuals: bool) -> Json {
    let mut fields = vec![("model", Json::Str(entry.model.token().into()))];
    match &entry.outcome {
        ModelOutcome::Fitted {
            fit,
            note,
            registry_delta,
        } => {
            fields.push(("status", Json::Str("fitted".into())));
            fields.push(("fit", fit_value(fit, include_residuals)));
            fields.push((
                "note",
                note.as_ref()
                    .map(|n| Json::Str(n.clone()))
                    .unwrap_or(Json::Null),
            ));
            fields.push((
                "registry_delta",
                registry_delta
                    .as_ref()
                    .map(delta_value)
                    .unwrap_or(Json::Null),
            ));
        }
        ModelOutcome::Skipped { reason } => {
            fields.push(("status", Json::Str("skipped".into())));
            fields.push(("reason", Json::Str(reason.clone())));
        }
    }
    obj(fields)
}

pub fn report_json(report: &ComparisonReport, include_residuals: bool) -> String {
    let s = &report.summary;
    let dataset = obj(vec![
        (
            "scenario",
            s.scenario
                .as_ref()
                .map(|sc| Json::Str(sc.token()))
                .unwrap_or(Json::Null),
        ),
        (
            "environment",
            s.environment
                .map(|e| Json::Str(e.token().into()))
                .unwrap_or(Json::Null),
        ),
        ("freq_ghz_set", freq_arr(&s.frequencies)),
        (
            "dist_range_m",
            num_arr([s.distance_range_m.0, s.distance_range_m.1]),
        ),
        ("n_samples", Json::Num(s.sample_count as f64)),
        ("source", Json::Str(s.source.clone())),
    ]);
    obj(vec![
        ("dataset", dataset),
        (
            "models",
            Json::Arr(
                report
                    .entries
                    .iter()
                    .map(|e| entry_value(e, include_residuals))
                    .collect(),
            ),
        ),
        (
            "sigma_ranking",
            Json::Arr(
                report
                    .sigma_ranking
                    .iter()
                    .map(|k| Json::Str(k.token().into()))
                    .collect(),
            ),
        ),
    ])
    .render()
}

pub fn eval_json(params: &ModelParams, freq: FrequencyGhz, dist_m: f64, pl_db: f64) -> String {
    obj(vec![
        ("model", Json::Str(params.kind().token().into())),
        ("params", params_obj(params)),
        ("f0_ghz", model_f0(params)),
        ("freq_ghz", Json::Num(freq.ghz())),
        ("distance_m", Json::Num(dist_m)),
        ("path_loss_db", Json::Num(pl_db)),
    ])
    .render()
}

pub fn range_json(
    params: &ModelParams,
    freq: FrequencyGhz,
    max_pl_db: f64,
    range_m: f64,
) -> String {
    obj(vec![
        ("model", Json::Str(params.kind().token().into())),
        ("params", params_obj(params)),
        ("f0_ghz", model_f0(params)),
        ("freq_ghz", Json::Num(freq.ghz())),
        ("max_path_loss_db", Json::Num(max_pl_db)),
        ("max_range_m", Json::Num(range_m)),
    ])
    .render()
}

/// A generated dataset as JSON: provenance metadata plus the sample rows.
pub fn dataset_json(ds: &Dataset) -> String {
    Json::Obj(vec![
        ("source".to_string(), Json::Str(ds.source.clone())),
        (
            "metadata".to_string(),
            Json::Obj(
                ds.metadata
                    .iter()
                    .map(|(k, v)| (k.clone(), Json::Str(v.clone())))
                    .collect(),
            ),
        ),
        ("n_samples".to_string(), Json::Num(ds.len() as f64)),
        (
            "samples".to_string(),
            Json::Arr(
                ds.samples
                    .iter()
                    .map(|s| {
                        obj(vec![
                            ("scenario", Json::Str(s.scenario.token())),
                            ("environment", Json::Str(s.environment.token().into())),
                            ("frequency_ghz", Json::Num(s.freq.ghz())),
                            ("distance_m", Json::Num(s.dist.meters())),
                            ("path_loss_db", Json::Num(s.path_loss_db)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
    .render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use plm_core::{fit_ci, CiParams, DistanceM, Environment, PathLossSample, Scenario};

    fn samples() -> Vec<PathLossSample> {
        [(10.0, 81.39), (100.0, 111.39)]
            .into_iter()
            .map(|(d, pl)| {
                PathLossSample::new(
                    Scenario::UmiStreetCanyon,
                    Environment::Nlos,
                    FrequencyGhz::new(28.0).unwrap(),
                    DistanceM::new(d).unwrap(),
                    pl,
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn fit_document_shape() {
        let fit = fit_ci(&samples()).unwrap();
        let doc = fit_json(&fit, false);
        assert!(doc.starts_with("{\n  \"model\": \"ci\",\n"));
        assert!(doc.contains("\"params\": {\n    \"n\": 2.39994\n  }"));
        assert!(doc.contains("\"sigma_db\": 3.16258"));
        assert!(doc.contains("\"n_samples\": 2"));
        assert!(doc.contains("\"freq_ghz_set\": [28]"));
        assert!(doc.contains("\"f0_ghz\": null"));
        assert!(!doc.contains("residuals"));
        assert!(fit_json(&fit, true).contains("\"residuals\": ["));
    }

    #[test]
    fn strings_are_escaped() {
        let mut out = String::new();
        write_escaped(&mut out, "a\"b\\c\nd\u{1}");
        assert_eq!(out, "\"a\\\"b\\\\c\\nd\\u0001\"");
    }

    #[test]
    fn numbers_use_six_significant_digits() {
        let doc = eval_json(
            &ModelParams::Ci(CiParams { n: 3.4 }),
            FrequencyGhz::new(28.0).unwrap(),
            100.0,
            129.387_465_123,
        );
        assert!(doc.contains("\"path_loss_db\": 129.387"));
        assert!(doc.ends_with("}\n"));
    }
}
