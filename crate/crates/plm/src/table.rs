//! Aligned plain-text tables for comparison reports and the reference
//! registry. One row per model; shared columns across both uses so the two
//! outputs read the same way.

use plm_core::{ComparisonReport, FrequencyGhz, ModelOutcome, ModelParams, ReferenceEntry};

use crate::csv::split_params;

const HEADERS: [&str; 9] = [
    "Scenario",
    "Env",
    "Freq (GHz)",
    "Dist Range (m)",
    "Model",
    "PLE/α/n",
    "β (dB)",
    "γ/b",
    "σ (dB)",
];

/// Right-align everything numeric; keep the three leading tag columns left.
const LEFT: [bool; 9] = [true, true, true, true, true, false, false, false, false];

fn freq_cell(freqs: &[FrequencyGhz]) -> String {
    let parts: Vec<String> = freqs.iter().map(|f| trim_num(f.ghz(), 1)).collect();
    parts.join(", ")
}

fn dist_cell(range: (f64, f64)) -> String {
    format!("{}-{}", trim_num(range.0, 1), trim_num(range.1, 1))
}

/// Fixed decimals, but drop a trailing ".0" so whole numbers stay short.
fn trim_num(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    match s.strip_suffix(".0") {
        Some(t) => t.to_string(),
        None => s,
    }
}

fn param_cells(params: &ModelParams) -> [String; 3] {
    let (slope, beta, shape) = split_params(params);
    let fmt = |v: Option<f64>, dec: usize| match v {
        Some(x) => format!("{x:.dec$}"),
        None => "-".to_string(),
    };
    [fmt(slope, 2), fmt(beta, 1), fmt(shape, 2)]
}

fn render(rows: &[[String; 9]], color: bool) -> String {
    let mut widths: Vec<usize> = HEADERS.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }

    let mut out = String::new();
    let mut line = |cells: &[String; 9], bold: bool| {
        let mut parts = Vec::with_capacity(9);
        for ((cell, &w), &left) in cells.iter().zip(&widths).zip(&LEFT) {
            let pad = w - cell.chars().count();
            if left {
                parts.push(format!("{cell}{}", " ".repeat(pad)));
            } else {
                parts.push(format!("{}{cell}", " ".repeat(pad)));
            }
        }
        let joined = parts.join("  ");
        let trimmed = joined.trim_end();
        if bold && color {
            out.push_str("\x1b[1m");
            out.push_str(trimmed);
            out.push_str("\x1b[0m");
        } else {
            out.push_str(trimmed);
        }
        out.push('\n');
    };

    let header: [String; 9] = HEADERS.map(String::from);
    line(&header, true);
    let rule: [String; 9] = std::array::from_fn(|i| "-".repeat(widths[i]));
    line(&rule, false);
    for row in rows {
        line(row, false);
    }
    out
}

pub fn comparison_table(report: &ComparisonReport, color: bool) -> String {
    let s = &report.summary;
    let scenario = s
        .scenario
        .as_ref()
        .map(|sc| sc.token())
        .unwrap_or_else(|| "(mixed)".to_string());
    let env = s
        .environment
        .map(|e| e.token().to_string())
        .unwrap_or_else(|| "(mixed)".to_string());
    let freqs = freq_cell(&s.frequencies);
    let dists = dist_cell(s.distance_range_m);

    let mut rows: Vec<[String; 9]> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    for entry in &report.entries {
        match &entry.outcome {
            ModelOutcome::Fitted {
                fit,
                note,
                registry_delta,
            } => {
                let [a, b, g] = param_cells(&fit.params);
                rows.push([
                    scenario.clone(),
                    env.clone(),
                    freqs.clone(),
                    dists.clone(),
                    entry.model.name().to_string(),
                    a,
                    b,
                    g,
                    format!("{:.1}", fit.sigma_db),
                ]);
                if let Some(n) = note {
                    notes.push(format!("{}: {n}", entry.model.name()));
                }
                if let Some(d) = registry_delta {
                    let parts: Vec<String> = d
                        .param_deltas
                        .iter()
                        .map(|(name, v)| format!("Δ{name}={v:+.2}"))
                        .collect();
                    notes.push(format!(
                        "{}: vs reference fit {} Δσ={:+.2} dB",
                        entry.model.name(),
                        parts.join(" "),
                        d.sigma_delta_db
                    ));
                }
            }
            ModelOutcome::Skipped { reason } => {
                notes.push(format!("{}: skipped — {reason}", entry.model.name()));
            }
        }
    }

    let mut out = render(&rows, color);
    if !report.sigma_ranking.is_empty() {
        let ranked: Vec<&str> = report.sigma_ranking.iter().map(|k| k.name()).collect();
        out.push('\n');
        out.push_str(&format!(
            "sigma ranking (best first): {}\n",
            ranked.join(" <= ")
        ));
    }
    for n in &notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

pub fn registry_table(entries: &[ReferenceEntry], color: bool) -> String {
    let rows: Vec<[String; 9]> = entries
        .iter()
        .map(|e| {
            let [a, b, g] = param_cells(&e.params);
            [
                e.scenario.token(),
                e.environment.token().to_string(),
                freq_cell(&e.frequencies),
                dist_cell(e.distance_range_m),
                e.model.name().to_string(),
                a,
                b,
                g,
                format!("{:.1}", e.sigma_db),
            ]
        })
        .collect();
    render(&rows, color)
}

#[cfg(test)]
mod tests {
    use super::*;
    use plm_core::reference_entries;

    #[test]
    fn registry_rows_align() {
        let table = registry_table(&reference_entries(), false);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), reference_entries().len() + 2);
        assert!(lines[0].starts_with("Scenario"));
        assert!(lines[1].starts_with("---"));
        // every body line puts the model name in the same column
        let col = lines[2].find("FI").unwrap();
        for l in &lines[2..] {
            let tag = &l[col..col + 2];
            assert!(
                ["FI", "CI", "AB", "CI"].contains(&tag),
                "misaligned row: {l}"
            );
        }
        // no styling without color
        assert!(!table.contains('\x1b'));
    }

    #[test]
    fn color_wraps_only_the_header() {
        let table = registry_table(&reference_entries(), true);
        assert!(table.starts_with("\x1b[1m"));
        assert_eq!(table.matches('\x1b').count(), 2);
    }

    #[test]
    fn whole_numbers_stay_short_in_tag_columns() {
        assert_eq!(trim_num(28.0, 1), "28");
        assert_eq!(trim_num(73.5, 1), "73.5");
        assert_eq!(trim_num(4.1, 1), "4.1");
    }
}
