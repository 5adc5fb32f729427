//! The measurement interchange format.
//!
//! One header line, five comma-separated columns, `#` comments, no quoting —
//! this is deliberately a fixed dialect rather than general CSV, so errors
//! can point at exact lines and the emitted form is byte-stable. Input
//! accepts LF or CRLF; output is always LF.

use std::collections::BTreeMap;

use plm_core::{
    Dataset, DistanceM, Environment, FrequencyGhz, PathLossSample, ReferenceEntry, Scenario,
};
use thiserror::Error;

use crate::fmt::sig6;

pub const HEADER: &str = "scenario,environment,frequency_ghz,distance_m,path_loss_db";

const COLUMNS: [&str; 5] = [
    "scenario",
    "environment",
    "frequency_ghz",
    "distance_m",
    "path_loss_db",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CsvError {
    #[error("no header line found (expected `{HEADER}`)")]
    MissingHeader,
    #[error("header is missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("header column {index} should be `{expected}`, found `{found}`")]
    RenamedColumn {
        index: usize,
        expected: &'static str,
        found: String,
    },
    #[error("header has unexpected extra column `{0}`")]
    ExtraColumn(String),
    #[error("line {line}: expected 5 fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: column `{column}`: cannot parse `{value}` as a number")]
    NumberParse {
        line: usize,
        column: &'static str,
        value: String,
    },
    #[error("line {line}: column `{column}`: {message}")]
    BadValue {
        line: usize,
        column: &'static str,
        message: String,
    },
    #[error(
        "sample {index}: scenario label `{label}` cannot be written (contains a comma or newline)"
    )]
    UnwritableLabel { index: usize, label: String },
}

/// Parses a full document. `source` is recorded on the dataset (a file path,
/// `<stdin>`, ...).
pub fn parse_dataset(text: &str, source: &str) -> Result<Dataset, CsvError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|&(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines.next().ok_or(CsvError::MissingHeader)?;
    check_header(header)?;

    let mut samples = Vec::new();
    for (line, row) in lines {
        samples.push(parse_row(line, row)?);
    }
    Ok(Dataset {
        samples,
        source: source.to_string(),
        metadata: BTreeMap::new(),
    })
}

fn check_header(header: &str) -> Result<(), CsvError> {
    let fields: Vec<&str> = header.split(',').map(str::trim).collect();
    for (i, expected) in COLUMNS.iter().enumerate() {
        match fields.get(i) {
            None => return Err(CsvError::MissingColumn(expected)),
            Some(found) if found != expected => {
                return Err(CsvError::RenamedColumn {
                    index: i + 1,
                    expected,
                    found: found.to_string(),
                })
            }
            Some(_) => {}
        }
    }
    if let Some(extra) = fields.get(COLUMNS.len()) {
        return Err(CsvError::ExtraColumn(extra.to_string()));
    }
    Ok(())
}

fn parse_row(line: usize, row: &str) -> Result<PathLossSample, CsvError> {
    let fields: Vec<&str> = row.split(',').map(str::trim).collect();
    // an `other:` label may not contain commas, so five fields is exact
    if fields.len() != 5 {
        return Err(CsvError::FieldCount {
            line,
            found: fields.len(),
        });
    }

    let scenario = Scenario::parse_token(fields[0]).map_err(|e| CsvError::BadValue {
        line,
        column: "scenario",
        // the only failure inside an `other:` token is an empty label; any
        // other string is simply not one of the recognized tokens
        message: if fields[0].starts_with("other:") {
            e.to_string()
        } else {
            format!(
                "unknown scenario `{}` (expected `umi_sc`, `indoor_office`, or `other:<label>`)",
                fields[0]
            )
        },
    })?;
    let environment = Environment::parse_token(fields[1]).ok_or_else(|| CsvError::BadValue {
        line,
        column: "environment",
        message: format!(
            "unknown environment `{}` (expected `los` or `nlos`)",
            fields[1]
        ),
    })?;
    let freq = FrequencyGhz::new(number(line, "frequency_ghz", fields[2])?).map_err(|e| {
        CsvError::BadValue {
            line,
            column: "frequency_ghz",
            message: e.to_string(),
        }
    })?;
    let dist =
        DistanceM::new(number(line, "distance_m", fields[3])?).map_err(|e| CsvError::BadValue {
            line,
            column: "distance_m",
            message: e.to_string(),
        })?;
    let pl = number(line, "path_loss_db", fields[4])?;

    PathLossSample::new(scenario, environment, freq, dist, pl).map_err(|e| CsvError::BadValue {
        line,
        column: "path_loss_db",
        message: e.to_string(),
    })
}

fn number(line: usize, column: &'static str, value: &str) -> Result<f64, CsvError> {
    value.parse::<f64>().map_err(|_| CsvError::NumberParse {
        line,
        column,
        value: value.to_string(),
    })
}

/// Renders a dataset back to the interchange form: header, one row per
/// sample, LF line endings, numbers at six significant digits.
pub fn write_dataset(ds: &Dataset) -> Result<String, CsvError> {
    let mut out = String::with_capacity(64 + ds.len() * 48);
    out.push_str(HEADER);
    out.push('\n');
    for (index, s) in ds.samples.iter().enumerate() {
        let token = s.scenario.token();
        if token.contains(',') || token.contains('\n') {
            return Err(CsvError::UnwritableLabel {
                index,
                label: token,
            });
        }
        out.push_str(&token);
        out.push(',');
        out.push_str(s.environment.token());
        out.push(',');
        out.push_str(&sig6(s.freq.ghz()));
        out.push(',');
        out.push_str(&sig6(s.dist.meters()));
        out.push(',');
        out.push_str(&sig6(s.path_loss_db));
        out.push('\n');
    }
    Ok(out)
}

/// Renders the built-in reference table as CSV. Parameter columns a model
/// does not have stay empty; the frequency list is `;`-separated so the row
/// stays comma-clean.
pub fn write_registry(entries: &[ReferenceEntry]) -> String {
    let mut out = String::from(
        "scenario,environment,model,freq_ghz_list,dist_min_m,dist_max_m,\
         ple_or_alpha_or_n,beta_db,gamma_or_b,sigma_db\n",
    );
    for e in entries {
        let freqs: Vec<String> = e.frequencies.iter().map(|f| sig6(f.ghz())).collect();
        let (slope, beta, shape) = split_params(&e.params);
        let cell = |v: Option<f64>| v.map(sig6).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            e.scenario.token(),
            e.environment.token(),
            e.model.token(),
            freqs.join(";"),
            sig6(e.distance_range_m.0),
            sig6(e.distance_range_m.1),
            cell(slope),
            cell(beta),
            cell(shape),
            sig6(e.sigma_db),
        ));
    }
    out
}

/// Maps any model's parameters onto the three shared table columns:
/// slope (PLE / alpha / n), intercept (beta), shape (gamma / b).
pub fn split_params(params: &plm_core::ModelParams) -> (Option<f64>, Option<f64>, Option<f64>) {
    use plm_core::ModelParams::*;
    match params {
        Fi(p) => (Some(p.alpha), Some(p.beta_db), None),
        Ci(p) => (Some(p.n), None, None),
        Abg(p) => (Some(p.alpha), Some(p.beta_db), Some(p.gamma)),
        Cif(p) => (Some(p.n), None, Some(p.b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_round_trips() {
        let text = "scenario,environment,frequency_ghz,distance_m,path_loss_db\n\
                    umi_sc,nlos,28,61,119.5\n\
                    umi_sc,nlos,28,186,135.2\n\
                    indoor_office,los,73.5,10,85\n";
        let ds = parse_dataset(text, "inline").unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.samples[0].dist.meters(), 61.0);
        assert_eq!(ds.samples[2].scenario, Scenario::IndoorOffice);
        assert_eq!(write_dataset(&ds).unwrap(), text);
    }

    #[test]
    fn comments_blanks_and_crlf_are_accepted() {
        let text = "# generated for a smoke test\r\n\
                    scenario,environment,frequency_ghz,distance_m,path_loss_db\r\n\
                    \r\n\
                    other:rooftop,los,38,100,110\r\n";
        let ds = parse_dataset(text, "inline").unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.samples[0].scenario.token(), "other:rooftop");
        // emission normalizes to LF
        assert!(!write_dataset(&ds).unwrap().contains('\r'));
    }

    #[test]
    fn header_errors_name_the_column() {
        let renamed = "scenario,env,frequency_ghz,distance_m,path_loss_db\numi_sc,los,28,5,80\n";
        assert_eq!(
            parse_dataset(renamed, "x").unwrap_err(),
            CsvError::RenamedColumn {
                index: 2,
                expected: "environment",
                found: "env".to_string()
            }
        );
        let short = "scenario,environment,frequency_ghz,distance_m\n";
        assert_eq!(
            parse_dataset(short, "x").unwrap_err(),
            CsvError::MissingColumn("path_loss_db")
        );
        assert_eq!(parse_dataset("", "x").unwrap_err(), CsvError::MissingHeader);
    }

    #[test]
    fn row_errors_cite_line_and_column() {
        let text = "scenario,environment,frequency_ghz,distance_m,path_loss_db\n\
                    umi_sc,nlos,28,0.5,100\n";
        match parse_dataset(text, "x").unwrap_err() {
            CsvError::BadValue { line, column, .. } => {
                assert_eq!((line, column), (2, "distance_m"));
            }
            other => panic!("unexpected error {other:?}"),
        }

        let text = "# leading comment\n\
                    scenario,environment,frequency_ghz,distance_m,path_loss_db\n\
                    umi_sc,nlos,28,10,96\n\
                    umi_sc,nlos,twenty,10,96\n";
        assert_eq!(
            parse_dataset(text, "x").unwrap_err(),
            CsvError::NumberParse {
                line: 4,
                column: "frequency_ghz",
                value: "twenty".to_string()
            }
        );
    }

    #[test]
    fn field_count_is_exact() {
        let text = "scenario,environment,frequency_ghz,distance_m,path_loss_db\n\
                    umi_sc,nlos,28,10\n";
        assert_eq!(
            parse_dataset(text, "x").unwrap_err(),
            CsvError::FieldCount { line: 2, found: 4 }
        );
    }

    #[test]
    fn registry_export_has_one_row_per_entry() {
        let entries = plm_core::reference_entries();
        let csv = write_registry(&entries);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), entries.len() + 1);
        assert!(lines[0].starts_with("scenario,environment,model,freq_ghz_list"));
        // multi-frequency rows keep the frequency list comma-free
        assert!(csv.contains("28;73.5"));
        // a close-in row leaves intercept and shape cells empty
        let ci_row = lines
            .iter()
            .find(|l| l.contains(",ci,") && l.starts_with("umi_sc,los"))
            .unwrap();
        let cells: Vec<&str> = ci_row.split(',').collect();
        assert_eq!(cells[7], "");
        assert_eq!(cells[8], "");
    }
}
