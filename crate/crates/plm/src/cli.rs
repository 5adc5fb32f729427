//! Command-line surface. Every verb delegates to one library call and prints
//! its serialized result — no arithmetic happens here.
//!
//! Exit codes: 0 success, 1 validation or computation failure, 2 usage error.

use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plm_core::{
    compare_models, compute_f0, fit_abg, fit_ci, fit_cif, fit_fi, generate_synthetic, max_range,
    reference_entries, AbgParams, CiParams, CifParams, ComparisonReport, Dataset, DistanceM,
    Environment, F0Mode, FiParams, FitResult, FrequencyGhz, GenSpec, ModelKind, ModelParams,
    PathLossSample, RangeQuery, Scenario,
};

use crate::{csv, json, plot, table};

#[derive(Parser, Debug)]
#[command(
    name = "plm",
    version,
    about = "Large-scale path loss model toolkit: fit, evaluate, synthesize, compare, invert, and plot",
    subcommand_required = true,
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Fit one model (JSON result) or all applicable models (comparison) to a measurement CSV
    Fit(FitArgs),
    /// Evaluate a bound model at one frequency and distance
    Eval(EvalArgs),
    /// Generate a synthetic shadowed dataset as CSV
    Gen(GenArgs),
    /// Fit several models and render the side-by-side comparison
    Compare(CompareArgs),
    /// Invert a model: the largest distance staying within a path loss budget
    Range(RangeArgs),
    /// Render a dataset (and optional fits) as an SVG scatter plot
    Plot(PlotArgs),
    /// Print the built-in reference parameter table
    Registry(RegistryArgs),
}

// ---------------------------------------------------------------------------
// Shared argument blocks
// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Measurement CSV to read; `-` reads standard input
    #[arg(long)]
    pub input: String,
    /// Keep only samples in this environment (los|nlos)
    #[arg(long, value_parser = parse_env)]
    pub env: Option<Environment>,
    /// Keep only samples in this scenario (umi_sc|indoor_office|other:<label>)
    #[arg(long, value_parser = parse_scenario)]
    pub scenario: Option<Scenario>,
    /// Keep only samples at this frequency in GHz; repeat for several
    #[arg(long)]
    pub freq: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// Write the primary output here instead of standard output
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

/// Reference-frequency selection for the frequency-weighted model.
#[derive(Args, Debug)]
pub struct F0Args {
    /// Reference frequency: `auto` (sample-count-weighted mean, integer GHz) or a value in GHz
    #[arg(long, default_value = "auto", value_parser = parse_f0, conflicts_with = "f0_ghz")]
    pub f0: F0Arg,
    /// Explicit reference frequency in GHz (alternative spelling of `--f0 <value>`)
    #[arg(long)]
    pub f0_ghz: Option<f64>,
}

#[derive(Clone, Debug)]
pub enum F0Arg {
    Auto,
    Value(f64),
}

impl F0Args {
    fn mode(&self) -> Result<F0Mode, CliError> {
        let explicit = match (self.f0_ghz, &self.f0) {
            (Some(v), _) => Some(v),
            (None, F0Arg::Value(v)) => Some(*v),
            (None, F0Arg::Auto) => None,
        };
        match explicit {
            None => Ok(F0Mode::Auto),
            Some(v) => Ok(F0Mode::Explicit(freq_ghz(v)?)),
        }
    }

    /// True when the user picked a reference frequency rather than leaving
    /// the default in place.
    fn is_explicit(&self) -> bool {
        self.f0_ghz.is_some() || matches!(self.f0, F0Arg::Value(_))
    }
}

/// Raw model parameters for verbs that take a bound model on the command
/// line. Which fields are required depends on `--model`.
#[derive(Args, Debug)]
pub struct ParamArgs {
    /// Path loss exponent (models `ci` and `cif`)
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<f64>,
    /// Distance slope (models `fi` and `abg`); negative slopes occur in
    /// published line-of-sight fits, so `-0.8` must parse as a value
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Intercept in dB (models `fi` and `abg`)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Frequency slope (model `abg`)
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Linear frequency weighting of the exponent (model `cif`)
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
}

impl ParamArgs {
    /// Binds the flags to one model, rejecting missing and stray parameters.
    /// `f0` must be present exactly when the model is `cif`.
    fn bind(&self, kind: ModelKind, f0: Option<FrequencyGhz>) -> Result<ModelParams, CliError> {
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| CliError::Usage(format!("--model {} requires --{flag}", kind.token())))
        };
        let forbid = |v: Option<f64>, flag: &str| match v {
            Some(_) => Err(CliError::Usage(format!(
                "--{flag} does not apply to --model {}",
                kind.token()
            ))),
            None => Ok(()),
        };
        let params = match kind {
            ModelKind::Fi => {
                forbid(self.n, "n")?;
                forbid(self.gamma, "gamma")?;
                forbid(self.b, "b")?;
                ModelParams::Fi(
                    FiParams::new(need(self.alpha, "alpha")?, need(self.beta, "beta")?)
                        .map_err(|e| CliError::Fail(e.to_string()))?,
                )
            }
            ModelKind::Ci => {
                forbid(self.alpha, "alpha")?;
                forbid(self.beta, "beta")?;
                forbid(self.gamma, "gamma")?;
                forbid(self.b, "b")?;
                ModelParams::Ci(
                    CiParams::new(need(self.n, "n")?).map_err(|e| CliError::Fail(e.to_string()))?,
                )
            }
            ModelKind::Abg => {
                forbid(self.n, "n")?;
                forbid(self.b, "b")?;
                ModelParams::Abg(
                    AbgParams::new(
                        need(self.alpha, "alpha")?,
                        need(self.beta, "beta")?,
                        need(self.gamma, "gamma")?,
                    )
                    .map_err(|e| CliError::Fail(e.to_string()))?,
                )
            }
            ModelKind::Cif => {
                forbid(self.alpha, "alpha")?;
                forbid(self.beta, "beta")?;
                forbid(self.gamma, "gamma")?;
                let f0 = f0.ok_or_else(|| {
                    CliError::Usage("--model cif requires a reference frequency (--f0-ghz)".into())
                })?;
                ModelParams::Cif(
                    CifParams::new(need(self.n, "n")?, need(self.b, "b")?, f0)
                        .map_err(|e| CliError::Fail(e.to_string()))?,
                )
            }
        };
        Ok(params)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Table,
    Csv,
}

/// `--model` value where `all` is meaningful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelChoice {
    All,
    One(ModelKind),
}

fn parse_model_choice(s: &str) -> Result<ModelChoice, String> {
    if s == "all" {
        return Ok(ModelChoice::All);
    }
    ModelKind::parse_token(s)
        .map(ModelChoice::One)
        .ok_or_else(|| format!("expected fi, ci, abg, cif, or all, got `{s}`"))
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    ModelKind::parse_token(s).ok_or_else(|| format!("expected fi, ci, abg, or cif, got `{s}`"))
}

fn parse_env(s: &str) -> Result<Environment, String> {
    Environment::parse_token(s).ok_or_else(|| format!("expected los or nlos, got `{s}`"))
}

fn parse_scenario(s: &str) -> Result<Scenario, String> {
    Scenario::parse_token(s)
        .map_err(|_| format!("expected umi_sc, indoor_office, or other:<label>, got `{s}`"))
}

fn parse_f0(s: &str) -> Result<F0Arg, String> {
    if s == "auto" {
        return Ok(F0Arg::Auto);
    }
    s.parse::<f64>()
        .map(F0Arg::Value)
        .map_err(|_| format!("expected `auto` or a frequency in GHz, got `{s}`"))
}

// ---------------------------------------------------------------------------
// Per-verb arguments
// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Model to fit; `all` fits every applicable model and emits a comparison
    #[arg(long, default_value = "all", value_parser = parse_model_choice)]
    pub model: ModelChoice,
    #[command(flatten)]
    pub f0: F0Args,
    /// Include per-sample residuals in JSON output
    #[arg(long)]
    pub residuals: bool,
    /// Output format; `table` applies to `--model all` only
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub format: OutFormat,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Model to evaluate
    #[arg(long, value_parser = parse_model)]
    pub model: ModelKind,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Reference frequency in GHz (model `cif`)
    #[arg(long)]
    pub f0_ghz: Option<f64>,
    /// Frequency in GHz
    #[arg(long)]
    pub freq: f64,
    /// Distance in meters
    #[arg(long)]
    pub dist: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Model the mean path loss is drawn from
    #[arg(long, value_parser = parse_model)]
    pub model: ModelKind,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub f0: F0Args,
    /// Frequency in GHz; repeat for a multi-frequency dataset
    #[arg(long, required = true)]
    pub freq: Vec<f64>,
    /// Samples to draw per frequency
    #[arg(long)]
    pub count: usize,
    /// Smallest distance in meters
    #[arg(long)]
    pub dmin: f64,
    /// Largest distance in meters
    #[arg(long)]
    pub dmax: f64,
    /// Shadow-fading standard deviation in dB
    #[arg(long)]
    pub sigma: f64,
    /// Generator seed; the same seed reproduces the same bytes
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Scenario tag written to every row
    #[arg(long, default_value = "umi_sc", value_parser = parse_scenario)]
    pub scenario: Scenario,
    /// Environment tag written to every row
    #[arg(long, default_value = "nlos", value_parser = parse_env)]
    pub env: Environment,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Models to include; repeat for a subset, `all` for every model
    #[arg(long, default_value = "all", value_parser = parse_model_choice)]
    pub model: Vec<ModelChoice>,
    #[command(flatten)]
    pub f0: F0Args,
    /// Include per-sample residuals in JSON output
    #[arg(long)]
    pub residuals: bool,
    /// Output format (table|json)
    #[arg(long, value_enum, default_value_t = OutFormat::Table)]
    pub format: OutFormat,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct RangeArgs {
    /// Model to invert
    #[arg(long, value_parser = parse_model)]
    pub model: ModelKind,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Reference frequency in GHz (model `cif`)
    #[arg(long)]
    pub f0_ghz: Option<f64>,
    /// Frequency in GHz
    #[arg(long)]
    pub freq: f64,
    /// Path loss budget in dB
    #[arg(long)]
    pub max_pl: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Fit lines to draw: model tokens (repeatable), `all`, or `none` for scatter only
    #[arg(long, default_value = "all", value_parser = parse_plot_choice)]
    pub model: Vec<PlotChoice>,
    #[command(flatten)]
    pub f0: F0Args,
    /// Plot title
    #[arg(long, default_value = "path loss vs distance")]
    pub title: String,
    /// Image width in pixels
    #[arg(long, default_value_t = 720)]
    pub width: u32,
    /// Image height in pixels
    #[arg(long, default_value_t = 480)]
    pub height: u32,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlotChoice {
    All,
    None,
    One(ModelKind),
}

fn parse_plot_choice(s: &str) -> Result<PlotChoice, String> {
    match s {
        "all" => Ok(PlotChoice::All),
        "none" => Ok(PlotChoice::None),
        _ => ModelKind::parse_token(s)
            .map(PlotChoice::One)
            .ok_or_else(|| format!("expected fi, ci, abg, cif, all, or none, got `{s}`")),
    }
}

#[derive(Args, Debug)]
pub struct RegistryArgs {
    /// Keep only rows for this scenario
    #[arg(long, value_parser = parse_scenario)]
    pub scenario: Option<Scenario>,
    /// Keep only rows for this environment
    #[arg(long, value_parser = parse_env)]
    pub env: Option<Environment>,
    /// Keep only rows for this model
    #[arg(long, value_parser = parse_model)]
    pub model: Option<ModelKind>,
    /// Output format (table|csv|json)
    #[arg(long, value_enum, default_value_t = OutFormat::Table)]
    pub format: OutFormat,
    #[command(flatten)]
    pub out: OutArgs,
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

enum CliError {
    /// Bad flag combination or value: exit 2.
    Usage(String),
    /// Valid invocation that failed (bad data, unfittable model, I/O): exit 1.
    Fail(String),
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap picks the stream (help to stdout, errors to stderr) and
            // the code (0 for --help/--version, 2 otherwise)
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliError::Fail(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Fit(a) => run_fit(a),
        Cmd::Eval(a) => run_eval(a),
        Cmd::Gen(a) => run_gen(a),
        Cmd::Compare(a) => run_compare(a),
        Cmd::Range(a) => run_range(a),
        Cmd::Plot(a) => run_plot(a),
        Cmd::Registry(a) => run_registry(a),
    }
}

fn freq_ghz(v: f64) -> Result<FrequencyGhz, CliError> {
    FrequencyGhz::new(v).map_err(|e| CliError::Fail(e.to_string()))
}

fn load_input(args: &InputArgs) -> Result<Dataset, CliError> {
    let (text, source) = if args.input == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Fail(format!("cannot read standard input: {e}")))?;
        (buf, "<stdin>".to_string())
    } else {
        let text = fs::read_to_string(&args.input)
            .map_err(|e| CliError::Fail(format!("cannot read {}: {e}", args.input)))?;
        (text, args.input.clone())
    };
    let ds = csv::parse_dataset(&text, &source).map_err(|e| CliError::Fail(e.to_string()))?;

    let total = ds.len();
    let filtered = ds.filter(|s| {
        args.env.map_or(true, |e| s.environment == e)
            && args.scenario.as_ref().map_or(true, |sc| &s.scenario == sc)
            && (args.freq.is_empty() || args.freq.iter().any(|&f| s.freq.ghz() == f))
    });
    if filtered.is_empty() {
        return Err(CliError::Fail(format!(
            "no samples left after filtering ({total} read from {source})"
        )));
    }
    Ok(filtered)
}

fn deliver(out: &OutArgs, content: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Fail(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Fail(format!("cannot write to standard output: {e}")))
        }
    }
}

/// `PLM_COLOR={auto|never|always}`; `auto` styles only a terminal.
fn use_color(out: &OutArgs) -> bool {
    match std::env::var("PLM_COLOR").as_deref() {
        Ok("always") => true,
        Ok("never") => false,
        _ => out.output.is_none() && io::stdout().is_terminal(),
    }
}

fn fit_one(samples: &[PathLossSample], kind: ModelKind, f0: F0Mode) -> Result<FitResult, CliError> {
    let res = match kind {
        ModelKind::Fi => fit_fi(samples),
        ModelKind::Ci => fit_ci(samples),
        ModelKind::Abg => fit_abg(samples),
        ModelKind::Cif => fit_cif(samples, f0),
    };
    res.map_err(|e| CliError::Fail(format!("cannot fit {}: {e}", kind.token())))
}

fn build_report(
    ds: &Dataset,
    models: &[ModelKind],
    f0: F0Mode,
) -> Result<ComparisonReport, CliError> {
    compare_models(ds, models, f0).map_err(|e| CliError::Fail(e.to_string()))
}

fn run_fit(a: FitArgs) -> Result<(), CliError> {
    let ds = load_input(&a.input)?;
    let f0 = a.f0.mode()?;
    match a.model {
        ModelChoice::One(kind) => {
            if a.format != OutFormat::Json {
                return Err(CliError::Usage(
                    "a single-model fit emits JSON only; --format table needs --model all".into(),
                ));
            }
            let fit = fit_one(&ds.samples, kind, f0)?;
            deliver(&a.out, &json::fit_json(&fit, a.residuals))
        }
        ModelChoice::All => {
            let report = build_report(&ds, &ModelKind::ALL, f0)?;
            let content = match a.format {
                OutFormat::Json => json::report_json(&report, a.residuals),
                OutFormat::Table => table::comparison_table(&report, use_color(&a.out)),
                OutFormat::Csv => {
                    return Err(CliError::Usage(
                        "compare output supports json or table, not csv".into(),
                    ))
                }
            };
            deliver(&a.out, &content)
        }
    }
}

fn run_eval(a: EvalArgs) -> Result<(), CliError> {
    let f0 = a.f0_ghz.map(freq_ghz).transpose()?;
    let params = a.params.bind(a.model, f0)?;
    let freq = freq_ghz(a.freq)?;
    let dist = DistanceM::new(a.dist).map_err(|e| CliError::Fail(e.to_string()))?;
    let pl = params.path_loss_db(freq, dist);
    deliver(&a.out, &json::eval_json(&params, freq, dist.meters(), pl))
}

fn run_gen(a: GenArgs) -> Result<(), CliError> {
    let mut plan = Vec::with_capacity(a.freq.len());
    for &f in &a.freq {
        plan.push((freq_ghz(f)?, a.count));
    }
    let f0 = match a.model {
        ModelKind::Cif => Some(match a.f0.mode()? {
            F0Mode::Explicit(f) => f,
            F0Mode::Auto => compute_f0(&plan).map_err(|e| CliError::Fail(e.to_string()))?,
        }),
        _ if a.f0.is_explicit() => {
            return Err(CliError::Usage(format!(
                "a reference frequency applies to --model cif, not --model {}",
                a.model.token()
            )))
        }
        _ => None,
    };
    let spec = GenSpec {
        model: a.params.bind(a.model, f0)?,
        freq_plan: plan,
        dist_range_m: (a.dmin, a.dmax),
        sigma_db: a.sigma,
        seed: a.seed,
        scenario: a.scenario,
        environment: a.env,
    };
    let ds = generate_synthetic(&spec).map_err(|e| CliError::Fail(e.to_string()))?;
    let content = csv::write_dataset(&ds).map_err(|e| CliError::Fail(e.to_string()))?;
    deliver(&a.out, &content)
}

fn run_compare(a: CompareArgs) -> Result<(), CliError> {
    let ds = load_input(&a.input)?;
    let f0 = a.f0.mode()?;
    let models: Vec<ModelKind> = if a.model.contains(&ModelChoice::All) {
        ModelKind::ALL.to_vec()
    } else {
        a.model
            .iter()
            .map(|m| match m {
                ModelChoice::One(k) => *k,
                ModelChoice::All => unreachable!(),
            })
            .collect()
    };
    let report = build_report(&ds, &models, f0)?;
    let content = match a.format {
        OutFormat::Json => json::report_json(&report, a.residuals),
        OutFormat::Table => table::comparison_table(&report, use_color(&a.out)),
        OutFormat::Csv => {
            return Err(CliError::Usage(
                "compare output supports json or table, not csv".into(),
            ))
        }
    };
    deliver(&a.out, &content)
}

fn run_range(a: RangeArgs) -> Result<(), CliError> {
    let f0 = a.f0_ghz.map(freq_ghz).transpose()?;
    let params = a.params.bind(a.model, f0)?;
    let freq = freq_ghz(a.freq)?;
    let query = RangeQuery {
        model: params,
        freq,
        max_path_loss_db: a.max_pl,
    };
    let dist = max_range(&query).map_err(|e| CliError::Fail(e.to_string()))?;
    deliver(
        &a.out,
        &json::range_json(&query.model, freq, a.max_pl, dist.meters()),
    )
}

fn run_plot(a: PlotArgs) -> Result<(), CliError> {
    let ds = load_input(&a.input)?;
    let f0 = a.f0.mode()?;

    let none = a.model.contains(&PlotChoice::None);
    if none && a.model.len() > 1 {
        return Err(CliError::Usage(
            "--model none cannot be combined with other models".into(),
        ));
    }
    let requested: Vec<ModelKind> = if none {
        Vec::new()
    } else if a.model.contains(&PlotChoice::All) {
        ModelKind::ALL.to_vec()
    } else {
        a.model
            .iter()
            .filter_map(|m| match m {
                PlotChoice::One(k) => Some(*k),
                _ => None,
            })
            .collect()
    };

    // draw the models that fit; report the ones that do not on stderr rather
    // than failing the whole plot
    let mut fits = Vec::new();
    for kind in ModelKind::ALL {
        if !requested.contains(&kind) {
            continue;
        }
        match fit_one(&ds.samples, kind, f0) {
            Ok(fit) => fits.push(fit),
            Err(CliError::Fail(msg)) => eprintln!("note: {msg}; line omitted"),
            Err(usage) => return Err(usage),
        }
    }

    let style = plot::PlotStyle {
        width: a.width,
        height: a.height,
        title: a.title.clone(),
    };
    let svg = plot::emit_plot(&ds, &fits, &style).map_err(|e| CliError::Fail(e.to_string()))?;
    deliver(&a.out, &svg)
}

fn run_registry(a: RegistryArgs) -> Result<(), CliError> {
    let entries: Vec<_> = reference_entries()
        .into_iter()
        .filter(|e| {
            a.scenario.as_ref().map_or(true, |s| &e.scenario == s)
                && a.env.map_or(true, |v| e.environment == v)
                && a.model.map_or(true, |m| e.model == m)
        })
        .collect();
    let content = match a.format {
        OutFormat::Table => table::registry_table(&entries, use_color(&a.out)),
        OutFormat::Csv => csv::write_registry(&entries),
        OutFormat::Json => json::registry_json(&entries),
    };
    deliver(&a.out, &content)
}
