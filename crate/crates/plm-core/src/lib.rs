//! Large-scale path loss models for millimeter-wave links.
//!
//! This crate implements the five single-slope path loss models commonly used
//! for 5G propagation analysis at mmWave frequencies:
//!
//! - **FI** — floating-intercept line fit of path loss over log-distance
//! - **CI** — close-in free space reference distance model, anchored to the
//!   1 m free space path loss
//! - **ABG** — alpha-beta-gamma fit over log-distance and log-frequency
//! - **CIF** — CI with a frequency-weighted path loss exponent
//!
//! plus the free space path loss anchor itself. On top of the model math it
//! provides closed-form least-squares estimators that minimize the shadow
//! fading standard deviation, a brute-force grid-search oracle for verifying
//! them, a seeded synthetic measurement generator with log-normal shadowing,
//! multi-model comparison reports, link-budget range inversion, and a bundled
//! registry of published reference fits for urban street-canyon and indoor
//! office campaigns at 28 and 73 GHz.
//!
//! The crate is `no_std` (with `alloc`) and uses `libm` for all transcendental
//! math, so results are bit-identical across platforms. File formats, plotting
//! and the command-line front end live in the companion `plm` crate.

#![no_std]

extern crate alloc;

mod math;

pub mod dataset;
pub mod fit;
pub mod models;
pub mod oracle;
pub mod range;
pub mod registry;
pub mod report;
pub mod synth;
pub mod units;

pub use dataset::{Dataset, PathLossSample};
pub use fit::{fit_abg, fit_ci, fit_cif, fit_fi, residual_stats, F0Mode, FitError, FitResult};
pub use models::{
    compute_f0, eval_abg, eval_ci, eval_cif, eval_fi, fspl_1m, AbgParams, CiParams, CifParams,
    FiParams, ModelKind, ModelParams,
};
pub use oracle::{grid_oracle_fit, GridAxis, GridSearchResult, OracleError};
pub use range::{max_range, RangeError, RangeQuery};
pub use registry::{reference_entries, reference_lookup, FreqKey, ReferenceEntry};
pub use report::{
    compare_models, ComparisonReport, DatasetSummary, ModelEntry, ModelOutcome, RegistryDelta,
    ReportError,
};
pub use synth::{generate_synthetic, GenError, GenSpec};
pub use units::{DistanceM, DomainError, Environment, FrequencyGhz, Scenario};
