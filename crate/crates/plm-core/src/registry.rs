//! Built-in registry of reference fit results for the urban street-canyon and
//! indoor-office measurement campaigns at 28 and 73 GHz.
//!
//! The single-frequency table stores the band label used there (73 GHz); the
//! multi-frequency table stores the band center 73.5 GHz. Each is kept
//! verbatim, and free-space anchors are always computed from the stored value.

use alloc::vec::Vec;

use crate::models::{AbgParams, CiParams, CifParams, FiParams, ModelKind, ModelParams};
use crate::units::{Environment, FrequencyGhz, Scenario};

/// One reference row: fitted parameters for a (scenario, environment,
/// frequency set, model) combination, with the shadow-fading spread and the
/// distance range the fit covered.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceEntry {
    pub scenario: Scenario,
    pub environment: Environment,
    /// Frequencies the fit pooled, ascending.
    pub frequencies: Vec<FrequencyGhz>,
    /// Distance window of the underlying measurements, meters.
    pub distance_range_m: (f64, f64),
    pub model: ModelKind,
    pub params: ModelParams,
    /// Shadow-fading standard deviation of the fit, dB.
    pub sigma_db: f64,
    /// Caveats attached to the row, if any.
    pub note: Option<&'static str>,
}

/// Frequency selector for [`reference_lookup`].
#[derive(Debug, Clone, PartialEq)]
pub enum FreqKey {
    /// Exactly one frequency, matched by exact value.
    Single(FrequencyGhz),
    /// A multi-frequency set, matched by exact values ignoring order.
    Multi(Vec<FrequencyGhz>),
}

impl FreqKey {
    fn matches(&self, freqs: &[FrequencyGhz]) -> bool {
        match self {
            FreqKey::Single(f) => freqs.len() == 1 && freqs[0] == *f,
            FreqKey::Multi(set) => {
                if freqs.len() != set.len() || set.len() < 2 {
                    return false;
                }
                // sets here are tiny; quadratic membership is fine
                set.iter().all(|f| freqs.contains(f)) && freqs.iter().all(|f| set.contains(f))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// The table itself
// ---------------------------------------------------------------------------

/// The CIF rows' reference frequency is not part of the tabulated fits; 51 GHz
/// is derived by equal-count weighting of 28 and 73.5 GHz.
pub const CIF_F0_NOTE: &str =
    "f0 = 51 GHz is a derived annotation (equal-count weighted mean of the band frequencies), not a tabulated value";

#[derive(Clone, Copy)]
enum Sc {
    UmiSc,
    Indoor,
}

#[derive(Clone, Copy)]
enum RowParams {
    Fi { alpha: f64, beta: f64 },
    Ci { n: f64 },
    Abg { alpha: f64, beta: f64, gamma: f64 },
    Cif { n: f64, b: f64 },
}

struct Row {
    scenario: Sc,
    env: Environment,
    freqs: &'static [f64],
    dist: (f64, f64),
    params: RowParams,
    sigma: f64,
}

const F28: &[f64] = &[28.0];
const F73: &[f64] = &[73.0];
const F_MULTI: &[f64] = &[28.0, 73.5];

/// Reference frequency attached to the CIF rows; see [`CIF_F0_NOTE`].
const CIF_F0_GHZ: f64 = 51.0;

#[rustfmt::skip]
const ROWS: &[Row] = &[
    // single-frequency FI and CI fits
    Row { scenario: Sc::UmiSc,  env: Environment::Los,  freqs: F28, dist: (31.0, 54.0),   params: RowParams::Fi { alpha: 3.9,  beta: 31.8  }, sigma: 2.9 },
    Row { scenario: Sc::UmiSc,  env: Environment::Los,  freqs: F28, dist: (31.0, 54.0),   params: RowParams::Ci { n: 2.1 },                   sigma: 3.5 },
    Row { scenario: Sc::UmiSc,  env: Environment::Los,  freqs: F73, dist: (27.0, 54.0),   params: RowParams::Fi { alpha: -0.8, beta: 115.6 }, sigma: 3.9 },
    Row { scenario: Sc::UmiSc,  env: Environment::Los,  freqs: F73, dist: (27.0, 54.0),   params: RowParams::Ci { n: 2.0 },                   sigma: 4.9 },
    Row { scenario: Sc::UmiSc,  env: Environment::Nlos, freqs: F28, dist: (61.0, 186.0),  params: RowParams::Fi { alpha: 2.5,  beta: 80.6  }, sigma: 9.7 },
    Row { scenario: Sc::UmiSc,  env: Environment::Nlos, freqs: F28, dist: (61.0, 186.0),  params: RowParams::Ci { n: 3.4 },                   sigma: 9.7 },
    Row { scenario: Sc::UmiSc,  env: Environment::Nlos, freqs: F73, dist: (48.0, 190.0),  params: RowParams::Fi { alpha: 2.9,  beta: 80.6  }, sigma: 7.8 },
    Row { scenario: Sc::UmiSc,  env: Environment::Nlos, freqs: F73, dist: (48.0, 190.0),  params: RowParams::Ci { n: 3.4 },                   sigma: 7.9 },
    Row { scenario: Sc::Indoor, env: Environment::Los,  freqs: F28, dist: (4.1, 21.3),    params: RowParams::Fi { alpha: 1.2,  beta: 60.4  }, sigma: 1.8 },
    Row { scenario: Sc::Indoor, env: Environment::Los,  freqs: F28, dist: (4.1, 21.3),    params: RowParams::Ci { n: 1.1 },                   sigma: 1.8 },
    Row { scenario: Sc::Indoor, env: Environment::Los,  freqs: F73, dist: (4.1, 21.3),    params: RowParams::Fi { alpha: 0.5,  beta: 77.9  }, sigma: 1.4 },
    Row { scenario: Sc::Indoor, env: Environment::Los,  freqs: F73, dist: (4.1, 21.3),    params: RowParams::Ci { n: 1.3 },                   sigma: 2.4 },
    Row { scenario: Sc::Indoor, env: Environment::Nlos, freqs: F28, dist: (3.9, 45.9),    params: RowParams::Fi { alpha: 3.5,  beta: 51.3  }, sigma: 9.3 },
    Row { scenario: Sc::Indoor, env: Environment::Nlos, freqs: F28, dist: (3.9, 45.9),    params: RowParams::Ci { n: 2.7 },                   sigma: 9.6 },
    Row { scenario: Sc::Indoor, env: Environment::Nlos, freqs: F73, dist: (3.9, 41.9),    params: RowParams::Fi { alpha: 2.7,  beta: 76.3  }, sigma: 11.2 },
    Row { scenario: Sc::Indoor, env: Environment::Nlos, freqs: F73, dist: (3.9, 41.9),    params: RowParams::Ci { n: 3.2 },                   sigma: 11.3 },
    // multi-frequency ABG, CI, and CIF fits over {28, 73.5} GHz
    Row { scenario: Sc::UmiSc,  env: Environment::Los,  freqs: F_MULTI, dist: (27.0, 54.0),  params: RowParams::Abg { alpha: 1.0, beta: 55.0, gamma: 1.7 }, sigma: 4.3 },
    Row { scenario: Sc::UmiSc,  env: Environment::Los,  freqs: F_MULTI, dist: (27.0, 54.0),  params: RowParams::Ci { n: 2.0 },                              sigma: 4.5 },
    Row { scenario: Sc::UmiSc,  env: Environment::Los,  freqs: F_MULTI, dist: (27.0, 54.0),  params: RowParams::Cif { n: 2.0, b: -0.06 },                   sigma: 4.4 },
    Row { scenario: Sc::UmiSc,  env: Environment::Nlos, freqs: F_MULTI, dist: (48.0, 190.0), params: RowParams::Abg { alpha: 2.8, beta: 46.7, gamma: 1.9 }, sigma: 8.4 },
    Row { scenario: Sc::UmiSc,  env: Environment::Nlos, freqs: F_MULTI, dist: (48.0, 190.0), params: RowParams::Ci { n: 3.4 },                              sigma: 8.4 },
    Row { scenario: Sc::UmiSc,  env: Environment::Nlos, freqs: F_MULTI, dist: (48.0, 190.0), params: RowParams::Cif { n: 3.4, b: -0.00 },                   sigma: 8.4 },
    Row { scenario: Sc::Indoor, env: Environment::Los,  freqs: F_MULTI, dist: (4.1, 21.3),   params: RowParams::Abg { alpha: 0.9, beta: 26.8, gamma: 2.6 }, sigma: 1.8 },
    Row { scenario: Sc::Indoor, env: Environment::Los,  freqs: F_MULTI, dist: (4.1, 21.3),   params: RowParams::Ci { n: 1.2 },                              sigma: 2.3 },
    Row { scenario: Sc::Indoor, env: Environment::Los,  freqs: F_MULTI, dist: (4.1, 21.3),   params: RowParams::Cif { n: 1.2, b: 0.18 },                    sigma: 2.1 },
    Row { scenario: Sc::Indoor, env: Environment::Nlos, freqs: F_MULTI, dist: (3.9, 45.9),   params: RowParams::Abg { alpha: 3.1, beta: 1.3, gamma: 3.8 },  sigma: 10.3 },
    Row { scenario: Sc::Indoor, env: Environment::Nlos, freqs: F_MULTI, dist: (3.9, 45.9),   params: RowParams::Ci { n: 2.9 },                              sigma: 10.9 },
    Row { scenario: Sc::Indoor, env: Environment::Nlos, freqs: F_MULTI, dist: (3.9, 45.9),   params: RowParams::Cif { n: 3.0, b: 0.21 },                    sigma: 10.4 },
];

fn build_entry(row: &Row) -> ReferenceEntry {
    let scenario = match row.scenario {
        Sc::UmiSc => Scenario::UmiStreetCanyon,
        Sc::Indoor => Scenario::IndoorOffice,
    };
    let frequencies: Vec<FrequencyGhz> = row
        .freqs
        .iter()
        .map(|&g| FrequencyGhz::from_ghz_unchecked(g))
        .collect();
    let (params, note) = match row.params {
        RowParams::Fi { alpha, beta } => (
            ModelParams::Fi(FiParams {
                alpha,
                beta_db: beta,
            }),
            None,
        ),
        RowParams::Ci { n } => (ModelParams::Ci(CiParams { n }), None),
        RowParams::Abg { alpha, beta, gamma } => (
            ModelParams::Abg(AbgParams {
                alpha,
                beta_db: beta,
                gamma,
            }),
            None,
        ),
        RowParams::Cif { n, b } => (
            ModelParams::Cif(CifParams {
                n,
                b,
                f0: FrequencyGhz::from_ghz_unchecked(CIF_F0_GHZ),
            }),
            Some(CIF_F0_NOTE),
        ),
    };
    ReferenceEntry {
        scenario,
        environment: row.env,
        frequencies,
        distance_range_m: row.dist,
        model: params.kind(),
        params,
        sigma_db: row.sigma,
        note,
    }
}

/// All reference rows, in table order (single-frequency rows first).
pub fn reference_entries() -> Vec<ReferenceEntry> {
    ROWS.iter().map(build_entry).collect()
}

/// Finds the reference row for a (scenario, environment, frequency set,
/// model) combination. `None` means the combination was not measured — that
/// is an answer, not a fault.
pub fn reference_lookup(
    scenario: &Scenario,
    environment: Environment,
    freq: &FreqKey,
    model: ModelKind,
) -> Option<ReferenceEntry> {
    ROWS.iter().map(build_entry).find(|e| {
        e.scenario == *scenario
            && e.environment == environment
            && e.model == model
            && freq.matches(&e.frequencies)
    })
}
