//! Measurement data model: individual path loss samples and ordered,
//! filterable collections of them.
//!
//! Validation happens once, at construction — a `PathLossSample` that exists
//! is a valid one, so downstream fitting code never re-checks bounds.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::units::{DistanceM, DomainError, Environment, FrequencyGhz, Scenario};

/// One path loss measurement: where, under what sight condition, at which
/// frequency and distance, and how many dB were lost.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLossSample {
    pub scenario: Scenario,
    pub environment: Environment,
    pub freq: FrequencyGhz,
    pub dist: DistanceM,
    /// Measured path loss in dB; strictly positive for a passive channel.
    pub path_loss_db: f64,
}

impl PathLossSample {
    pub fn new(
        scenario: Scenario,
        environment: Environment,
        freq: FrequencyGhz,
        dist: DistanceM,
        path_loss_db: f64,
    ) -> Result<Self, DomainError> {
        if !path_loss_db.is_finite() || path_loss_db <= 0.0 {
            return Err(DomainError::PathLossOutOfRange(path_loss_db));
        }
        Ok(PathLossSample {
            scenario,
            environment,
            freq,
            dist,
            path_loss_db,
        })
    }
}

/// An ordered collection of validated samples plus provenance.
///
/// Order is preserved from ingestion or generation; filtering produces a new
/// `Dataset` and never reorders.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub samples: Vec<PathLossSample>,
    /// Where the data came from (file path, "synthetic", ...).
    pub source: String,
    /// Free-form annotations; generators record their algorithm identifiers
    /// here.
    pub metadata: BTreeMap<String, String>,
}

impl Dataset {
    pub fn new(samples: Vec<PathLossSample>, source: &str) -> Dataset {
        Dataset {
            samples,
            source: String::from(source),
            metadata: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Samples satisfying the predicate, in their original order. Source and
    /// metadata carry over; an empty result is legal.
    pub fn filter(&self, pred: impl Fn(&PathLossSample) -> bool) -> Dataset {
        Dataset {
            samples: self.samples.iter().filter(|s| pred(s)).cloned().collect(),
            source: self.source.clone(),
            metadata: self.metadata.clone(),
        }
    }

    /// Distinct frequencies present, ascending. Empty for an empty dataset.
    pub fn unique_frequencies(&self) -> Vec<FrequencyGhz> {
        unique_frequencies(&self.samples)
    }

    /// Distinct frequencies with their sample counts, ascending by frequency.
    pub fn frequency_counts(&self) -> Vec<(FrequencyGhz, usize)> {
        frequency_counts(&self.samples)
    }

    /// Smallest and largest distance present, meters.
    pub fn distance_range_m(&self) -> Option<(f64, f64)> {
        let mut iter = self.samples.iter().map(|s| s.dist.meters());
        let first = iter.next()?;
        let mut lo = first;
        let mut hi = first;
        for d in iter {
            if d < lo {
                lo = d;
            }
            if d > hi {
                hi = d;
            }
        }
        Some((lo, hi))
    }
}

pub(crate) fn unique_frequencies(samples: &[PathLossSample]) -> Vec<FrequencyGhz> {
    let mut freqs: Vec<f64> = samples.iter().map(|s| s.freq.ghz()).collect();
    freqs.sort_by(f64::total_cmp);
    freqs.dedup();
    freqs
        .into_iter()
        .map(FrequencyGhz::from_ghz_unchecked)
        .collect()
}

pub(crate) fn frequency_counts(samples: &[PathLossSample]) -> Vec<(FrequencyGhz, usize)> {
    unique_frequencies(samples)
        .into_iter()
        .map(|f| {
            let count = samples.iter().filter(|s| s.freq == f).count();
            (f, count)
        })
        .collect()
}
