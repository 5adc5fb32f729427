//! Domain quantities and tags shared by every model.
//!
//! `FrequencyGhz` and `DistanceM` are validated newtypes: all model equations
//! here are defined for `f >= 1 GHz` and `d >= 1 m`, so the bounds are checked
//! once at construction and the evaluation functions stay infallible.

use alloc::string::String;
use core::fmt;

use thiserror::Error;

/// Validation failure for a domain quantity.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("frequency must be finite and >= 1 GHz, got {0} GHz")]
    FrequencyOutOfRange(f64),
    #[error("distance must be finite and >= 1 m, got {0} m")]
    DistanceOutOfRange(f64),
    #[error("path loss must be finite and > 0 dB, got {0} dB")]
    PathLossOutOfRange(f64),
    #[error("model parameter `{name}` must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },
    #[error("scenario label must be nonempty")]
    EmptyScenarioLabel,
    #[error("frequency plan must be nonempty")]
    EmptyFrequencyPlan,
    #[error("sample count per frequency must be >= 1")]
    ZeroSampleCount,
}

/// Carrier frequency in gigahertz, `>= 1 GHz`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FrequencyGhz(f64);

impl FrequencyGhz {
    pub fn new(ghz: f64) -> Result<Self, DomainError> {
        if ghz.is_finite() && ghz >= 1.0 {
            Ok(FrequencyGhz(ghz))
        } else {
            Err(DomainError::FrequencyOutOfRange(ghz))
        }
    }

    /// Registry entries are baked in at compile time with known-good values.
    pub(crate) const fn from_ghz_unchecked(ghz: f64) -> Self {
        FrequencyGhz(ghz)
    }

    #[inline]
    pub fn ghz(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn hz(self) -> f64 {
        self.0 * 1e9
    }
}

impl fmt::Display for FrequencyGhz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} GHz", self.0)
    }
}

/// Three-dimensional transmitter-receiver separation in meters, `>= 1 m`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DistanceM(f64);

impl DistanceM {
    pub fn new(meters: f64) -> Result<Self, DomainError> {
        if meters.is_finite() && meters >= 1.0 {
            Ok(DistanceM(meters))
        } else {
            Err(DomainError::DistanceOutOfRange(meters))
        }
    }

    #[inline]
    pub fn meters(self) -> f64 {
        self.0
    }
}

impl fmt::Display for DistanceM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} m", self.0)
    }
}

/// Line-of-sight condition of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Environment {
    Los,
    Nlos,
}

impl Environment {
    /// Canonical machine token, as used in CSV files and CLI flags.
    pub fn token(self) -> &'static str {
        match self {
            Environment::Los => "los",
            Environment::Nlos => "nlos",
        }
    }

    pub fn parse_token(s: &str) -> Option<Environment> {
        match s {
            "los" => Some(Environment::Los),
            "nlos" => Some(Environment::Nlos),
            _ => None,
        }
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Measurement scenario tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scenario {
    /// Urban micro-cellular street canyon.
    UmiStreetCanyon,
    /// Indoor office.
    IndoorOffice,
    /// Any other scenario, carrying a nonempty label.
    Other(String),
}

impl Scenario {
    /// Builds an `Other` scenario, rejecting empty labels.
    pub fn other(label: &str) -> Result<Scenario, DomainError> {
        if label.is_empty() {
            Err(DomainError::EmptyScenarioLabel)
        } else {
            Ok(Scenario::Other(String::from(label)))
        }
    }

    /// Canonical machine token: `umi_sc`, `indoor_office` or `other:<label>`.
    pub fn token(&self) -> String {
        match self {
            Scenario::UmiStreetCanyon => String::from("umi_sc"),
            Scenario::IndoorOffice => String::from("indoor_office"),
            Scenario::Other(label) => {
                let mut s = String::from("other:");
                s.push_str(label);
                s
            }
        }
    }

    pub fn parse_token(s: &str) -> Result<Scenario, DomainError> {
        match s {
            "umi_sc" => Ok(Scenario::UmiStreetCanyon),
            "indoor_office" => Ok(Scenario::IndoorOffice),
            _ => match s.strip_prefix("other:") {
                Some(label) => Scenario::other(label),
                None => Err(DomainError::EmptyScenarioLabel),
            },
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_bounds() {
        assert!(FrequencyGhz::new(1.0).is_ok());
        assert!(FrequencyGhz::new(73.5).is_ok());
        assert!(FrequencyGhz::new(0.9).is_err());
        assert!(FrequencyGhz::new(f64::NAN).is_err());
        assert!(FrequencyGhz::new(f64::INFINITY).is_err());
    }

    #[test]
    fn distance_bounds() {
        assert!(DistanceM::new(1.0).is_ok());
        assert!(DistanceM::new(0.5).is_err());
        assert!(DistanceM::new(f64::NAN).is_err());
    }

    #[test]
    fn hz_conversion() {
        let f = FrequencyGhz::new(28.0).unwrap();
        assert_eq!(f.hz(), 28.0e9);
    }

    #[test]
    fn scenario_tokens_round_trip() {
        for s in [
            Scenario::UmiStreetCanyon,
            Scenario::IndoorOffice,
            Scenario::other("lab-corridor").unwrap(),
        ] {
            assert_eq!(Scenario::parse_token(&s.token()).unwrap(), s);
        }
        assert!(Scenario::other("").is_err());
        assert!(Scenario::parse_token("other:").is_err());
        assert!(Scenario::parse_token("umi").is_err());
    }

    #[test]
    fn environment_tokens() {
        assert_eq!(Environment::parse_token("los"), Some(Environment::Los));
        assert_eq!(Environment::parse_token("nlos"), Some(Environment::Nlos));
        assert_eq!(Environment::parse_token("LOS"), None);
    }
}
