//! Link-budget range inversion: the largest distance at which a model's
//! predicted path loss stays within an allowed maximum.
//!
//! Every model here is a straight line in log-distance at a fixed frequency,
//! so the inversion is closed-form: `d = 10^((PLmax − intercept)/(10·slope))`.

use thiserror::Error;

use crate::math;
use crate::models::ModelParams;
use crate::units::{DistanceM, FrequencyGhz};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RangeError {
    #[error("maximum path loss must be finite and > 0 dB, got {0}")]
    BadMaxPathLoss(f64),
    #[error("model's distance slope at this frequency is {slope}; a non-increasing path loss has no maximum range")]
    NonPositiveSlope { slope: f64 },
    #[error("maximum path loss {max_path_loss_db} dB is below the model's {intercept_db} dB at the 1 m reference distance")]
    BelowAnchor {
        max_path_loss_db: f64,
        intercept_db: f64,
    },
    #[error("allowed path loss is so far above the model that the range overflows")]
    Unrepresentable,
}

/// A link-budget question: how far can this model go before exceeding
/// `max_path_loss_db`?
#[derive(Debug, Clone, PartialEq)]
pub struct RangeQuery {
    pub model: ModelParams,
    pub freq: FrequencyGhz,
    pub max_path_loss_db: f64,
}

/// Solves the query: the unique `d >= 1 m` with
/// `model(freq, d) = max_path_loss_db`.
pub fn max_range(q: &RangeQuery) -> Result<DistanceM, RangeError> {
    if !q.max_path_loss_db.is_finite() || q.max_path_loss_db <= 0.0 {
        return Err(RangeError::BadMaxPathLoss(q.max_path_loss_db));
    }
    let slope = q.model.distance_slope(q.freq);
    if slope <= 0.0 {
        return Err(RangeError::NonPositiveSlope { slope });
    }
    let intercept_db = q.model.intercept_db(q.freq);
    if q.max_path_loss_db < intercept_db {
        return Err(RangeError::BelowAnchor {
            max_path_loss_db: q.max_path_loss_db,
            intercept_db,
        });
    }
    let d = math::exp10((q.max_path_loss_db - intercept_db) / (10.0 * slope));
    if !d.is_finite() {
        return Err(RangeError::Unrepresentable);
    }
    DistanceM::new(d).map_err(|_| RangeError::Unrepresentable)
}
