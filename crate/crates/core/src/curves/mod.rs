//! Explicit curve models over F_q and exhaustive point counting over F_{q^k}.
//!
//! Points at infinity follow the smooth-model conventions:
//!
//! * hyperelliptic `y^2 + h(x) y = f(x)` of genus g: the points above x = oo
//!   are the solutions v of `v^2 + h_{g+1} v = f_{2g+2}` (leading
//!   coefficients in degrees g+1 and 2g+2). For `h = 0` in odd
//!   characteristic that is 1 point when deg f is odd and 2 or 0 when it is
//!   even, according as the leading coefficient is a square;
//! * plane curves: the projective zeros on the line z = 0;
//! * Artin-Schreier-like models: a caller-declared count per extension.

mod count;
mod model;
mod validate;

pub use count::{count_points, count_points_with, count_profile, count_profile_with, CountOptions};
pub use model::{
    element_from_json, element_to_json, Curve, CurveModel, InfinityCounts, PlaneTerm,
};
pub use validate::{validate_model, validate_model_with, ValidationReport, DEFAULT_SMOOTHNESS_DEPTH};

use serde::{Deserialize, Serialize};

/// Enumeration budget: at most this many field elements per axis.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// N_1, .., N_m over F_q, F_{q^2}, ...
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCounts {
    pub q: i64,
    pub counts: Vec<i64>,
}

impl PointCounts {
    pub fn n(&self, k: usize) -> Option<i64> {
        k.checked_sub(1).and_then(|i| self.counts.get(i)).copied()
    }
}
