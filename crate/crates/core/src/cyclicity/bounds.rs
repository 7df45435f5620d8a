//! Closed-form bound values and the [`BoundCheck`] record.
//!
//! Everything here is a function of integer graph invariants (order, size,
//! degrees); the resistance-dependent side lives in [`super::Analysis`].

use serde::{Deserialize, Serialize};

/// Default tightness tolerance for bound checks. Looser than the solver
/// tolerance because sums over `m` edges accumulate rounding.
pub const DEFAULT_BOUND_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// One evaluated inequality instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub kind: BoundKind,
    pub bound: f64,
    pub actual: f64,
    /// `actual - bound` for lower bounds, `bound - actual` for upper bounds.
    pub slack: f64,
    pub tight: bool,
    /// Whether the known equality characterization predicts tightness.
    #[serde(skip)]
    pub equality_expected: bool,
    /// Strict inequalities never report `tight`.
    #[serde(skip)]
    pub strict: bool,
    #[serde(skip)]
    pub tolerance: f64,
}

impl BoundCheck {
    pub fn new(
        name: &str,
        kind: BoundKind,
        bound: f64,
        actual: f64,
        tolerance: f64,
        equality_expected: bool,
    ) -> Self {
        let slack = match kind {
            BoundKind::Lower => actual - bound,
            BoundKind::Upper => bound - actual,
        };
        Self {
            name: name.to_owned(),
            kind,
            bound,
            actual,
            slack,
            tight: slack.abs() <= tolerance,
            equality_expected,
            strict: false,
            tolerance,
        }
    }

    /// A strict inequality: same slack convention, `tight` suppressed.
    pub fn strict(name: &str, kind: BoundKind, bound: f64, actual: f64, tolerance: f64) -> Self {
        Self {
            tight: false,
            strict: true,
            ..Self::new(name, kind, bound, actual, tolerance, false)
        }
    }

    pub fn holds(&self) -> bool {
        self.slack >= -self.tolerance
    }

    /// Tightness disagrees with the equality characterization.
    pub fn equality_mismatch(&self) -> bool {
        !self.strict && self.tight != self.equality_expected
    }
}

/// `(d_u - 1)(d_v - 1) / (d_u + d_v - 2)`, the harmonic per-edge term of the
/// degree bound, taken as 0 when either endpoint is a leaf.
pub fn degree_term(du: usize, dv: usize) -> f64 {
    if du <= 1 || dv <= 1 {
        return 0.0;
    }
    let (a, b) = ((du - 1) as f64, (dv - 1) as f64);
    a * b / (a + b)
}

/// Lower bound `(d_u + d_v - 2) / (d_u d_v - 1)` on the resistance across an
/// edge; `None` when `d_u d_v <= 1`.
pub fn adjacent_resistance_lower(du: usize, dv: usize) -> Option<f64> {
    let prod = du * dv;
    (prod > 1).then(|| (du + dv - 2) as f64 / (prod - 1) as f64)
}

/// `m (m - n + 1) / (n - 1)`.
pub fn majorization_lower_value(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    m * (m - n + 1.0) / (n - 1.0)
}

/// Fractional part of `(n² - n - 2m) / (n - 2)`, computed in integers.
pub fn epsilon(n: usize, m: usize) -> f64 {
    let num = (n * n - n) as i64 - 2 * m as i64;
    let den = n as i64 - 2;
    num.rem_euclid(den) as f64 / den as f64
}

/// `n / ((n-2) ε + 2) + (m n - n² + (n-2) ε) / 2`.
pub fn majorization_upper_value(n: usize, m: usize) -> f64 {
    let eps = epsilon(n, m);
    let (nf, mf) = (n as f64, m as f64);
    nf / ((nf - 2.0) * eps + 2.0) + (mf * nf - nf * nf + (nf - 2.0) * eps) / 2.0
}

/// `n (m - n + 1) / 2`.
pub fn simple_upper_value(n: usize, m: usize) -> f64 {
    n as f64 * (m as f64 - n as f64 + 1.0) / 2.0
}

/// `n (n-1) (n-2) / 4`, the value for `K_n`.
pub fn complete_cyclicity(n: usize) -> f64 {
    let n = n as f64;
    n * (n - 1.0) * (n - 2.0) / 4.0
}

/// `n/(n-1)`, the value for `C_n`.
pub fn cycle_cyclicity(n: usize) -> f64 {
    n as f64 / (n as f64 - 1.0)
}

/// `n1 n2 (n1 n2 - n1 - n2 + 1) / (n1 + n2 - 1)`, the value for `K_{n1,n2}`.
pub fn complete_bipartite_cyclicity(n1: usize, n2: usize) -> f64 {
    let (a, b) = (n1 as f64, n2 as f64);
    a * b * (a * b - a - b + 1.0) / (a + b - 1.0)
}
