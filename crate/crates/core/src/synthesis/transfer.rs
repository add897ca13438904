//! Approximate state-to-state transfer through the pivot `α·e₀`.
//!
//! Both states are cut to a window `[-N, N]`. The inverse of the staircase
//! for the normalized cut of `a` sends it to `α·e₀`; the staircase for the
//! normalized cut of `b` then sends `α·e₀` to `(α/β)·b_N`. The result is
//! within `2ε + |1 - α/β|` of `b` whenever both discarded tails have norm
//! below `ε`.

use num_complex::Complex64;

use crate::error::{ControlError, Result};
use crate::group::ControlSequence;
use crate::state::SparseState;

use super::staircase::{synthesize_from_e0, TARGET_NORM_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct TransferPlan {
    pub epsilon: f64,
    pub n: u64,
    pub alpha: f64,
    pub beta: f64,
    /// `g` followed by `g′`.
    pub sequence: ControlSequence,
    /// Number of leading ops that make up `g`.
    pub pivot_len: usize,
    pub certified_bound: f64,
}

impl TransferPlan {
    /// The half that maps the window of `a` onto `α·e₀`.
    pub fn to_pivot(&self) -> ControlSequence {
        self.sequence.as_slice()[..self.pivot_len].iter().copied().collect()
    }

    /// The half that maps `α·e₀` onto `(α/β)·b_N`.
    pub fn from_pivot(&self) -> ControlSequence {
        self.sequence.as_slice()[self.pivot_len..].iter().copied().collect()
    }
}

/// Norm of the part of `a` outside `[-n, n]`.
pub fn tail_norm(a: &SparseState, n: u64) -> f64 {
    a.iter().filter(|(k, _)| k.unsigned_abs() > n).map(|(_, v)| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Smallest window whose discarded tails of `a` and `b` both have norm
/// below `epsilon`.
pub fn transfer_window(a: &SparseState, b: &SparseState, epsilon: f64) -> u64 {
    let limit = a.radius().max(b.radius());
    (0..=limit).find(|&n| tail_norm(a, n) < epsilon && tail_norm(b, n) < epsilon).unwrap_or(limit)
}

pub fn synthesize_transfer(a: &SparseState, b: &SparseState, epsilon: f64) -> Result<TransferPlan> {
    if a.is_empty() || b.is_empty() {
        return Err(ControlError::DegenerateInput("transfer needs nonzero states"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0 / 3.0) {
        return Err(ControlError::EpsilonOutOfRange(epsilon));
    }
    for s in [a, b] {
        let norm = s.norm();
        if (norm - 1.0).abs() > TARGET_NORM_TOL {
            return Err(ControlError::NotNormalized { norm });
        }
    }

    let n = transfer_window(a, b, epsilon);
    let (a_cut, alpha) = a.truncate(n);
    let (b_cut, beta) = b.truncate(n);

    let to_pivot = synthesize_from_e0(&a_cut.scale(Complex64::new(1.0 / alpha, 0.0)))?.inverse();
    let from_pivot = synthesize_from_e0(&b_cut.scale(Complex64::new(1.0 / beta, 0.0)))?;

    let pivot_len = to_pivot.len();
    let certified_bound = 2.0 * epsilon + (1.0 - alpha / beta).abs();
    debug_assert!(alpha > 1.0 - epsilon && beta > 1.0 - epsilon);
    debug_assert!(certified_bound <= 3.0 * epsilon);

    Ok(TransferPlan { epsilon, n, alpha, beta, sequence: to_pivot.then(&from_pivot), pivot_len, certified_bound })
}
