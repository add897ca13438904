//! Preparation of a terminating state from `e₀`.
//!
//! The amplitude parked on `e₀` is split by a rotation on `{e₀, e₁}`, and the
//! part landing on `e₁` is carried to its destination by a swap network.
//! Destinations are visited as `-N, …, -1`, then `N, …, 2`, then `1`, so the
//! staging slot `e₁` is empty at the start of every step; the last step is a
//! diagonal phase on `e₀`.

use num_complex::Complex64;

use crate::error::{ControlError, Result};
use crate::group::{ControlOp, ControlSequence, DerivedOp, PairUnitary};
use crate::state::SparseState;

/// Targets must have `|norm - 1|` within this.
pub const TARGET_NORM_TOL: f64 = 1e-10;

/// Slack allowed when a target amplitude exceeds the staged amplitude.
pub const BUDGET_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StaircaseStep {
    pub destination: i64,
    pub rotation: PairUnitary,
    /// Network carrying the `e₁` amplitude to `destination`; `None` when the
    /// destination is 1.
    pub swap: Option<DerivedOp>,
    /// Staged amplitude left on `e₀` after the step.
    pub residual: f64,
}

impl StaircaseStep {
    pub fn sequence(&self) -> ControlSequence {
        let mut seq = ControlSequence::from(vec![ControlOp::Pair(self.rotation)]);
        if let Some(swap) = self.swap {
            seq.extend_from(&swap.expand().expect("staircase swaps have l >= 1"));
        }
        seq
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Staircase {
    /// Smallest `N` with the target supported in `[-N, N]`.
    pub radius: u64,
    pub steps: Vec<StaircaseStep>,
    /// Diagonal phase on `e₀`, omitted when it would be the identity.
    pub final_phase: Option<PairUnitary>,
}

impl Staircase {
    /// Number of composite group elements `g_i`.
    pub fn composite_count(&self) -> usize {
        self.steps.len() + usize::from(self.final_phase.is_some())
    }

    pub fn sequence(&self) -> ControlSequence {
        let mut seq = ControlSequence::new();
        for step in &self.steps {
            seq.extend_from(&step.sequence());
        }
        if let Some(phase) = self.final_phase {
            seq.push(ControlOp::Pair(phase));
        }
        seq
    }
}

/// A block `V` with `V·(x, 0)ᵀ = (x', target)ᵀ`, where
/// `x' = sqrt(|x|² - |target|²)` is real and nonnegative.
pub fn place_rotation(x: Complex64, target: Complex64) -> Result<PairUnitary> {
    let (xn, tn) = (x.norm(), target.norm());
    if tn > xn + BUDGET_TOL || (xn == 0.0 && tn > 0.0) {
        return Err(ControlError::BudgetExceeded { target: tn, available: xn });
    }
    if xn == 0.0 {
        return Ok(PairUnitary::identity());
    }
    let rest = (xn * xn - tn * tn).max(0.0).sqrt();
    let p = Complex64::new(rest, 0.0) / x;
    let mut q = target / x;
    if q.norm() > 1.0 {
        q /= q.norm();
    }
    let m = if target == Complex64::default() {
        [p, Complex64::default(), Complex64::default(), p.conj()]
    } else if rest == 0.0 {
        [Complex64::default(), q.conj(), q, Complex64::default()]
    } else {
        [p, -q.conj(), q, p.conj()]
    };
    PairUnitary::new(m)
}

/// Destination order for a target supported in `[-n, n]`.
pub fn placement_order(n: i64) -> impl Iterator<Item = i64> {
    (-n..=-1).chain((2..=n).rev()).chain(std::iter::once(1).filter(move |_| n >= 1))
}

/// The staircase preparing `target` from `e₀`.
pub fn synthesize_staircase(target: &SparseState) -> Result<Staircase> {
    let norm = target.norm();
    if (norm - 1.0).abs() > TARGET_NORM_TOL {
        return Err(ControlError::NotNormalized { norm });
    }
    let a = target.scale(Complex64::new(1.0 / norm, 0.0));
    let radius = a.radius();
    let n = radius as i64;

    let destinations: Vec<i64> = placement_order(n).filter(|&d| a.get(d) != Complex64::default()).collect();

    // Mass still parked on e₀ before each step, accumulated from the end so
    // the last steps do not inherit cancellation error.
    let mut remaining = vec![0.0; destinations.len() + 1];
    remaining[destinations.len()] = a.get(0).norm_sqr();
    for (i, &d) in destinations.iter().enumerate().rev() {
        remaining[i] = remaining[i + 1] + a.get(d).norm_sqr();
    }

    let steps = destinations
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let staged = remaining[i].sqrt();
            let rotation = place_rotation(Complex64::new(staged, 0.0), a.get(d))?;
            let swap = match d {
                1 => None,
                d if d >= 2 => Some(DerivedOp::SwapRange { k: 1, l: d - 1 }),
                d => Some(DerivedOp::SwapRange { k: d, l: 1 - d }),
            };
            Ok(StaircaseStep { destination: d, rotation, swap, residual: remaining[i + 1].sqrt() })
        })
        .collect::<Result<Vec<_>>>()?;

    let a0 = a.get(0);
    let final_phase = if a0 == Complex64::default() {
        None
    } else {
        let phase = PairUnitary::diagonal(a0 / a0.norm(), Complex64::new(1.0, 0.0))?;
        (!phase.is_identity()).then_some(phase)
    };

    Ok(Staircase { radius, steps, final_phase })
}

/// A word `g` with `g e₀ = target`.
pub fn synthesize_from_e0(target: &SparseState) -> Result<ControlSequence> {
    Ok(synthesize_staircase(target)?.sequence())
}
