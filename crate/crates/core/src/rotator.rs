//! Charged plane rotator: level bookkeeping and pulse schedules.
//!
//! `H₀ = -∂²/∂φ²` has eigenstates `e^{ikφ}` with energies `k²`. A kick
//! `e^{±iφ}` moves every level by one; a resonant pulse at frequency
//! `|2n + 1|` drives a U(2) rotation on the adjacent pair `(n, n + 1)`.
//! Levels `k` and `-k` are degenerate, so a frequency alone does not pick a
//! pair; schedules record `pair_index` explicitly.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::group::{zyz_decompose, ControlOp, ControlSequence, DerivedOp, ZyzAngles};

pub fn level_energy(k: i64) -> f64 {
    (k as f64) * (k as f64)
}

/// `|(n + 1)² - n²|`, the gap of the pair `(n, n + 1)`.
pub fn transition_frequency(n: i64) -> f64 {
    (2.0 * n as f64 + 1.0).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pulse {
    Kick {
        /// `+1` for `e^{iφ}`, `-1` for its inverse.
        direction: i8,
    },
    ResonantPair {
        pair_index: i64,
        frequency: f64,
        angles: ZyzAngles,
    },
}

impl Pulse {
    /// The generators this pulse stands for.
    pub fn expand(&self) -> ControlSequence {
        match *self {
            Pulse::Kick { direction } if direction > 0 => ControlSequence::from(vec![ControlOp::ShiftUp]),
            Pulse::Kick { .. } => ControlSequence::from(vec![ControlOp::ShiftDown]),
            Pulse::ResonantPair { pair_index, angles, .. } => {
                DerivedOp::PairAt(pair_index, angles.matrix()).expand().expect("PairAt always expands")
            }
        }
    }

    pub fn is_kick(&self) -> bool {
        matches!(self, Pulse::Kick { .. })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub pulses: Vec<Pulse>,
}

impl Schedule {
    pub fn expand(&self) -> ControlSequence {
        let mut seq = ControlSequence::new();
        for p in &self.pulses {
            seq.extend_from(&p.expand());
        }
        seq
    }

    pub fn kick_count(&self) -> usize {
        self.pulses.iter().filter(|p| p.is_kick()).count()
    }

    /// Pairs of distinct `pair_index` values driven at the same frequency,
    /// e.g. `(-1, 0)` both at frequency 1.
    pub fn degeneracy_conflicts(&self) -> Vec<(i64, i64)> {
        let mut by_freq: BTreeMap<u64, BTreeSet<i64>> = BTreeMap::new();
        for p in &self.pulses {
            if let Pulse::ResonantPair { pair_index, .. } = *p {
                by_freq.entry((2 * pair_index + 1).unsigned_abs()).or_default().insert(pair_index);
            }
        }
        by_freq
            .into_values()
            .filter(|set| set.len() > 1)
            .map(|set| (*set.first().unwrap(), *set.last().unwrap()))
            .collect()
    }
}

/// Compiles a word into kicks and resonant pair pulses.
///
/// Kicks are commuted to the end of the schedule: a block applied after a net
/// displacement `c` is the same operator as the block conjugated onto the
/// pair `(-c, 1 - c)` followed by the displacement, since
/// `V·U₊ᶜ = U₊ᶜ·(U₊⁻ᶜ V U₊ᶜ)`. A conjugation pattern
/// `[U₊⁻ⁿ, V, U₊ⁿ]` therefore becomes one resonant pulse at `n` and no kicks,
/// and the remaining displacement is emitted as `|c|` trailing kicks.
pub fn compile_pulses(seq: &ControlSequence) -> Schedule {
    let mut pulses = Vec::new();
    let mut displacement = 0i64;
    for op in seq {
        match op {
            ControlOp::Pair(v) => {
                let angles = zyz_decompose(v).expect("pair blocks are unitary by construction");
                let pair_index = -displacement;
                pulses.push(Pulse::ResonantPair { pair_index, frequency: transition_frequency(pair_index), angles });
            }
            shift => displacement += shift.shift(),
        }
    }
    let direction = if displacement >= 0 { 1 } else { -1 };
    pulses.extend(std::iter::repeat_n(Pulse::Kick { direction }, displacement.unsigned_abs() as usize));
    Schedule { pulses }
}
