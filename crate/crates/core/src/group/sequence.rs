use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::error::{ControlError, Result};

use super::PairUnitary;

/// A generator of G(U₊, U(2)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ControlOp {
    /// `e_k ↦ e_{k+1}`
    ShiftUp,
    /// `e_k ↦ e_{k-1}`
    ShiftDown,
    /// A U(2) block on the span of `e₀`, `e₁`; identity elsewhere.
    Pair(PairUnitary),
}

impl ControlOp {
    pub fn inverse(&self) -> ControlOp {
        match self {
            ControlOp::ShiftUp => ControlOp::ShiftDown,
            ControlOp::ShiftDown => ControlOp::ShiftUp,
            ControlOp::Pair(v) => ControlOp::Pair(v.dagger()),
        }
    }

    /// `+1` for `ShiftUp`, `-1` for `ShiftDown`, `0` for a pair block.
    pub fn shift(&self) -> i64 {
        match self {
            ControlOp::ShiftUp => 1,
            ControlOp::ShiftDown => -1,
            ControlOp::Pair(_) => 0,
        }
    }

    pub fn is_shift(&self) -> bool {
        !matches!(self, ControlOp::Pair(_))
    }
}

/// A word in the generators. Element 0 acts first, so the operator product
/// `g_n ⋯ g_2 g_1` is the sequence `[g_1, g_2, …, g_n]`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ControlSequence {
    ops: Vec<ControlOp>,
}

impl ControlSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, op: ControlOp) {
        self.ops.push(op);
    }

    /// Appends `|by|` shifts in the direction of `by`.
    pub fn push_shifts(&mut self, by: i64) {
        let op = if by >= 0 { ControlOp::ShiftUp } else { ControlOp::ShiftDown };
        self.ops.extend(std::iter::repeat_n(op, by.unsigned_abs() as usize));
    }

    pub fn extend_from(&mut self, other: &ControlSequence) {
        self.ops.extend_from_slice(&other.ops);
    }

    /// `self` followed by `after`.
    pub fn then(mut self, after: &ControlSequence) -> Self {
        self.extend_from(after);
        self
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ControlOp> {
        self.ops.iter()
    }

    pub fn as_slice(&self) -> &[ControlOp] {
        &self.ops
    }

    pub fn shift_count(&self) -> usize {
        self.ops.iter().filter(|op| op.is_shift()).count()
    }

    pub fn pair_count(&self) -> usize {
        self.ops.len() - self.shift_count()
    }

    /// Net displacement `#ShiftUp - #ShiftDown`.
    pub fn net_shift(&self) -> i64 {
        self.ops.iter().map(ControlOp::shift).sum()
    }

    /// Reversed word with every generator inverted.
    pub fn inverse(&self) -> ControlSequence {
        Self { ops: self.ops.iter().rev().map(ControlOp::inverse).collect() }
    }

    /// Merges every maximal run of shifts into its net displacement.
    /// Pair blocks are left untouched.
    pub fn telescoped(&self) -> ControlSequence {
        let mut out = ControlSequence::new();
        let mut run = 0i64;
        for op in &self.ops {
            match op {
                ControlOp::Pair(_) => {
                    out.push_shifts(run);
                    run = 0;
                    out.push(*op);
                }
                shift => run += shift.shift(),
            }
        }
        out.push_shifts(run);
        out
    }

    /// The index map `k ↦ σ(k)` induced on `window`, where `σ(k)` is the
    /// position `e_k` ends up in. Fails on any pair block other than the
    /// identity or the exchange.
    pub fn as_permutation(&self, window: RangeInclusive<i64>) -> Result<BTreeMap<i64, i64>> {
        if let Some(position) = self.ops.iter().position(|op| matches!(op, ControlOp::Pair(v) if !v.is_permutation())) {
            return Err(ControlError::NotAPermutation { position });
        }
        Ok(window.map(|k| (k, self.track(k))).collect())
    }

    /// Position of the basis vector starting at `k`; only meaningful for
    /// permutation words.
    fn track(&self, mut pos: i64) -> i64 {
        for op in &self.ops {
            match op {
                ControlOp::ShiftUp => pos += 1,
                ControlOp::ShiftDown => pos -= 1,
                ControlOp::Pair(v) => {
                    if *v == PairUnitary::swap() {
                        pos = match pos {
                            0 => 1,
                            1 => 0,
                            p => p,
                        };
                    }
                }
            }
        }
        pos
    }
}

impl From<Vec<ControlOp>> for ControlSequence {
    fn from(ops: Vec<ControlOp>) -> Self {
        Self { ops }
    }
}

impl FromIterator<ControlOp> for ControlSequence {
    fn from_iter<T: IntoIterator<Item = ControlOp>>(iter: T) -> Self {
        Self { ops: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a ControlSequence {
    type Item = &'a ControlOp;
    type IntoIter = std::slice::Iter<'a, ControlOp>;

    fn into_iter(self) -> Self::IntoIter {
        self.ops.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::SparseState;

    #[test]
    fn inverse_reverses_and_inverts() {
        let v = PairUnitary::hadamard().mul(
            &PairUnitary::diagonal(num_complex::Complex64::new(0.0, 1.0), num_complex::Complex64::new(1.0, 0.0))
                .unwrap(),
        );
        let seq = ControlSequence::from(vec![ControlOp::ShiftUp, ControlOp::Pair(v)]);
        let inv = seq.inverse();
        assert_eq!(inv.as_slice(), &[ControlOp::Pair(v.dagger()), ControlOp::ShiftDown]);
        assert!(ControlSequence::new().inverse().is_empty());
    }

    #[test]
    fn shift_permutation() {
        let seq = ControlSequence::from(vec![ControlOp::ShiftUp]);
        let map = seq.as_permutation(-2..=2).unwrap();
        assert!(map.iter().all(|(&k, &v)| v == k + 1));
    }

    #[test]
    fn hadamard_is_not_a_permutation() {
        let seq = ControlSequence::from(vec![ControlOp::ShiftUp, ControlOp::Pair(PairUnitary::hadamard())]);
        assert_eq!(seq.as_permutation(-2..=2), Err(ControlError::NotAPermutation { position: 1 }));
    }

    #[test]
    fn telescoping_merges_shift_runs() {
        use ControlOp::*;
        let p = Pair(PairUnitary::swap());
        let seq = ControlSequence::from(vec![ShiftDown, ShiftDown, ShiftUp, p, ShiftUp, ShiftDown, p, ShiftUp]);
        let t = seq.telescoped();
        assert_eq!(t.as_slice(), &[ShiftDown, p, p, ShiftUp]);
        let a = SparseState::from_real([(-1, 0.3), (0, 0.4), (1, 0.5), (2, 0.6)]);
        assert_eq!(a.apply_sequence(&seq), a.apply_sequence(&t));
    }
}
