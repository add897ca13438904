use crate::error::{ControlError, Result};

use super::{ControlOp, ControlSequence, PairUnitary};

/// Shift-conjugated blocks and swap networks, expanded into generators
/// before they are applied or serialized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivedOp {
    /// `Π_n = U₊ⁿ Π U₊⁻ⁿ`, exchanging the coefficients at `n` and `n + 1`.
    Swap(i64),
    /// `Π_{k,k+l} = Π_k Π_{k+1} ⋯ Π_{k+l-1} ⋯ Π_{k+1} Π_k`, exchanging the
    /// coefficients at `k` and `k + l`.
    SwapRange { k: i64, l: i64 },
    /// `U₊ⁿ V U₊⁻ⁿ`, the block `V` acting on levels `n` and `n + 1`.
    PairAt(i64, PairUnitary),
}

impl DerivedOp {
    /// Canonical expansion: shift runs between consecutive blocks are merged.
    pub fn expand(&self) -> Result<ControlSequence> {
        Ok(self.expand_naive()?.telescoped())
    }

    /// Literal expansion, one conjugated block after another.
    pub fn expand_naive(&self) -> Result<ControlSequence> {
        match *self {
            DerivedOp::Swap(n) => Ok(conjugated(n, PairUnitary::swap())),
            DerivedOp::PairAt(n, v) => Ok(conjugated(n, v)),
            DerivedOp::SwapRange { k, l } => {
                if l < 1 {
                    return Err(ControlError::InvalidSwapRange(l));
                }
                let mut seq = ControlSequence::new();
                for n in swap_range_ladder(k, l) {
                    seq.extend_from(&conjugated(n, PairUnitary::swap()));
                }
                Ok(seq)
            }
        }
    }

    /// The two indices whose coefficients are exchanged, for swap variants.
    pub fn transposition(&self) -> Option<(i64, i64)> {
        match *self {
            DerivedOp::Swap(n) => Some((n, n + 1)),
            DerivedOp::SwapRange { k, l } => Some((k, k + l)),
            DerivedOp::PairAt(..) => None,
        }
    }
}

/// Swap positions of the network `Π_{k,k+l}` in application order:
/// `k, k+1, …, k+l-1, …, k+1, k`.
pub fn swap_range_ladder(k: i64, l: i64) -> impl Iterator<Item = i64> {
    (k..k + l).chain((k..k + l - 1).rev())
}

/// Length of the telescoped expansion of `SwapRange { k, l }`: the `2l - 1`
/// blocks, one shift between neighbouring blocks, and `|k|` shifts on each
/// side to reach and leave position `k`.
pub fn swap_range_primitive_count(k: i64, l: i64) -> usize {
    assert!(l >= 1);
    (2 * k.unsigned_abs() + 4 * l as u64 - 3) as usize
}

/// Length of the naive expansion of `SwapRange { k, l }`.
pub fn swap_range_naive_count(k: i64, l: i64) -> usize {
    swap_range_ladder(k, l).map(|n| 2 * n.unsigned_abs() as usize + 1).sum()
}

/// `[U₊⁻ⁿ, V, U₊ⁿ]` in application order.
fn conjugated(n: i64, v: PairUnitary) -> ControlSequence {
    let mut seq = ControlSequence::new();
    seq.push_shifts(-n);
    seq.push(ControlOp::Pair(v));
    seq.push_shifts(n);
    seq
}
