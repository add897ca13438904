//! Words in G(U₊, Π) that make two terminating states non-orthogonal.

use std::collections::HashSet;

use num_complex::Complex64;

use crate::error::{ControlError, Result};
use crate::group::{ControlSequence, DerivedOp};
use crate::state::SparseState;

/// `|(b, g a)|` must exceed this for `g` to count as a witness.
pub const WITNESS_TOL: f64 = 1e-12;

pub const DEFAULT_MAX_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// Swap networks in application order.
    pub factors: Vec<DerivedOp>,
    pub sequence: ControlSequence,
    /// `(b, g a)` evaluated on the expanded word.
    pub inner: Complex64,
}

/// Finds `g` with `|(b, g a)| > WITNESS_TOL`.
///
/// When `b` is a single basis direction `e_k`, the nearest nonzero
/// coefficient `a_{k±l}` is brought to `k` by one swap network. Otherwise the
/// empty word is tried, then products of up to `max_depth` swap networks
/// over the joint support widened by one site on each side.
pub fn density_witness(a: &SparseState, b: &SparseState, max_depth: usize) -> Result<Witness> {
    if a.is_empty() || b.is_empty() {
        return Err(ControlError::DegenerateInput("witness search needs nonzero states"));
    }

    if b.len() == 1 {
        if let Some(factors) = basis_witness(a, b) {
            return Ok(finish(a, b, factors));
        }
    }

    if b.inner(a).norm() > WITNESS_TOL {
        return Ok(finish(a, b, Vec::new()));
    }

    search(a, b, max_depth).map(|factors| finish(a, b, factors)).ok_or(ControlError::NotFound { max_depth })
}

fn basis_witness(a: &SparseState, b: &SparseState) -> Option<Vec<DerivedOp>> {
    let (k, bk) = b.iter().next()?;
    let (lo, hi) = a.support_bounds()?;
    let reach = (hi - k).max(k - lo).max(0);
    let hits = |idx: i64| (bk.conj() * a.get(idx)).norm() > WITNESS_TOL;
    if hits(k) {
        return Some(Vec::new());
    }
    (1..=reach).find_map(|l| {
        if hits(k + l) {
            Some(vec![DerivedOp::SwapRange { k, l }])
        } else if hits(k - l) {
            Some(vec![DerivedOp::SwapRange { k: k - l, l }])
        } else {
            None
        }
    })
}

/// Breadth-first search over products of transpositions on a dense window.
fn search(a: &SparseState, b: &SparseState, max_depth: usize) -> Option<Vec<DerivedOp>> {
    let (alo, ahi) = a.support_bounds()?;
    let (blo, bhi) = b.support_bounds()?;
    let lo = alo.min(blo) - 1;
    let hi = ahi.max(bhi) + 1;
    let width = (hi - lo + 1) as usize;

    let av: Vec<Complex64> = (lo..=hi).map(|k| a.get(k)).collect();
    let bv: Vec<Complex64> = (lo..=hi).map(|k| b.get(k).conj()).collect();
    let pairs: Vec<(usize, usize)> = (0..width).flat_map(|i| (i + 1..width).map(move |j| (i, j))).collect();

    // slot -> index of the original amplitude now sitting there
    let start: Vec<u16> = (0..width as u16).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::from([start.clone()]);
    // arrangement reached and the transpositions that reached it
    type Node = (Vec<u16>, Vec<(usize, usize)>);
    let mut frontier: Vec<Node> = vec![(start, Vec::new())];

    for _ in 0..max_depth {
        let mut next = Vec::new();
        for (arrangement, path) in &frontier {
            for &(i, j) in &pairs {
                let mut candidate = arrangement.clone();
                candidate.swap(i, j);
                if !seen.insert(candidate.clone()) {
                    continue;
                }
                let overlap: Complex64 =
                    candidate.iter().enumerate().map(|(slot, &src)| bv[slot] * av[src as usize]).sum();
                let mut path = path.clone();
                path.push((i, j));
                if overlap.norm() > WITNESS_TOL {
                    return Some(
                        path.into_iter()
                            .map(|(i, j)| DerivedOp::SwapRange { k: lo + i as i64, l: (j - i) as i64 })
                            .collect(),
                    );
                }
                next.push((candidate, path));
            }
        }
        frontier = next;
    }
    None
}

fn finish(a: &SparseState, b: &SparseState, factors: Vec<DerivedOp>) -> Witness {
    let mut sequence = ControlSequence::new();
    for f in &factors {
        sequence.extend_from(&f.expand().expect("witness factors have l >= 1"));
    }
    let sequence = sequence.telescoped();
    let inner = b.inner(&a.apply_sequence(&sequence));
    Witness { factors, sequence, inner }
}
