//! Sparse states in ℓ²(ℤ).
//!
//! A [`SparseState`] stores only the nonzero coefficients of a terminating
//! sequence. Every control primitive is either a relabelling of indices or a
//! 2×2 rotation on the coefficients at 0 and 1, so the representation stays
//! exact apart from floating-point rounding inside the rotations.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::group::{ControlOp, ControlSequence, PairUnitary};

/// Amplitudes with magnitude below this are dropped after every rotation.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// Tolerance on `|norm - 1|` for a state to count as normalized.
pub const NORMALIZED_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseState {
    entries: BTreeMap<i64, Complex64>,
}

impl SparseState {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `e_k`.
    pub fn basis(k: i64) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(k, Complex64::new(1.0, 0.0));
        Self { entries }
    }

    /// Builds a state from `(index, amplitude)` pairs. Repeated indices are
    /// summed; amplitudes below the prune threshold are dropped.
    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut map: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (k, v) in entries {
            *map.entry(k).or_default() += v;
        }
        map.retain(|_, v| v.norm() >= PRUNE_THRESHOLD);
        Self { entries: map }
    }

    /// Builds a state from real amplitudes.
    pub fn from_real<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (i64, f64)>,
    {
        Self::from_entries(entries.into_iter().map(|(k, v)| (k, Complex64::new(v, 0.0))))
    }

    pub fn get(&self, k: i64) -> Complex64 {
        self.entries.get(&k).copied().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Stored `(index, amplitude)` pairs in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    /// Smallest and largest stored index, or `None` for the zero state.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        let lo = *self.entries.keys().next()?;
        let hi = *self.entries.keys().next_back()?;
        Some((lo, hi))
    }

    /// Smallest `N` with the support inside `[-N, N]`.
    pub fn radius(&self) -> u64 {
        self.entries.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    /// `(self, other) = Σ conj(self_k) · other_k`, conjugate-linear in `self`.
    pub fn inner(&self, other: &SparseState) -> Complex64 {
        let (small, large, conj_small) =
            if self.len() <= other.len() { (self, other, true) } else { (other, self, false) };
        small
            .entries
            .iter()
            .filter_map(|(k, &s)| large.entries.get(k).map(|&l| if conj_small { s.conj() * l } else { l.conj() * s }))
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.values().map(|v| v.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORMALIZED_TOL
    }

    pub fn scale(&self, factor: Complex64) -> SparseState {
        Self::from_entries(self.iter().map(|(k, v)| (k, v * factor)))
    }

    /// Returns `self / norm(self)`, or `None` for the zero state.
    pub fn normalized(&self) -> Option<SparseState> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn sub(&self, other: &SparseState) -> SparseState {
        Self::from_entries(self.iter().chain(other.iter().map(|(k, v)| (k, -v))))
    }

    /// `norm(self - other)`, computed without pruning the difference.
    pub fn distance(&self, other: &SparseState) -> f64 {
        let mut keys: Vec<i64> = self.support().chain(other.support()).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().map(|k| (self.get(k) - other.get(k)).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Restriction to `[-n, n]` together with its norm.
    pub fn truncate(&self, n: u64) -> (SparseState, f64) {
        let n = i64::try_from(n).unwrap_or(i64::MAX);
        let entries: BTreeMap<i64, Complex64> = self.entries.range(-n..=n).map(|(&k, &v)| (k, v)).collect();
        let restricted = SparseState { entries };
        let norm = restricted.norm();
        (restricted, norm)
    }

    pub fn apply_op(&self, op: &ControlOp) -> SparseState {
        match op {
            ControlOp::ShiftUp => self.shifted(1),
            ControlOp::ShiftDown => self.shifted(-1),
            ControlOp::Pair(v) => {
                let mut entries = self.entries.clone();
                rotate_pair(&mut entries, 0, v);
                SparseState { entries }
            }
        }
    }

    /// Applies `seq` with element 0 acting first.
    ///
    /// Shifts are not materialized one by one: the entries are kept in a
    /// moving frame and re-indexed once at the end.
    pub fn apply_sequence(&self, seq: &ControlSequence) -> SparseState {
        let mut entries = self.entries.clone();
        // true index = stored index + offset
        let mut offset: i64 = 0;
        for op in seq.iter() {
            match op {
                ControlOp::ShiftUp => offset += 1,
                ControlOp::ShiftDown => offset -= 1,
                ControlOp::Pair(v) => rotate_pair(&mut entries, -offset, v),
            }
        }
        if offset == 0 {
            return SparseState { entries };
        }
        SparseState { entries: entries.into_iter().map(|(k, v)| (k + offset, v)).collect() }
    }

    fn shifted(&self, by: i64) -> SparseState {
        SparseState { entries: self.entries.iter().map(|(&k, &v)| (k + by, v)).collect() }
    }
}

/// Applies `v` to the coefficient pair stored at `(base, base + 1)`.
fn rotate_pair(entries: &mut BTreeMap<i64, Complex64>, base: i64, v: &PairUnitary) {
    let c0 = entries.get(&base).copied().unwrap_or_default();
    let c1 = entries.get(&(base + 1)).copied().unwrap_or_default();
    let (d0, d1) = v.apply(c0, c1);
    for (k, d) in [(base, d0), (base + 1, d1)] {
        if d.norm() < PRUNE_THRESHOLD {
            entries.remove(&k);
        } else {
            entries.insert(k, d);
        }
    }
}

impl FromIterator<(i64, Complex64)> for SparseState {
    fn from_iter<T: IntoIterator<Item = (i64, Complex64)>>(iter: T) -> Self {
        Self::from_entries(iter)
    }
}
