//! Seeded generators for states, blocks and words used by the invariant
//! suite and the tests.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{ControlOp, ControlSequence, PairUnitary};
use crate::state::SparseState;

pub type TrialRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for trial `index` of the check named `label`.
pub fn trial_rng(seed: u64, label: &str, index: u64) -> TrialRng {
    // FNV-1a over the label keeps streams stable across runs and platforms.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut r = ChaCha8Rng::seed_from_u64(seed ^ h);
    r.set_stream(index);
    r
}

pub fn phase<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(-PI..PI))
}

/// Standard complex Gaussian via Box-Muller.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let r = (-u.ln()).sqrt();
    r * phase(rng)
}

/// Haar-distributed element of U(2).
pub fn unitary<R: Rng + ?Sized>(rng: &mut R) -> PairUnitary {
    let (p, q) = loop {
        let (p, q) = (gaussian(rng), gaussian(rng));
        let n = (p.norm_sqr() + q.norm_sqr()).sqrt();
        if n > 1e-6 {
            break (p / n, q / n);
        }
    };
    let chi = phase(rng);
    PairUnitary::new([p, -chi * q.conj(), q, chi * p.conj()]).expect("columns are orthonormal")
}

/// Normalized state supported in `[-radius, radius]`. Each site is filled
/// with probability `fill`; the result is never zero.
pub fn state<R: Rng + ?Sized>(rng: &mut R, radius: i64, fill: f64) -> SparseState {
    loop {
        let mut entries = Vec::new();
        for k in -radius..=radius {
            if rng.gen_bool(fill) {
                entries.push((k, gaussian(rng)));
            }
        }
        let s = SparseState::from_entries(entries);
        if let Some(s) = s.normalized() {
            return s;
        }
    }
}

/// Normalized state with `|a_k| ∝ ratio^{|k - center|}` times a random
/// factor in `[0.5, 1]` and a random phase, cut at `|k| <= radius`.
pub fn geometric_state<R: Rng + ?Sized>(rng: &mut R, ratio: f64, center: i64, radius: i64) -> SparseState {
    SparseState::from_entries((-radius..=radius).map(|k| {
        let m = ratio.powi((k - center).unsigned_abs() as i32) * rng.gen_range(0.5..=1.0);
        (k, m * phase(rng))
    }))
    .normalized()
    .expect("center amplitude is nonzero")
}

/// Word of `len` generators; pair blocks are Haar-random, the exchange, or
/// the identity.
pub fn sequence<R: Rng + ?Sized>(rng: &mut R, len: usize) -> ControlSequence {
    (0..len)
        .map(|_| match rng.gen_range(0..6) {
            0 | 1 => ControlOp::ShiftUp,
            2 | 3 => ControlOp::ShiftDown,
            4 => ControlOp::Pair(unitary(rng)),
            _ => ControlOp::Pair(if rng.gen_bool(0.8) { PairUnitary::swap() } else { PairUnitary::identity() }),
        })
        .collect()
}

/// Word over shifts and the exchange only.
pub fn permutation_sequence<R: Rng + ?Sized>(rng: &mut R, len: usize) -> ControlSequence {
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => ControlOp::ShiftUp,
            1 => ControlOp::ShiftDown,
            _ => ControlOp::Pair(PairUnitary::swap()),
        })
        .collect()
}

/// Replaces `b` by its component orthogonal to `a`, renormalized.
pub fn orthogonalize(a: &SparseState, b: &SparseState) -> Option<SparseState> {
    let na = a.norm_sqr();
    let proj = a.inner(b) / na;
    b.sub(&a.scale(proj)).normalized()
}
