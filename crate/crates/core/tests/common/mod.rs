//! Independent oracles shared by the integration tests.
//!
//! Nothing here goes through `SparseState::apply_sequence`, the derived-op
//! expansion or `ZyzAngles::matrix`; the checks compare those paths against
//! these.

#![allow(dead_code)]

use std::f64::consts::PI;

use l2control::{Complex64, ControlOp, ControlSequence, PairUnitary, SparseState};
use rand::Rng;

/// Dense simulator on a window wide enough for the whole word.
pub fn dense_apply(state: &SparseState, seq: &ControlSequence) -> SparseState {
    let (lo, hi) = state.support_bounds().unwrap_or((0, 0));
    let (mut pos, mut min_pos, mut max_pos) = (0i64, 0i64, 0i64);
    for op in seq {
        match op {
            ControlOp::ShiftUp => pos += 1,
            ControlOp::ShiftDown => pos -= 1,
            ControlOp::Pair(_) => {}
        }
        min_pos = min_pos.min(pos);
        max_pos = max_pos.max(pos);
    }
    // each pair block can move an amplitude by at most one site
    let pairs = seq.iter().filter(|op| !op.is_shift()).count() as i64;
    let base = lo.min(0) + min_pos - pairs - 2;
    let top = hi.max(1) + max_pos + pairs + 2;
    let width = (top - base + 1) as usize;
    let mut v = vec![Complex64::new(0.0, 0.0); width];
    for (k, a) in state.iter() {
        v[(k - base) as usize] = a;
    }
    for op in seq {
        match op {
            ControlOp::ShiftUp => v.rotate_right(1),
            ControlOp::ShiftDown => v.rotate_left(1),
            ControlOp::Pair(m) => {
                let i0 = (0 - base) as usize;
                let (c0, c1) = (v[i0], v[i0 + 1]);
                let e = m.entries();
                v[i0] = e[0] * c0 + e[1] * c1;
                v[i0 + 1] = e[2] * c0 + e[3] * c1;
            }
        }
    }
    SparseState::from_entries(v.into_iter().enumerate().map(|(i, a)| (base + i as i64, a)))
}

/// `|(b, a)|` without going through the library's inner product.
pub fn overlap(b: &SparseState, a: &SparseState) -> Complex64 {
    b.iter().map(|(k, bk)| bk.conj() * a.get(k)).sum()
}

pub fn distance(a: &SparseState, b: &SparseState) -> f64 {
    let mut ks: Vec<i64> = a.support().chain(b.support()).collect();
    ks.sort_unstable();
    ks.dedup();
    ks.iter().map(|&k| (a.get(k) - b.get(k)).norm_sqr()).sum::<f64>().sqrt()
}

pub type M2 = [[Complex64; 2]; 2];

pub fn m2_mul(x: &M2, y: &M2) -> M2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += x[i][k] * y[k][j];
            }
        }
    }
    out
}

pub fn rz(phi: f64) -> M2 {
    let z = Complex64::new(0.0, 0.0);
    [[Complex64::from_polar(1.0, -phi / 2.0), z], [z, Complex64::from_polar(1.0, phi / 2.0)]]
}

pub fn ry(theta: f64) -> M2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]]
}

/// `e^{iδ} Rz(α) Ry(θ) Rz(β)` by explicit products.
pub fn euler_product([delta, alpha, theta, beta]: [f64; 4]) -> M2 {
    let m = m2_mul(&m2_mul(&rz(alpha), &ry(theta)), &rz(beta));
    let g = Complex64::from_polar(1.0, delta);
    [[g * m[0][0], g * m[0][1]], [g * m[1][0], g * m[1][1]]]
}

pub fn as_m2(v: &PairUnitary) -> M2 {
    let e = v.entries();
    [[e[0], e[1]], [e[2], e[3]]]
}

pub fn max_entry_diff(x: &M2, y: &M2) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((x[i][j] - y[i][j]).norm());
        }
    }
    d
}

pub fn random_phase<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(-PI..PI))
}

/// Haar-random U(2) from a normalized complex Gaussian column.
pub fn random_unitary<R: Rng>(rng: &mut R) -> PairUnitary {
    loop {
        let g: Vec<f64> = (0..4).map(|_| gauss(rng)).collect();
        let p = Complex64::new(g[0], g[1]);
        let q = Complex64::new(g[2], g[3]);
        let n = (p.norm_sqr() + q.norm_sqr()).sqrt();
        if n < 1e-6 {
            continue;
        }
        let (p, q) = (p / n, q / n);
        let chi = random_phase(rng);
        return PairUnitary::new([p, -chi * q.conj(), q, chi * p.conj()]).unwrap();
    }
}

pub fn gauss<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// Normalized state with random magnitudes and phases on `[-n, n]`; about
/// one site in five is left empty.
pub fn random_state<R: Rng>(rng: &mut R, n: i64) -> SparseState {
    loop {
        let s = SparseState::from_entries(
            (-n..=n)
                .filter_map(|k| {
                    let keep = rng.gen_bool(0.8);
                    let mag = rng.gen_range(0.05..1.0);
                    let ph = random_phase(rng);
                    keep.then_some((k, mag * ph))
                })
                .collect::<Vec<_>>(),
        );
        if let Some(s) = s.normalized() {
            return s;
        }
    }
}

pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> ControlSequence {
    (0..len)
        .map(|_| match rng.gen_range(0..5) {
            0 | 1 => ControlOp::ShiftUp,
            2 | 3 => ControlOp::ShiftDown,
            _ => ControlOp::Pair(random_unitary(rng)),
        })
        .collect()
}
