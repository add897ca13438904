//! ZYZ Euler angles of a U(2) block.
//!
//! Convention: `V = e^{iδ} · Rz(α) · Ry(θ) · Rz(β)` with
//! `Rz(φ) = diag(e^{-iφ/2}, e^{iφ/2})` and
//! `Ry(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ControlError, Result};

use super::pair::UNITARITY_TOL;
use super::PairUnitary;

/// Below this, `sin θ/2` or `cos θ/2` is treated as exactly zero and the
/// gauge is fixed with `β = 0`.
const DEGENERATE_EPS: f64 = 1e-14;

/// Serialized as `[δ, α, θ, β]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct ZyzAngles {
    pub delta: f64,
    pub alpha: f64,
    pub theta: f64,
    pub beta: f64,
}

impl ZyzAngles {
    pub fn as_array(&self) -> [f64; 4] {
        [self.delta, self.alpha, self.theta, self.beta]
    }

    pub fn from_array([delta, alpha, theta, beta]: [f64; 4]) -> Self {
        Self { delta, alpha, theta, beta }
    }

    /// Rebuilds `e^{iδ} Rz(α) Ry(θ) Rz(β)`.
    pub fn matrix(&self) -> PairUnitary {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let sum = (self.alpha + self.beta) / 2.0;
        let diff = (self.alpha - self.beta) / 2.0;
        let g = Complex64::from_polar(1.0, self.delta);
        PairUnitary::new_unchecked([
            g * Complex64::from_polar(c, -sum),
            -g * Complex64::from_polar(s, -diff),
            g * Complex64::from_polar(s, diff),
            g * Complex64::from_polar(c, sum),
        ])
    }
}

impl From<[f64; 4]> for ZyzAngles {
    fn from(a: [f64; 4]) -> Self {
        Self::from_array(a)
    }
}

impl From<ZyzAngles> for [f64; 4] {
    fn from(a: ZyzAngles) -> Self {
        a.as_array()
    }
}

/// Decomposes `v` with `θ ∈ [0, π]` and `δ, α, β ∈ (-π, π]`.
pub fn zyz_decompose(v: &PairUnitary) -> Result<ZyzAngles> {
    let deviation = v.unitarity_deviation();
    if deviation > UNITARITY_TOL {
        return Err(ControlError::NotUnitary { deviation });
    }

    // strip the global phase so that w ∈ SU(2)
    let mut delta = v.det().arg() / 2.0;
    let unphase = Complex64::from_polar(1.0, -delta);
    let w00 = v.get(0, 0) * unphase;
    let w10 = v.get(1, 0) * unphase;

    let theta = 2.0 * w10.norm().atan2(w00.norm());
    let (alpha, beta) = if w10.norm() <= DEGENERATE_EPS {
        (-2.0 * w00.arg(), 0.0)
    } else if w00.norm() <= DEGENERATE_EPS {
        (2.0 * w10.arg(), 0.0)
    } else {
        let sum = -2.0 * w00.arg();
        let diff = 2.0 * w10.arg();
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };

    // Moving α or β by 2π flips the sign of the SU(2) part; absorb it in δ.
    let (alpha, flips_a) = wrap_counting(alpha);
    let (beta, flips_b) = wrap_counting(beta);
    if (flips_a + flips_b) % 2 != 0 {
        delta += PI;
    }
    let (delta, _) = wrap_counting(delta);

    Ok(ZyzAngles { delta, alpha, theta, beta })
}

/// Wraps into `(-π, π]`, returning the number of 2π turns removed.
fn wrap_counting(mut x: f64) -> (f64, i64) {
    let mut turns = 0;
    while x > PI {
        x -= 2.0 * PI;
        turns += 1;
    }
    while x <= -PI {
        x += 2.0 * PI;
        turns += 1;
    }
    (x, turns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(v: PairUnitary) -> ZyzAngles {
        let a = zyz_decompose(&v).unwrap();
        assert!(a.matrix().max_diff(&v) <= 1e-12, "{v:?} -> {a:?}");
        assert!((0.0..=PI).contains(&a.theta));
        for x in [a.delta, a.alpha, a.beta] {
            assert!(x > -PI && x <= PI);
        }
        a
    }

    #[test]
    fn identity_is_all_zero() {
        let a = check(PairUnitary::identity());
        assert_eq!(a.as_array(), [0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn swap_reconstructs() {
        let a = check(PairUnitary::swap());
        assert!((a.theta - PI).abs() < 1e-15);
        assert_eq!(a.beta, 0.0);
    }

    #[test]
    fn degenerate_diagonal_fixes_beta() {
        let v = PairUnitary::diagonal(Complex64::from_polar(1.0, 2.9), Complex64::from_polar(1.0, -0.4)).unwrap();
        let a = check(v);
        assert_eq!(a.theta, 0.0);
        assert_eq!(a.beta, 0.0);
    }

    #[test]
    fn negative_identity() {
        check(PairUnitary::diagonal(Complex64::new(-1.0, 0.0), Complex64::new(-1.0, 0.0)).unwrap());
    }

    #[test]
    fn assorted_blocks() {
        check(PairUnitary::hadamard());
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        check(PairUnitary::new([z, i, i, z]).unwrap());
        check(PairUnitary::new([z, -i, i, z]).unwrap());
    }

    #[test]
    fn rejects_non_unitary() {
        let bad = PairUnitary::new_unchecked([
            Complex64::new(2.0, 0.0),
            Complex64::default(),
            Complex64::default(),
            Complex64::new(1.0, 0.0),
        ]);
        assert!(matches!(zyz_decompose(&bad), Err(ControlError::NotUnitary { .. })));
    }
}
