use std::fmt;

use num_complex::Complex64;

use crate::error::{ControlError, Result};

/// Maximum entrywise deviation of `M†M` from the identity.
pub const UNITARITY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 unitary acting on the coefficients of `e₀` and `e₁`.
///
/// Entries are stored row-major: `[m00, m01, m10, m11]`, so that
/// `(c0, c1) ↦ (m00·c0 + m01·c1, m10·c0 + m11·c1)`.
#[derive(Clone, Copy, PartialEq)]
pub struct PairUnitary {
    m: [Complex64; 4],
}

impl PairUnitary {
    /// Validates unitarity within [`UNITARITY_TOL`].
    pub fn new(m: [Complex64; 4]) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(ControlError::NotUnitary { deviation: f64::INFINITY });
        }
        let candidate = Self { m };
        let deviation = candidate.unitarity_deviation();
        if deviation > UNITARITY_TOL {
            return Err(ControlError::NotUnitary { deviation });
        }
        Ok(candidate)
    }

    pub(crate) fn new_unchecked(m: [Complex64; 4]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self { m: [ONE, ZERO, ZERO, ONE] }
    }

    /// The exchange `e₀ ↔ e₁`.
    pub fn swap() -> Self {
        Self { m: [ZERO, ONE, ONE, ZERO] }
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { m: [h, h, h, -h] }
    }

    /// `diag(d0, d1)`; both entries must have unit modulus.
    pub fn diagonal(d0: Complex64, d1: Complex64) -> Result<Self> {
        Self::new([d0, ZERO, ZERO, d1])
    }

    pub fn entries(&self) -> [Complex64; 4] {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m[2 * row + col]
    }

    pub fn apply(&self, c0: Complex64, c1: Complex64) -> (Complex64, Complex64) {
        let [a, b, c, d] = self.m;
        (a * c0 + b * c1, c * c0 + d * c1)
    }

    pub fn dagger(&self) -> Self {
        let [a, b, c, d] = self.m;
        Self { m: [a.conj(), c.conj(), b.conj(), d.conj()] }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &PairUnitary) -> Self {
        Self { m: mat_mul(&self.m, &rhs.m) }
    }

    pub fn det(&self) -> Complex64 {
        let [a, b, c, d] = self.m;
        a * d - b * c
    }

    pub fn unitarity_deviation(&self) -> f64 {
        let prod = mat_mul(&self.dagger().m, &self.m);
        let id = [ONE, ZERO, ZERO, ONE];
        prod.iter().zip(id.iter()).map(|(p, i)| (p - i).norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_diff(&self, other: &PairUnitary) -> f64 {
        self.m.iter().zip(other.m.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_identity(&self) -> bool {
        self.m == [ONE, ZERO, ZERO, ONE]
    }

    /// True for the identity and the exchange, the only blocks that move
    /// basis vectors onto basis vectors without a phase.
    pub fn is_permutation(&self) -> bool {
        self.m == [ONE, ZERO, ZERO, ONE] || self.m == [ZERO, ONE, ONE, ZERO]
    }
}

pub(crate) fn mat_mul(x: &[Complex64; 4], y: &[Complex64; 4]) -> [Complex64; 4] {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

impl fmt::Debug for PairUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl Default for PairUnitary {
    fn default() -> Self {
        Self::identity()
    }
}
