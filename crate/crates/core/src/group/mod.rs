//! Elements of G(U₊, U(2)): generators, words, derived swap networks and the
//! Euler-angle form of a pair block.

mod derived;
mod pair;
mod sequence;
mod zyz;

pub use derived::{swap_range_ladder, swap_range_naive_count, swap_range_primitive_count, DerivedOp};
pub use pair::{PairUnitary, UNITARITY_TOL};
pub use sequence::{ControlOp, ControlSequence};
pub use zyz::{zyz_decompose, ZyzAngles};
