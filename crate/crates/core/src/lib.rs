//! Finite control sequences over the group generated by the bilateral shift
//! on ℓ²(ℤ) and a single U(2) block acting on the span of `e₀` and `e₁`.
//!
//! The crate is organized bottom-up:
//!
//! * [`state`] holds exact sparse states and applies control words to them.
//! * [`group`] holds the generators, derived swap networks, inversion and
//!   the ZYZ Euler decomposition of a U(2) block.
//! * [`synthesis`] builds words: preparation from `e₀`, truncated
//!   state-to-state transfer with a certified error, and non-orthogonality
//!   witnesses over the permutation subgroup.
//! * [`rotator`] maps words onto kicks and resonant pair pulses of a charged
//!   plane rotator.
//! * [`selfcheck`] runs the seeded invariant suite used by the CLI.
//!
//! Sequences are always read left to right: element 0 acts on the state first.

pub mod error;
pub mod format;
pub mod group;
pub mod random;
pub mod rotator;
pub mod selfcheck;
pub mod state;
pub mod synthesis;

pub use error::{ControlError, Result};
pub use group::{ControlOp, ControlSequence, DerivedOp, PairUnitary, ZyzAngles};
pub use rotator::{Pulse, Schedule};
pub use state::SparseState;
pub use synthesis::{Staircase, StaircaseStep, TransferPlan, Witness};

pub use num_complex::Complex64;
