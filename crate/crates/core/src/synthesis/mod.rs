//! Constructive word synthesis.

mod staircase;
mod transfer;
mod witness;

pub use staircase::{
    place_rotation, placement_order, synthesize_from_e0, synthesize_staircase, Staircase, StaircaseStep, BUDGET_TOL,
    TARGET_NORM_TOL,
};
pub use transfer::{synthesize_transfer, tail_norm, transfer_window, TransferPlan};
pub use witness::{density_witness, Witness, DEFAULT_MAX_DEPTH, WITNESS_TOL};
