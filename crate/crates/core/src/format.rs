//! JSON file formats.
//!
//! * state: `{"entries": [{"k": int, "re": float, "im": float}, ...]}`
//! * sequence: `[{"op": "shift_up"} | {"op": "shift_down"} |
//!   {"op": "pair", "u": [[re, im] x 4]}]`, matrix row-major
//! * transfer plan: `{"epsilon", "N", "alpha", "beta", "certified_bound", "sequence"}`
//! * schedule: `{"pulses": [{"kind": "kick", "direction": ±1} |
//!   {"kind": "resonant_pair", "pair_index", "frequency", "angles": [δ, α, θ, β]}]}`
//!
//! Floats are written in shortest round-trip form, so reading a file back
//! reproduces every value bit for bit.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ControlError, Result};
use crate::group::{ControlOp, ControlSequence, PairUnitary};
use crate::rotator::Schedule;
use crate::state::SparseState;
use crate::synthesis::TransferPlan;

#[derive(Serialize, Deserialize)]
struct StateFile {
    entries: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    k: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum OpFile {
    ShiftUp,
    ShiftDown,
    Pair { u: [[f64; 2]; 4] },
}

#[derive(Serialize)]
struct PlanFile<'a> {
    epsilon: f64,
    #[serde(rename = "N")]
    n: u64,
    alpha: f64,
    beta: f64,
    certified_bound: f64,
    sequence: &'a [OpFile],
}

pub fn state_to_value(state: &SparseState) -> serde_json::Value {
    let file = StateFile { entries: state.iter().map(|(k, v)| EntryFile { k, re: v.re, im: v.im }).collect() };
    serde_json::to_value(file).expect("state serializes")
}

pub fn state_to_json(state: &SparseState) -> String {
    pretty(&state_to_value(state))
}

/// Parses a state file, rejecting repeated indices.
pub fn state_from_json(text: &str) -> Result<SparseState> {
    let file: StateFile = serde_json::from_str(text)?;
    let mut seen = BTreeSet::new();
    for e in &file.entries {
        if !seen.insert(e.k) {
            return Err(ControlError::Format(format!("duplicate index k = {}", e.k)));
        }
        if !e.re.is_finite() || !e.im.is_finite() {
            return Err(ControlError::Format(format!("non-finite amplitude at k = {}", e.k)));
        }
    }
    Ok(SparseState::from_entries(file.entries.into_iter().map(|e| (e.k, Complex64::new(e.re, e.im)))))
}

fn op_to_file(op: &ControlOp) -> OpFile {
    match op {
        ControlOp::ShiftUp => OpFile::ShiftUp,
        ControlOp::ShiftDown => OpFile::ShiftDown,
        ControlOp::Pair(v) => OpFile::Pair { u: v.entries().map(|z| [z.re, z.im]) },
    }
}

fn op_from_file(op: OpFile) -> Result<ControlOp> {
    Ok(match op {
        OpFile::ShiftUp => ControlOp::ShiftUp,
        OpFile::ShiftDown => ControlOp::ShiftDown,
        OpFile::Pair { u } => ControlOp::Pair(PairUnitary::new(u.map(|[re, im]| Complex64::new(re, im)))?),
    })
}

pub fn sequence_to_value(seq: &ControlSequence) -> serde_json::Value {
    let ops: Vec<OpFile> = seq.iter().map(op_to_file).collect();
    serde_json::to_value(ops).expect("sequence serializes")
}

pub fn sequence_to_json(seq: &ControlSequence) -> String {
    pretty(&sequence_to_value(seq))
}

/// Parses a sequence file; pair blocks must be unitary.
pub fn sequence_from_json(text: &str) -> Result<ControlSequence> {
    let ops: Vec<OpFile> = serde_json::from_str(text)?;
    ops.into_iter().map(op_from_file).collect()
}

pub fn plan_to_value(plan: &TransferPlan) -> serde_json::Value {
    let ops: Vec<OpFile> = plan.sequence.iter().map(op_to_file).collect();
    let file = PlanFile {
        epsilon: plan.epsilon,
        n: plan.n,
        alpha: plan.alpha,
        beta: plan.beta,
        certified_bound: plan.certified_bound,
        sequence: &ops,
    };
    serde_json::to_value(file).expect("plan serializes")
}

pub fn plan_to_json(plan: &TransferPlan) -> String {
    pretty(&plan_to_value(plan))
}

pub fn schedule_to_value(schedule: &Schedule) -> serde_json::Value {
    serde_json::to_value(schedule).expect("schedule serializes")
}

pub fn schedule_to_json(schedule: &Schedule) -> String {
    pretty(&schedule_to_value(schedule))
}

pub fn schedule_from_json(text: &str) -> Result<Schedule> {
    Ok(serde_json::from_str(text)?)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}
