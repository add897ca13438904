//! Python bindings: states, sequences and the synthesis entry points.
//!
//! Sequences and schedules cross the boundary as their JSON text so Python
//! code can inspect them with the standard `json` module.

use l2control::group::{zyz_decompose as zyz, DerivedOp};
use l2control::{format, rotator, selfcheck as sc, synthesis, ControlError, ControlSequence, PairUnitary, SparseState};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use std::collections::BTreeMap;

create_exception!(l2control_py, L2ControlError, PyException);

fn err(e: ControlError) -> PyErr {
    L2ControlError::new_err(format!("{}: {e}", e.kind()))
}

#[pyclass(name = "State", module = "l2control_py", skip_from_py_object)]
#[derive(Clone)]
struct State(SparseState);

#[pymethods]
impl State {
    /// State from a `{site: amplitude}` mapping.
    #[new]
    fn new(entries: BTreeMap<i64, Complex64>) -> Self {
        State(SparseState::from_entries(entries))
    }

    #[staticmethod]
    fn basis(k: i64) -> Self {
        State(SparseState::basis(k))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        format::state_from_json(text).map(State).map_err(err)
    }

    fn to_json(&self) -> String {
        format::state_to_json(&self.0)
    }

    fn entries(&self) -> BTreeMap<i64, Complex64> {
        self.0.iter().collect()
    }

    fn get(&self, k: i64) -> Complex64 {
        self.0.get(k)
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn normalized(&self) -> Option<Self> {
        self.0.normalized().map(State)
    }

    /// `(self, other)`, antilinear in `self`.
    fn inner(&self, other: PyRef<'_, State>) -> Complex64 {
        self.0.inner(&other.0)
    }

    fn distance(&self, other: PyRef<'_, State>) -> f64 {
        self.0.distance(&other.0)
    }

    fn apply(&self, seq: PyRef<'_, Sequence>) -> Self {
        State(self.0.apply_sequence(&seq.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("State({} sites, norm={:.15})", self.0.len(), self.0.norm())
    }
}

#[pyclass(name = "Sequence", module = "l2control_py", skip_from_py_object)]
#[derive(Clone)]
struct Sequence(ControlSequence);

#[pymethods]
impl Sequence {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        format::sequence_from_json(text).map(Sequence).map_err(err)
    }

    /// Word implementing the transposition of `k` and `k + l`.
    #[staticmethod]
    fn swap_range(k: i64, l: i64) -> PyResult<Self> {
        DerivedOp::SwapRange { k, l }.expand().map(Sequence).map_err(err)
    }

    fn to_json(&self) -> String {
        format::sequence_to_json(&self.0)
    }

    fn inverse(&self) -> Self {
        Sequence(self.0.inverse())
    }

    fn then(&self, after: PyRef<'_, Sequence>) -> Self {
        Sequence(self.0.clone().then(&after.0))
    }

    fn shift_count(&self) -> usize {
        self.0.shift_count()
    }

    fn pair_count(&self) -> usize {
        self.0.pair_count()
    }

    /// Index map on `[lo, hi]` when the word acts as a permutation.
    fn as_permutation(&self, lo: i64, hi: i64) -> PyResult<BTreeMap<i64, i64>> {
        self.0.as_permutation(lo..=hi).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Sequence({} shifts, {} pairs)", self.0.shift_count(), self.0.pair_count())
    }
}

#[pyclass(name = "TransferPlan", module = "l2control_py", get_all)]
struct TransferPlan {
    epsilon: f64,
    n: u64,
    alpha: f64,
    beta: f64,
    certified_bound: f64,
    sequence: Sequence,
    to_pivot: Sequence,
    from_pivot: Sequence,
}

#[pyfunction]
fn synthesize_from_e0(target: PyRef<'_, State>) -> PyResult<Sequence> {
    synthesis::synthesize_from_e0(&target.0).map(Sequence).map_err(err)
}

#[pyfunction]
fn synthesize_transfer(a: PyRef<'_, State>, b: PyRef<'_, State>, epsilon: f64) -> PyResult<TransferPlan> {
    let p = synthesis::synthesize_transfer(&a.0, &b.0, epsilon).map_err(err)?;
    Ok(TransferPlan {
        epsilon: p.epsilon,
        n: p.n,
        alpha: p.alpha,
        beta: p.beta,
        certified_bound: p.certified_bound,
        to_pivot: Sequence(p.to_pivot()),
        from_pivot: Sequence(p.from_pivot()),
        sequence: Sequence(p.sequence),
    })
}

type WitnessTuple = (Sequence, Complex64, Vec<(i64, i64)>);

/// Returns `(sequence, inner, factors)` with factors as `(k, l)` swap ranges.
#[pyfunction]
#[pyo3(signature = (a, b, max_depth = synthesis::DEFAULT_MAX_DEPTH))]
fn density_witness(a: PyRef<'_, State>, b: PyRef<'_, State>, max_depth: usize) -> PyResult<WitnessTuple> {
    let w = synthesis::density_witness(&a.0, &b.0, max_depth).map_err(err)?;
    let factors = w.factors.iter().filter_map(DerivedOp::transposition).map(|(k, m)| (k, m - k)).collect();
    Ok((Sequence(w.sequence), w.inner, factors))
}

/// Pulse schedule as JSON text.
#[pyfunction]
fn compile_pulses(seq: PyRef<'_, Sequence>) -> String {
    format::schedule_to_json(&rotator::compile_pulses(&seq.0))
}

/// `(delta, alpha, theta, beta)` for a row-major 2x2 unitary.
#[pyfunction]
fn zyz_decompose(m: [[Complex64; 2]; 2]) -> PyResult<(f64, f64, f64, f64)> {
    let v = PairUnitary::new([m[0][0], m[0][1], m[1][0], m[1][1]]).map_err(err)?;
    let a = zyz(&v).map_err(err)?;
    Ok((a.delta, a.alpha, a.theta, a.beta))
}

#[pyfunction]
fn level_energy(k: i64) -> f64 {
    rotator::level_energy(k)
}

#[pyfunction]
fn transition_frequency(n: i64) -> f64 {
    rotator::transition_frequency(n)
}

/// Returns `(all_passed, report_text)`.
#[pyfunction]
#[pyo3(signature = (seed = 0, tol = None))]
fn selfcheck(seed: u64, tol: Option<f64>) -> (bool, String) {
    let report = sc::run(seed, &sc::Options { tolerance: tol });
    (report.all_passed(), report.render())
}

#[pymodule]
fn l2control_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("L2ControlError", m.py().get_type::<L2ControlError>())?;
    m.add_class::<State>()?;
    m.add_class::<Sequence>()?;
    m.add_class::<TransferPlan>()?;
    m.add_function(wrap_pyfunction!(synthesize_from_e0, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_transfer, m)?)?;
    m.add_function(wrap_pyfunction!(density_witness, m)?)?;
    m.add_function(wrap_pyfunction!(compile_pulses, m)?)?;
    m.add_function(wrap_pyfunction!(zyz_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(level_energy, m)?)?;
    m.add_function(wrap_pyfunction!(transition_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(selfcheck, m)?)?;
    Ok(())
}
