//! Seeded invariant suite.
//!
//! Every check draws its trials from its own ChaCha stream keyed by the seed,
//! the check name and the trial index, so a report depends on the seed and
//! the tolerance override only.

use num_complex::Complex64;
use serde::Serialize;

use crate::group::{zyz_decompose, ControlOp, DerivedOp, PairUnitary};
use crate::random::{self, trial_rng};
use crate::rotator::{compile_pulses, level_energy, transition_frequency, Pulse};
use crate::state::SparseState;
use crate::synthesis::{density_witness, synthesize_staircase, synthesize_transfer, WITNESS_TOL};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub trials: usize,
    /// Largest observed error; for counting checks, the number of failures.
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per check followed by a summary line.
    pub fn render(&self) -> String {
        let mut out = format!("selfcheck seed={}\n", self.seed);
        for c in &self.checks {
            out.push_str(&format!(
                "{} {:<30} trials={:<6} worst={:.3e} tol={:.1e}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.trials,
                c.worst,
                c.tolerance
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

/// Tolerance override: when set, replaces every floating-point tolerance.
/// Counting checks keep a tolerance of zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub tolerance: Option<f64>,
}

struct Check {
    name: &'static str,
    tolerance: f64,
    trials: usize,
    worst: f64,
}

impl Check {
    fn new(name: &'static str, tolerance: f64, opts: &Options) -> Self {
        let tolerance = if tolerance > 0.0 { opts.tolerance.unwrap_or(tolerance) } else { 0.0 };
        Self { name, tolerance, trials: 0, worst: 0.0 }
    }

    fn record(&mut self, err: f64) {
        self.trials += 1;
        if err.is_nan() || err > self.worst {
            self.worst = if err.is_nan() { f64::INFINITY } else { err };
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            trials: self.trials,
            worst: self.worst,
            tolerance: self.tolerance,
            passed: self.worst <= self.tolerance,
        }
    }
}

pub fn run(seed: u64, opts: &Options) -> Report {
    let checks = vec![
        norm_preservation(seed, opts),
        pair_locality(seed, opts),
        shift_bijectivity(seed, opts),
        inner_norm_consistency(seed, opts),
        swap_range_transposition(opts),
        swap_range_involution(seed, opts),
        conjugation_coherence(seed, opts),
        inverse_roundtrip(seed, opts),
        permutation_inverse_identity(seed, opts),
        zyz_reconstruction(seed, opts),
        staircase_exactness(seed, opts),
        staircase_bookkeeping(seed, opts),
        transfer_certificate(seed, opts),
        transfer_pivot(seed, opts),
        density_witnesses(seed, opts),
        rotator_spectrum(opts),
        compilation_soundness(seed, opts),
    ];
    Report { seed, checks }
}

fn norm_preservation(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("norm_preservation", 1e-12, opts);
    for i in 0..50 {
        let mut r = trial_rng(seed, c.name, i);
        let a = random::state(&mut r, 6, 0.7);
        let seq = random::sequence(&mut r, 10_000);
        let drift = (a.apply_sequence(&seq).norm() - a.norm()).abs();
        c.record(drift * 1e4 / seq.len() as f64);
    }
    c.finish()
}

fn pair_locality(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("pair_locality", 0.0, opts);
    for i in 0..200 {
        let mut r = trial_rng(seed, c.name, i);
        let a = random::state(&mut r, 5, 0.8);
        let out = a.apply_op(&ControlOp::Pair(random::unitary(&mut r)));
        let moved = a
            .iter()
            .filter(|(k, _)| *k != 0 && *k != 1)
            .filter(|&(k, v)| out.get(k).re.to_bits() != v.re.to_bits() || out.get(k).im.to_bits() != v.im.to_bits())
            .count();
        let extra = out.support().filter(|&k| k != 0 && k != 1 && a.get(k) == Complex64::default()).count();
        c.record((moved + extra) as f64);
    }
    c.finish()
}

fn shift_bijectivity(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("shift_bijectivity", 0.0, opts);
    for i in 0..200 {
        let mut r = trial_rng(seed, c.name, i);
        let a = random::state(&mut r, 6, 0.6);
        let up_down = a.apply_op(&ControlOp::ShiftUp).apply_op(&ControlOp::ShiftDown);
        let down_up = a.apply_op(&ControlOp::ShiftDown).apply_op(&ControlOp::ShiftUp);
        c.record(f64::from(u8::from(up_down != a) + u8::from(down_up != a)));
    }
    c.finish()
}

fn inner_norm_consistency(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("inner_norm_consistency", 1e-14, opts);
    for i in 0..200 {
        let mut r = trial_rng(seed, c.name, i);
        let a = random::state(&mut r, 6, 0.6);
        let ip = a.inner(&a);
        c.record((a.norm().powi(2) - ip.re).abs().max(ip.im.abs()));
    }
    c.finish()
}

fn swap_range_transposition(opts: &Options) -> CheckResult {
    let mut c = Check::new("swap_range_transposition", 0.0, opts);
    for k in -6..=6 {
        for l in 1..=12 {
            let seq = DerivedOp::SwapRange { k, l }.expand().expect("l >= 1");
            let map = seq.as_permutation(-20..=20).expect("swap words are permutations");
            let wrong = map
                .iter()
                .filter(|&(&p, &q)| {
                    q != if p == k {
                        k + l
                    } else if p == k + l {
                        k
                    } else {
                        p
                    }
                })
                .count();
            c.record(wrong as f64);
        }
    }
    c.finish()
}

fn swap_range_involution(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("swap_range_involution", 1e-13, opts);
    for i in 0..200 {
        let mut r = trial_rng(seed, c.name, i);
        let a = random::state(&mut r, 8, 0.7);
        let k = rand::Rng::gen_range(&mut r, -8..=8);
        let l = rand::Rng::gen_range(&mut r, 1..=10);
        let seq = DerivedOp::SwapRange { k, l }.expand().expect("l >= 1");
        let once = a.apply_sequence(&seq);
        let twice = once.apply_sequence(&seq);
        let expected = SparseState::from_entries(a.iter().map(|(p, v)| {
            (
                if p == k {
                    k + l
                } else if p == k + l {
                    k
                } else {
                    p
                },
                v,
            )
        }));
        c.record(twice.distance(&a).max(once.distance(&expected)));
    }
    c.finish()
}

fn conjugation_coherence(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("conjugation_coherence", 1e-13, opts);
    for i in 0..200 {
        let mut r = trial_rng(seed, c.name, i);
        let a = random::state(&mut r, 6, 0.7);
        let n = rand::Rng::gen_range(&mut r, -6..=6);
        let v = random::unitary(&mut r);
        let derived = a.apply_sequence(&DerivedOp::PairAt(n, v).expand().expect("PairAt expands"));
        let mut step = a.clone();
        for _ in 0..n.abs() {
            step = step.apply_op(if n > 0 { &ControlOp::ShiftDown } else { &ControlOp::ShiftUp });
        }
        step = step.apply_op(&ControlOp::Pair(v));
        for _ in 0..n.abs() {
            step = step.apply_op(if n > 0 { &ControlOp::ShiftUp } else { &ControlOp::ShiftDown });
        }
        let via_pair = a.apply_sequence(&DerivedOp::PairAt(n, PairUnitary::swap()).expand().expect("expands"));
        let via_swap = a.apply_sequence(&DerivedOp::Swap(n).expand().expect("expands"));
        let moved = SparseState::basis(n).apply_sequence(&DerivedOp::Swap(n).expand().expect("expands"));
        let basis_err = moved.distance(&SparseState::basis(n + 1));
        c.record(derived.distance(&step).max(via_pair.distance(&via_swap)).max(basis_err));
    }
    c.finish()
}

fn inverse_roundtrip(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("inverse_roundtrip", 1e-12, opts);
    for i in 0..200 {
        let mut r = trial_rng(seed, c.name, i);
        let a = random::state(&mut r, 5, 0.7);
        let seq = random::sequence(&mut r, 100);
        let back = a.apply_sequence(&seq).apply_sequence(&seq.inverse());
        c.record(back.distance(&a));
    }
    c.finish()
}

fn permutation_inverse_identity(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("permutation_inverse_identity", 0.0, opts);
    for i in 0..200 {
        let mut r = trial_rng(seed, c.name, i);
        let seq = random::permutation_sequence(&mut r, 60);
        let round = seq.clone().then(&seq.inverse());
        let map = round.as_permutation(-15..=15).expect("permutation words");
        c.record(map.iter().filter(|(p, q)| p != q).count() as f64);
    }
    c.finish()
}

fn zyz_reconstruction(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("zyz_reconstruction", 1e-12, opts);
    for i in 0..1000 {
        let mut r = trial_rng(seed, c.name, i);
        let v = random::unitary(&mut r);
        let err = match zyz_decompose(&v) {
            Ok(a) => a.matrix().max_diff(&v),
            Err(_) => f64::INFINITY,
        };
        c.record(err);
    }
    c.finish()
}

fn random_target(seed: u64, name: &str, i: u64) -> (i64, SparseState) {
    let mut r = trial_rng(seed, name, i);
    let n = rand::Rng::gen_range(&mut r, 1..=8);
    let fill = rand::Rng::gen_range(&mut r, 0.3..=1.0);
    (n, random::state(&mut r, n, fill))
}

fn staircase_exactness(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("staircase_exactness", 1e-10, opts);
    for i in 0..1000 {
        let (n, target) = random_target(seed, c.name, i);
        let err = match synthesize_staircase(&target) {
            Ok(stair) if stair.composite_count() as i64 <= 2 * n + 1 => {
                let out = SparseState::basis(0).apply_sequence(&stair.sequence());
                1.0 - target.inner(&out).norm()
            }
            _ => f64::INFINITY,
        };
        c.record(err);
    }
    c.finish()
}

/// Residual law and the empty staging slot, checked step by step.
fn staircase_bookkeeping(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("staircase_bookkeeping", 1e-12, opts);
    for i in 0..200 {
        let (_, target) = random_target(seed, c.name, i);
        let Ok(stair) = synthesize_staircase(&target) else {
            c.record(f64::INFINITY);
            continue;
        };
        let mut state = SparseState::basis(0);
        let mut placed = 0.0;
        let mut prev_residual = 1.0;
        let mut err: f64 = 0.0;
        for step in &stair.steps {
            err = err.max(state.get(1).norm());
            state = state.apply_sequence(&step.sequence());
            placed += target.get(step.destination).norm_sqr();
            err = err.max((step.residual.powi(2) - (1.0 - placed)).abs());
            err = err.max((state.get(0).norm_sqr() - step.residual.powi(2)).abs());
            if step.residual > prev_residual {
                err = f64::INFINITY;
            }
            prev_residual = step.residual;
        }
        c.record(err);
    }
    c.finish()
}

const EPSILONS: [f64; 4] = [0.3, 0.1, 0.03, 0.01];

fn transfer_pair(seed: u64, name: &str, i: u64) -> (SparseState, SparseState) {
    let mut r = trial_rng(seed, name, i);
    let draw = |r: &mut random::TrialRng| {
        let ratio = rand::Rng::gen_range(r, 0.3..0.85);
        let center = rand::Rng::gen_range(r, -4..=4);
        random::geometric_state(r, ratio, center, 40)
    };
    let a = draw(&mut r);
    let b = draw(&mut r);
    (a, b)
}

fn transfer_certificate(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("transfer_certificate", 0.0, opts);
    for i in 0..200 {
        let (a, b) = transfer_pair(seed, c.name, i);
        for eps in EPSILONS {
            let err = match synthesize_transfer(&a, &b, eps) {
                Ok(plan) => {
                    let d = a.apply_sequence(&plan.sequence).distance(&b);
                    let over = (d - plan.certified_bound).max(plan.certified_bound - 3.0 * eps);
                    if plan.alpha > 1.0 - eps && plan.beta > 1.0 - eps {
                        over.max(0.0)
                    } else {
                        f64::INFINITY
                    }
                }
                Err(_) => f64::INFINITY,
            };
            c.record(err);
        }
    }
    c.finish()
}

fn transfer_pivot(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("transfer_pivot", 1e-10, opts);
    for i in 0..100 {
        let (a, b) = transfer_pair(seed, c.name, i);
        let eps = EPSILONS[i as usize % EPSILONS.len()];
        let err = match synthesize_transfer(&a, &b, eps) {
            Ok(plan) => {
                let mid = a.truncate(plan.n).0.apply_sequence(&plan.to_pivot());
                (mid.norm() - plan.alpha).abs().max((mid.get(0) - Complex64::new(plan.alpha, 0.0)).norm())
            }
            Err(_) => f64::INFINITY,
        };
        c.record(err);
    }
    c.finish()
}

fn density_witnesses(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("density_witness", 0.0, opts);
    for i in 0..500 {
        let mut r = trial_rng(seed, c.name, i);
        let fill = rand::Rng::gen_range(&mut r, 0.2..=1.0);
        let a = random::state(&mut r, 4, fill);
        let b = match i % 3 {
            0 => SparseState::basis(rand::Rng::gen_range(&mut r, -4..=4)),
            1 => {
                let fill = rand::Rng::gen_range(&mut r, 0.2..=1.0);
                random::state(&mut r, 4, fill)
            }
            _ => random::orthogonalize(&a, &random::state(&mut r, 4, 1.0)).unwrap_or_else(|| SparseState::basis(0)),
        };
        let failed = match density_witness(&a, &b, 3) {
            Ok(w) => {
                let recomputed = b.inner(&a.apply_sequence(&w.sequence));
                w.inner.norm() <= WITNESS_TOL || (recomputed - w.inner).norm() > 1e-14 || w.factors.len() > 3
            }
            Err(_) => true,
        };
        c.record(f64::from(u8::from(failed)));
    }
    c.finish()
}

fn rotator_spectrum(opts: &Options) -> CheckResult {
    let mut c = Check::new("rotator_spectrum", 0.0, opts);
    for n in -50..=50 {
        let gap = (level_energy(n + 1) - level_energy(n)).abs();
        c.record((transition_frequency(n) - gap).abs() + (level_energy(n) - (n * n) as f64).abs());
    }
    c.record((level_energy(3) - 9.0).abs() + (transition_frequency(0) - 1.0).abs());
    c.finish()
}

fn compilation_soundness(seed: u64, opts: &Options) -> CheckResult {
    let mut c = Check::new("compilation_soundness", 1e-10, opts);
    for i in 0..100 {
        let mut r = trial_rng(seed, c.name, i);
        let len = rand::Rng::gen_range(&mut r, 0..=200);
        let seq = random::sequence(&mut r, len);
        let schedule = compile_pulses(&seq);
        let rebuilt = schedule.expand();
        let mut err: f64 = 0.0;
        for _ in 0..10 {
            let a = random::state(&mut r, 6, 0.7);
            err = err.max(a.apply_sequence(&seq).distance(&a.apply_sequence(&rebuilt)));
        }
        let bad_freq = schedule.pulses.iter().any(|p| {
            matches!(*p, Pulse::ResonantPair { pair_index, frequency, .. } if frequency != (2 * pair_index + 1).abs() as f64)
        });
        let kicks_before = seq.iter().filter(|op| op.is_shift()).count();
        if bad_freq || schedule.kick_count() > kicks_before || schedule.pulses.len() > seq.len() {
            err = f64::INFINITY;
        }
        c.record(err);
    }
    c.finish()
}
