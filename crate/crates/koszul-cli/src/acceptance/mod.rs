//! The acceptance suite: twelve criteria, each reported as one line.
//!
//! Every criterion draws from its own random stream `gen::rng(seed, id)`, so the
//! result of one criterion never depends on which others ran. Output carries no
//! timings and is byte-identical across runs with the same seed.

mod algebraic;
mod categorical;
mod modules;

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::gen;

pub use algebraic::bijection;

pub(crate) const BUDGET: u128 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: u64,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

type Check = fn(&mut ChaCha8Rng) -> Result<String, String>;

pub const NAMES: [&str; 12] = [
    "cobar of random curved coalgebras squares to zero",
    "reduced bar validates and matches the nonreduced bar",
    "MC elements, cobar functors and bar maps agree",
    "cobar-bar of S(n) is S(n)",
    "counit is a quasi-isomorphism in the window",
    "Lurie nerve agrees with the MC nerve",
    "nerve of A2 is the nerve of its ordinary category",
    "L of the 2-sphere",
    "twisted chains: subset formula, untwisting, curvature",
    "curved MC and morphisms agree with their uncurved forms",
    "free-cofree adjunction certificates",
    "output is deterministic",
];

fn check(id: u64) -> Option<Check> {
    Some(match id {
        1 => algebraic::cobar_squares_to_zero,
        2 => categorical::bar_reduced_nonreduced,
        3 => algebraic::triple_bijection,
        4 => categorical::cobar_bar_spheres,
        5 => categorical::counit,
        6 => categorical::lurie_mc,
        7 => categorical::a2_nerve,
        8 => categorical::l_sphere,
        9 => algebraic::simplicial_chains,
        10 => algebraic::uncurved_forms,
        11 => modules::fg_certificates,
        _ => return None,
    })
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

/// Runs one criterion. Criterion 12 needs two separate invocations and is reported
/// as skipped here; see [`determinism`].
pub fn run_one(seed: u64, id: u64) -> Outcome {
    let name = NAMES[(id - 1) as usize];
    let Some(f) = check(id) else {
        return Outcome { id, name, status: Status::Skipped, detail: "compare two invocations byte for byte".into() };
    };
    let mut rng = gen::rng(seed, id);
    let (status, detail) = match catch_unwind(AssertUnwindSafe(|| f(&mut rng))) {
        Ok(Ok(d)) => (Status::Pass, d),
        Ok(Err(d)) => (Status::Fail, d),
        Err(p) => (Status::Fail, format!("panicked: {}", panic_message(p))),
    };
    Outcome { id, name, status, detail }
}

/// Runs the selected criteria on scoped threads and returns them in id order.
pub fn run(seed: u64, ids: &[u64]) -> Vec<Outcome> {
    let mut ids: Vec<u64> = ids.iter().copied().filter(|i| (1..=12).contains(i)).collect();
    ids.sort_unstable();
    ids.dedup();
    std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|&id| s.spawn(move || run_one(seed, id))).collect();
        handles.into_iter().map(|h| h.join().expect("criteria catch their own panics")).collect()
    })
}

/// Criterion 12 from two captured outputs of the same command.
pub fn determinism(first: &[u8], second: &[u8]) -> Outcome {
    let (status, detail) = if first == second {
        (Status::Pass, format!("{} bytes, identical", first.len()))
    } else {
        let at = first.iter().zip(second).position(|(a, b)| a != b).unwrap_or(first.len().min(second.len()));
        (Status::Fail, format!("outputs differ at byte {at}"))
    };
    Outcome { id: 12, name: NAMES[11], status, detail }
}

pub fn to_json(seed: u64, outcomes: &[Outcome]) -> String {
    let criteria: Vec<_> = outcomes
        .iter()
        .map(|o| json!({ "id": o.id, "name": o.name, "status": o.status.as_str(), "detail": o.detail }))
        .collect();
    let passed = outcomes.iter().filter(|o| o.status == Status::Pass).count();
    let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
    let mut s = serde_json::to_string_pretty(&json!({
        "seed": seed,
        "criteria": criteria,
        "passed": passed,
        "failed": failed,
    }))
    .expect("plain JSON");
    s.push('\n');
    s
}

pub fn line(o: &Outcome) -> String {
    format!("criterion {:>2} {:<7} {}: {}", o.id, o.status.as_str().to_uppercase(), o.name, o.detail)
}

pub fn to_text(outcomes: &[Outcome]) -> String {
    outcomes.iter().map(|o| line(o) + "\n").collect()
}
