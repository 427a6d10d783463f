//! Round-trip simulation: encode `x + e`, decode against the stale `A·x`,
//! compare with `A(x + e)`.
//!
//! Trial `i` draws from ChaCha8 seeded with the user seed on stream `i`, so
//! results do not depend on scheduling.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::problem::{Decoder, EncoderScheme, FunctionUpdateProblem};
use crate::vectors;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub x: Vec<u32>,
    pub e: Vec<u32>,
    /// Wrong output, or the decoding error.
    pub outcome: std::result::Result<Vec<u32>, Error>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimReport {
    pub trials: u64,
    pub failures: u64,
    pub first_failure: Option<Failure>,
}

/// Largest `q^n` for which exhaustive mode sweeps every `x`.
pub const EXHAUSTIVE_X_LIMIT: u128 = 4096;

fn run_one(
    problem: &FunctionUpdateProblem,
    scheme: &EncoderScheme,
    decoder: &Decoder,
    x: Vec<u32>,
    e: Vec<u32>,
) -> Option<Failure> {
    let f = problem.field();
    let x_new: Vec<u32> = x.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
    let stale = problem.a().mul_vec(&x).expect("length n");
    let want = problem.a().mul_vec(&x_new).expect("length n");
    let c = scheme.encode(&x_new).expect("length n");
    match decoder.decode(&c, &stale) {
        Ok(got) if got == want => None,
        outcome => Some(Failure { x, e, outcome }),
    }
}

fn collect(results: Vec<Option<Failure>>) -> SimReport {
    let trials = results.len() as u64;
    let mut failures = 0;
    let mut first_failure = None;
    for r in results.into_iter().flatten() {
        failures += 1;
        first_failure.get_or_insert(r);
    }
    SimReport { trials, failures, first_failure }
}

/// Random trials: `x` uniform, `wt(e)` uniform in `0..=ε`, uniform support
/// and uniform nonzero coefficients.
pub fn simulate(
    problem: &FunctionUpdateProblem,
    scheme: &EncoderScheme,
    trials: u64,
    seed: u64,
    limits: &Limits,
) -> Result<SimReport> {
    let decoder = Decoder::build(problem, scheme, limits)?;
    let (n, q) = (problem.n(), problem.q());
    let max_w = problem.epsilon().min(n);
    let results = limits.exec.map_range(0..trials as usize, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let x: Vec<u32> = (0..n).map(|_| rng.random_range(0..q)).collect();
        let w = rng.random_range(0..=max_w);
        let mut e = vec![0u32; n];
        for j in sample(&mut rng, n, w) {
            e[j] = rng.random_range(1..q);
        }
        run_one(problem, scheme, &decoder, x, e)
    });
    Ok(collect(results))
}

/// Every `e` with `wt(e) ≤ ε`, against every `x` when `q^n` is at most
/// [`EXHAUSTIVE_X_LIMIT`] and against `x = 0` otherwise.
pub fn simulate_exhaustive(
    problem: &FunctionUpdateProblem,
    scheme: &EncoderScheme,
    limits: &Limits,
) -> Result<SimReport> {
    let decoder = Decoder::build(problem, scheme, limits)?;
    let (n, q) = (problem.n(), problem.q());
    let mut updates = vec![vec![0u32; n]];
    updates.extend(vectors::filter_map_ball(n, problem.epsilon(), q, limits.exec, |_, _, y| {
        Some(y.to_vec())
    }));
    let space = vectors::space_size(n, q);
    let xs = if space <= EXHAUSTIVE_X_LIMIT { space } else { 1 };
    limits.check_enumeration(xs * updates.len() as u128)?;
    let results = limits.exec.map_range(0..xs as usize, |xi| {
        let x = vectors::unrank(xi as u128, n, q);
        updates
            .iter()
            .map(|e| run_one(problem, scheme, &decoder, x.clone(), e.clone()))
            .collect::<Vec<_>>()
    });
    Ok(collect(results.into_iter().flatten().collect()))
}
