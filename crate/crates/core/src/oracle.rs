//! Exact optimal codelength by exhaustive subspace search, and the bound
//! bracket around it.
//!
//! `S` is valid iff `ker S` misses every syndrome, so the optimal codelength
//! is `m − max{dim W : W ∩ I_FU = ∅}`. The search enumerates each subspace
//! once through its greedy basis: `b_1 = min W∖{0}`, `b_{i+1} = min W∖⟨b_1..b_i⟩`
//! in lexicographic order. Only practical for small `q^m`.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use crate::codes::{kq, Source};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::gf::FieldSpec;
use crate::matrix::Matrix;
use crate::problem::{FunctionUpdateProblem, InterferenceSets};
use crate::vectors;

/// Bracket `lower ≤ l_opt ≤ upper`.
///
/// `lower = m − k_q(m, 2ε+1)` and `upper = min(m, m − k_q(m, η+1))`. When a
/// `k_q` value is itself only bracketed, the looser end is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
    pub eta: usize,
    pub lower_source: Source,
    pub upper_source: Source,
}

pub fn bounds(problem: &FunctionUpdateProblem, sets: &InterferenceSets, limits: &Limits) -> Bounds {
    let m = problem.m();
    let field = problem.field();
    let lo = kq(field, m, 2 * problem.epsilon() + 1, limits);
    let eta = sets.eta();
    let hi = kq(field, m, eta + 1, limits);
    Bounds {
        lower: m - lo.k_upper,
        upper: m - hi.k_lower,
        eta,
        lower_source: lo.source,
        upper_source: hi.source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Optimal codelength when certified; otherwise the best found.
    pub l_opt: usize,
    /// Encoder realizing `l_opt`; its kernel is `avoiding`.
    pub witness: Matrix,
    /// Greedy basis of the largest syndrome-free subspace found.
    pub avoiding: Matrix,
    /// The search was exhausted (or hit the bound), so `l_opt` is optimal.
    pub certified: bool,
    /// `lower ≤ l_opt` always; equals `l_opt` when certified.
    pub lower: usize,
    pub nodes: u64,
}

impl OracleResult {
    pub fn avoided_dim(&self) -> usize {
        self.avoiding.rows()
    }
}

struct Space {
    m: usize,
    q: u32,
    field: FieldSpec,
    bad: Vec<bool>,
}

impl Space {
    fn axpy(&self, x: usize, alpha: u32, v: &[u32]) -> usize {
        let xs = vectors::unrank(x as u128, self.m, self.q);
        let f = &self.field;
        let sum: Vec<u32> = xs.iter().zip(v).map(|(&a, &b)| f.add(a, f.mul(alpha, b))).collect();
        vectors::rank(&sum, self.q) as usize
    }

    /// Elements of `U + ⟨v⟩` outside `U`, or `None` if one is a syndrome.
    fn coset_elements(&self, span: &[usize], v: usize) -> Option<Vec<usize>> {
        let vv = vectors::unrank(v as u128, self.m, self.q);
        let mut out = Vec::with_capacity(span.len() * (self.q as usize - 1));
        for &u in span {
            for alpha in 1..self.q {
                let x = self.axpy(u, alpha, &vv);
                if self.bad[x] {
                    return None;
                }
                out.push(x);
            }
        }
        Some(out)
    }
}

struct Search<'a> {
    space: &'a Space,
    cap: usize,
    budget: u64,
    nodes: &'a AtomicU64,
    exhausted: &'a AtomicBool,
    /// Lowest top-level branch that reached the cap; others above it may stop.
    capped: &'a AtomicUsize,
    branch: usize,
    best: Vec<usize>,
}

impl Search<'_> {
    fn should_stop(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed) || self.capped.load(Ordering::Relaxed) < self.branch
    }

    /// `span` is `U` (with 0), `basis` its greedy basis, `open` the vectors
    /// above the last basis vector that may still extend `U`.
    fn dfs(&mut self, span: &[usize], basis: &mut Vec<usize>, open: &[usize]) {
        if basis.len() > self.best.len() {
            self.best = basis.clone();
            if self.best.len() >= self.cap {
                self.capped.fetch_min(self.branch, Ordering::Relaxed);
            }
        }
        if self.best.len() >= self.cap || self.should_stop() {
            return;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return;
        }
        // Extending by j more dimensions adds (q^j − 1)|U| vectors; their
        // normalized representatives all lie in `open`.
        let q = self.space.q as u128;
        let mut max_more = 0;
        while max_more + basis.len() < self.cap
            && (q.pow(max_more as u32 + 1) - 1) / (q - 1) * span.len() as u128 <= open.len() as u128
        {
            max_more += 1;
        }
        if basis.len() + max_more <= self.best.len() {
            return;
        }
        for (pos, &v) in open.iter().enumerate() {
            let Some(fresh) = self.space.coset_elements(span, v) else {
                continue;
            };
            if fresh.iter().any(|&x| x < v) {
                continue;
            }
            let mut child_span = span.to_vec();
            child_span.extend_from_slice(&fresh);
            let child_open: Vec<usize> = open[pos + 1..]
                .iter()
                .copied()
                .filter(|&x| {
                    !fresh.contains(&x) && self.space.coset_elements(&child_span, x).is_some()
                })
                .collect();
            basis.push(v);
            self.dfs(&child_span, basis, &child_open);
            basis.pop();
            if self.best.len() >= self.cap || self.should_stop() {
                return;
            }
        }
    }
}

/// Exact `l_opt` for problems with `q^m ≤ limits.oracle_space`.
///
/// Returns a non-certified result when the node budget runs out.
pub fn optimal_codelength(problem: &FunctionUpdateProblem, limits: &Limits) -> Result<OracleResult> {
    let sets = problem.interference(limits)?;
    optimal_with_sets(problem, &sets, limits)
}

pub fn optimal_with_sets(
    problem: &FunctionUpdateProblem,
    sets: &InterferenceSets,
    limits: &Limits,
) -> Result<OracleResult> {
    let (m, q) = (problem.m(), problem.q());
    let size = vectors::space_size(m, q);
    if size > limits.oracle_space {
        return Err(Error::BudgetExceeded { needed: size, budget: limits.oracle_space });
    }
    let mut bad = vec![false; size as usize];
    for z in sets.syndromes() {
        bad[vectors::rank(z, q) as usize] = true;
    }
    let space = Space { m, q, field: problem.field().clone(), bad };
    let b = bounds(problem, sets, limits);
    // dim W ≤ k_q(m, 2ε+1): the kernel of a valid S is such a code.
    let cap = m - b.lower;

    let roots: Vec<usize> = (1..size as usize)
        .filter(|&v| space.coset_elements(&[0], v).is_some_and(|c| c.iter().all(|&x| x >= v)))
        .collect();
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let capped = AtomicUsize::new(usize::MAX);
    let branches = limits.exec.map_range(0..roots.len(), |i| {
        let v = roots[i];
        let span = {
            let mut s = vec![0];
            s.extend(space.coset_elements(&[0], v).expect("root is admissible"));
            s
        };
        let open: Vec<usize> = roots[i + 1..]
            .iter()
            .copied()
            .filter(|&x| space.coset_elements(&span, x).is_some())
            .collect();
        let mut search = Search {
            space: &space,
            cap,
            budget: limits.search_nodes,
            nodes: &nodes,
            exhausted: &exhausted,
            capped: &capped,
            branch: i,
            best: Vec::new(),
        };
        let mut basis = vec![v];
        search.dfs(&span, &mut basis, &open);
        search.best
    });

    let mut best: Vec<usize> = Vec::new();
    for found in branches {
        if found.len() > best.len() {
            best = found;
        }
    }
    let certified = best.len() >= cap || !exhausted.load(Ordering::Relaxed);
    let rows: Vec<Vec<u32>> = best.iter().map(|&v| vectors::unrank(v as u128, m, q)).collect();
    let avoiding = if rows.is_empty() {
        Matrix::zeros(problem.field(), 0, m)
    } else {
        Matrix::from_rows(problem.field(), &rows)?
    };
    let witness = avoiding.orthogonal_complement();
    let l_opt = m - avoiding.rows();
    Ok(OracleResult {
        l_opt,
        witness,
        avoiding,
        certified,
        lower: if certified { l_opt } else { b.lower },
        nodes: nodes.load(Ordering::Relaxed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::problem::is_valid_encoder;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::gf(q).unwrap()
    }

    #[test]
    fn identity_three() {
        let p = FunctionUpdateProblem::new(Matrix::identity(&f(2), 3), 1).unwrap();
        let lim = Limits::default();
        let r = optimal_codelength(&p, &lim).unwrap();
        assert!(r.certified);
        assert_eq!(r.l_opt, 2);
        assert_eq!(r.avoiding.to_rows(), vec![vec![1, 1, 1]]);
        let sets = p.interference(&lim).unwrap();
        let b = bounds(&p, &sets, &lim);
        assert_eq!((b.lower, b.upper), (2, 2));
    }

    #[test]
    fn no_saving_means_naive() {
        let p = FunctionUpdateProblem::new(Matrix::identity(&f(3), 2), 1).unwrap();
        let r = optimal_codelength(&p, &Limits::default()).unwrap();
        assert_eq!(r.l_opt, 2);
        assert!(r.witness.is_identity());
    }

    #[test]
    fn example3_values() {
        for (q, l) in [(2, 3), (4, 2)] {
            let c = Matrix::from_rows(&f(q), &[[1, 1, 1]]).unwrap();
            let p = FunctionUpdateProblem::striped(c, 4, 1).unwrap();
            let r = optimal_codelength(&p, &Limits::default()).unwrap();
            assert!(r.certified);
            assert_eq!(r.l_opt, l);
            assert!(is_valid_encoder(&p, &r.witness, &Limits::default()).unwrap().is_valid());
        }
    }

    #[test]
    fn example1_meets_lower_bound() {
        let a = Matrix::from_rows(
            &f(2),
            &[
                [1, 1, 0, 1, 0, 0, 1, 1],
                [0, 0, 1, 0, 0, 1, 0, 0],
                [1, 0, 0, 1, 0, 0, 1, 1],
                [0, 0, 1, 0, 1, 1, 1, 1],
                [1, 0, 1, 1, 0, 0, 1, 1],
            ],
        )
        .unwrap();
        let p = FunctionUpdateProblem::new(a, 1).unwrap();
        let seq = optimal_codelength(&p, &Limits::default().with_exec(Exec::Sequential)).unwrap();
        let par = optimal_codelength(&p, &Limits::default().with_exec(Exec::Parallel)).unwrap();
        // Drop-one reaches 4, but 5 − k_2(5,3) = 3 is attained.
        assert!(seq.certified);
        assert_eq!(seq.l_opt, 3);
        assert!(is_valid_encoder(&p, &seq.witness, &Limits::default()).unwrap().is_valid());
        assert_eq!(seq.witness, par.witness);
    }

    #[test]
    fn space_guard() {
        let p = FunctionUpdateProblem::new(Matrix::identity(&f(2), 6), 1).unwrap();
        let lim = Limits { oracle_space: 32, ..Limits::default() };
        assert_eq!(
            optimal_codelength(&p, &lim).unwrap_err(),
            Error::BudgetExceeded { needed: 64, budget: 32 }
        );
    }
}
