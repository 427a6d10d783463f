//! Brute-force oracles and random instance generators shared by the
//! integration tests. Nothing here calls the library's enumeration code.
#![allow(dead_code)]

use std::path::PathBuf;

use fupdate::{FieldSpec, FunctionUpdateProblem, Matrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load_problem(name: &str) -> FunctionUpdateProblem {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    fupdate::format::parse_problem(&text).unwrap()
}

pub fn load_matrix(name: &str, field: &FieldSpec) -> Matrix {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    fupdate::format::parse_matrix(&text, Some(field)).unwrap()
}

/// Every vector of F_q^n, first coordinate most significant.
pub fn all_vectors(n: usize, q: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    let mut v = vec![0u32; n];
    loop {
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
        }
        out.push(v.clone());
    }
}

pub fn wt(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// `M·v` by explicit dot products.
pub fn apply(m: &Matrix, v: &[u32]) -> Vec<u32> {
    let f = m.field();
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(0, |acc, j| f.add(acc, f.mul(m.get(i, j), v[j]))))
        .collect()
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// `{y : 0 < wt(y) ≤ 2ε, A·y ≠ 0}` by scanning the whole space.
pub fn brute_deltas(a: &Matrix, eps: usize) -> Vec<Vec<u32>> {
    all_vectors(a.cols(), a.field().order())
        .into_iter()
        .filter(|y| wt(y) > 0 && wt(y) <= 2 * eps && !is_zero(&apply(a, y)))
        .collect()
}

/// The distinct images `A·y` of [`brute_deltas`].
pub fn brute_syndromes(a: &Matrix, eps: usize) -> std::collections::HashSet<Vec<u32>> {
    brute_deltas(a, eps).iter().map(|y| apply(a, y)).collect()
}

/// `H = S·A` is valid iff `H·y ≠ 0` on every delta.
pub fn brute_valid(a: &Matrix, eps: usize, s: &Matrix) -> bool {
    brute_deltas(a, eps).iter().all(|y| !is_zero(&apply(s, &apply(a, y))))
}

/// Minimum number of columns of a parity check that are dependent (its
/// minimum distance), by scanning all nonzero kernel vectors.
pub fn brute_distance(h: &Matrix) -> usize {
    all_vectors(h.cols(), h.field().order())
        .into_iter()
        .filter(|v| wt(v) > 0 && is_zero(&apply(h, v)))
        .map(|v| wt(&v))
        .min()
        .unwrap_or(usize::MAX)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
    let q = field.order();
    let data = (0..rows * cols).map(|_| rng.random_range(0..q)).collect();
    Matrix::new(field, rows, cols, data).unwrap()
}

pub fn random_full_rank(rng: &mut ChaCha8Rng, field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, rows, cols);
        if m.rank() == rows {
            return m;
        }
    }
}

/// Random ε = 1 instance with q ∈ {2, 3}, 2 ≤ m ≤ 4, m ≤ n ≤ 6.
pub fn random_small_instance(rng: &mut ChaCha8Rng) -> FunctionUpdateProblem {
    let q = if rng.random_bool(0.5) { 2 } else { 3 };
    let field = FieldSpec::gf(q).unwrap();
    let m = rng.random_range(2..=4);
    let n = rng.random_range(m..=6);
    FunctionUpdateProblem::new(random_full_rank(rng, &field, m, n), 1).unwrap()
}
