//! Enumeration of vectors over GF(q) in canonical order.
//!
//! Low-weight vectors are ordered by weight, then support (lexicographic on
//! sorted positions), then coefficient tuple (lexicographic, first position
//! most significant). Full spaces are ordered lexicographically as tuples.

use itertools::Itertools;

use crate::exec::Exec;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of nonzero vectors of length `n` over GF(q) with weight at most `w`.
pub fn ball_size(n: usize, w: usize, q: u32) -> u128 {
    (1..=w.min(n)).fold(0u128, |acc, i| {
        let scalars = ((q - 1) as u128).saturating_pow(i as u32);
        acc.saturating_add(binomial(n, i).saturating_mul(scalars))
    })
}

/// `q^m`, saturating.
pub fn space_size(m: usize, q: u32) -> u128 {
    (q as u128).saturating_pow(m as u32)
}

/// Calls `f` on every nonzero coefficient tuple of length `w`, in lexicographic order.
pub fn for_each_coefficients(w: usize, q: u32, mut f: impl FnMut(&[u32])) {
    let mut coeffs = vec![1u32; w];
    loop {
        f(&coeffs);
        let mut i = w;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if coeffs[i] + 1 < q {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = 1;
        }
    }
}

/// All supports of size 1..=max_w in canonical order.
pub fn supports(n: usize, max_w: usize) -> Vec<Vec<usize>> {
    (1..=max_w.min(n)).flat_map(|w| (0..n).combinations(w)).collect()
}

/// Maps `f` over every nonzero vector of weight ≤ `max_w` in canonical order,
/// keeping the `Some` results. `f` receives the support, coefficients and the
/// expanded vector. Parallelism is per support; output order is canonical.
pub fn filter_map_ball<R, F>(n: usize, max_w: usize, q: u32, exec: Exec, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&[usize], &[u32], &[u32]) -> Option<R> + Sync + Send,
{
    filter_map_supports(&supports(n, max_w), n, q, exec, f)
}

/// As [`filter_map_ball`], restricted to vectors of weight exactly `w`.
pub fn filter_map_sphere<R, F>(n: usize, w: usize, q: u32, exec: Exec, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&[usize], &[u32], &[u32]) -> Option<R> + Sync + Send,
{
    let supps: Vec<Vec<usize>> = (0..n).combinations(w).collect();
    filter_map_supports(&supps, n, q, exec, f)
}

fn filter_map_supports<R, F>(supps: &[Vec<usize>], n: usize, q: u32, exec: Exec, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&[usize], &[u32], &[u32]) -> Option<R> + Sync + Send,
{
    exec.map(supps, |s| {
        let mut out = Vec::new();
        let mut y = vec![0u32; n];
        for_each_coefficients(s.len(), q, |c| {
            for (&i, &v) in s.iter().zip(c) {
                y[i] = v;
            }
            if let Some(r) = f(s, c, &y) {
                out.push(r);
            }
        });
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

/// The vector at position `idx` of F_q^m in lexicographic order.
pub fn unrank(mut idx: u128, m: usize, q: u32) -> Vec<u32> {
    let mut v = vec![0u32; m];
    for slot in v.iter_mut().rev() {
        *slot = (idx % q as u128) as u32;
        idx /= q as u128;
    }
    v
}

/// Position of `v` in lexicographic order.
pub fn rank(v: &[u32], q: u32) -> u128 {
    v.iter().fold(0u128, |acc, &x| acc * q as u128 + x as u128)
}
