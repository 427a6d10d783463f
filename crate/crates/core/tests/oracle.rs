mod common;

use common::{all_vectors, apply, brute_syndromes, is_zero, random_full_rank};
use fupdate::oracle::{bounds, optimal_codelength};
use fupdate::problem::is_valid_encoder;
use fupdate::{Exec, FieldSpec, FunctionUpdateProblem, Limits, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Smallest l for which some l×m matrix is nonzero on every syndrome.
fn brute_l_opt(p: &FunctionUpdateProblem) -> usize {
    let syn: Vec<Vec<u32>> = brute_syndromes(p.a(), p.epsilon()).into_iter().collect();
    let m = p.m();
    for l in 0..m {
        for data in all_vectors(l * m, p.q()) {
            let s = Matrix::new(p.field(), l, m, data).unwrap();
            if syn.iter().all(|z| !is_zero(&apply(&s, z))) {
                return l;
            }
        }
    }
    m
}

fn random_instance(rng: &mut ChaCha8Rng, max_m: usize, max_n: usize) -> FunctionUpdateProblem {
    let q = [2, 3][rng.random_range(0..2)];
    let field = FieldSpec::gf(q).unwrap();
    let m = rng.random_range(2..=max_m);
    let n = rng.random_range(m..=max_n);
    let eps = if n >= 5 && rng.random_bool(0.2) { 2 } else { 1 };
    FunctionUpdateProblem::new(random_full_rank(rng, &field, m, n), eps).unwrap()
}

#[test]
fn optimum_matches_exhaustive_encoder_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let lim = Limits::default();
    let mut done = 0;
    while done < 40 {
        let p = random_instance(&mut rng, 4, 6);
        if p.q() == 3 && p.m() == 4 {
            continue;
        }
        done += 1;
        let r = optimal_codelength(&p, &lim).unwrap();
        assert!(r.certified);
        assert_eq!(r.l_opt, brute_l_opt(&p), "A = {:?}", p.a());
        assert_eq!(r.witness.rows(), r.l_opt);
        assert!(is_valid_encoder(&p, &r.witness, &lim).unwrap().is_valid());
        assert!(r.witness.mul(&r.avoiding.transpose()).unwrap().is_zero());
    }
}

#[test]
fn bounds_sandwich_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let lim = Limits::default();
    for _ in 0..80 {
        let p = random_instance(&mut rng, 5, 7);
        let sets = p.interference(&lim).unwrap();
        let b = bounds(&p, &sets, &lim);
        let r = optimal_codelength(&p, &lim).unwrap();
        assert!(r.certified);
        assert!(b.lower <= r.l_opt && r.l_opt <= b.upper, "{b:?} vs {}", r.l_opt);
        assert!(b.lower >= (2 * p.epsilon()).min(p.m()));
        let full = sets.syndromes().len() as u128 == (p.q() as u128).pow(p.m() as u32) - 1;
        assert_eq!(r.l_opt == p.m(), full);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..20 {
        let p = random_instance(&mut rng, 5, 7);
        let seq = optimal_codelength(&p, &Limits::default().with_exec(Exec::Sequential)).unwrap();
        let par = optimal_codelength(&p, &Limits::default().with_exec(Exec::Parallel)).unwrap();
        assert_eq!((seq.l_opt, &seq.witness), (par.l_opt, &par.witness));
    }
}

#[test]
fn exhausted_budget_is_not_certified() {
    let f = FieldSpec::gf(2).unwrap();
    let p = FunctionUpdateProblem::new(Matrix::identity(&f, 10), 1).unwrap();
    let lim = Limits { search_nodes: 3, ..Limits::default() };
    let r = optimal_codelength(&p, &lim).unwrap();
    assert!(!r.certified);
    assert!(r.lower <= r.l_opt);
    assert!(is_valid_encoder(&p, &r.witness, &lim).unwrap().is_valid());
    let full = optimal_codelength(&p, &Limits::default()).unwrap();
    assert!(full.certified);
    assert_eq!(full.l_opt, 10 - 6);
}
