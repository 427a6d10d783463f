mod common;

use std::collections::HashSet;

use common::{all_vectors, brute_deltas, brute_syndromes, random_full_rank, wt};
use fupdate::fic::canonical_key;
use fupdate::problem::normalize;
use fupdate::{Error, FieldSpec, FunctionUpdateProblem, Limits, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng) -> FunctionUpdateProblem {
    let q = [2, 3, 4][rng.random_range(0..3)];
    let field = FieldSpec::gf(q).unwrap();
    let m = rng.random_range(1..=4);
    let n = rng.random_range(m..=if q == 4 { 5 } else { 6 });
    let eps = rng.random_range(1..=2);
    FunctionUpdateProblem::new(random_full_rank(rng, &field, m, n), eps).unwrap()
}

#[test]
fn sets_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let lim = Limits::default();
    for _ in 0..60 {
        let p = random_instance(&mut rng);
        let sets = p.interference(&lim).unwrap();
        let want: HashSet<Vec<u32>> = brute_deltas(p.a(), p.epsilon()).into_iter().collect();
        let got: HashSet<Vec<u32>> = sets.deltas().iter().cloned().collect();
        assert_eq!(got.len(), sets.deltas().len(), "no duplicates");
        assert_eq!(got, want);
        assert!(sets.deltas().windows(2).all(|w| canonical_key(&w[0]) < canonical_key(&w[1])));

        let syn: HashSet<Vec<u32>> = sets.syndromes().iter().cloned().collect();
        assert_eq!(syn.len(), sets.syndromes().len());
        assert_eq!(syn, brute_syndromes(p.a(), p.epsilon()));
        let eta = sets.syndromes().iter().map(|z| wt(z)).max().unwrap_or(0);
        assert_eq!(sets.eta(), eta);
        assert!(sets.eta() <= p.m());
        for i in 0..sets.syndromes().len() {
            assert_eq!(p.a().mul_vec(sets.representative(i)).unwrap(), sets.syndromes()[i]);
        }
    }
}

#[test]
fn syndromes_closed_under_scalars() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let lim = Limits::default();
    for _ in 0..40 {
        let p = random_instance(&mut rng);
        let f = p.field().clone();
        let sets = p.interference(&lim).unwrap();
        for z in sets.syndromes() {
            for alpha in 1..f.order() {
                let scaled: Vec<u32> = z.iter().map(|&x| f.mul(alpha, x)).collect();
                assert!(sets.contains_syndrome(&scaled));
            }
        }
    }
}

#[test]
fn low_weight_ball_is_contained_after_normalizing() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let lim = Limits::default();
    for _ in 0..40 {
        let p = random_instance(&mut rng);
        let (p2, k) = normalize(&p).unwrap();
        let k_inv = k.inverse().unwrap();
        let sets = p.interference(&lim).unwrap();
        let sets2 = p2.interference(&lim).unwrap();
        for u in all_vectors(p.m(), p.q()) {
            if wt(&u) > 0 && wt(&u) <= 2 * p.epsilon() {
                assert!(sets2.contains_syndrome(&u), "{u:?}");
                // For A itself the ball is moved by K⁻¹.
                assert!(sets.contains_syndrome(&k_inv.mul_vec(&u).unwrap()));
            }
        }
    }
}

#[test]
fn ball_need_not_be_contained_without_normalizing() {
    let f = FieldSpec::gf(2).unwrap();
    let a = Matrix::from_rows(&f, &[[1, 1, 1], [0, 1, 1], [0, 0, 1]]).unwrap();
    let p = FunctionUpdateProblem::new(a, 1).unwrap();
    let sets = p.interference(&Limits::default()).unwrap();
    assert_eq!(sets.syndromes().len(), 6);
    assert!(!sets.contains_syndrome(&[1, 0, 1]));
}

#[test]
fn invariant_under_invertible_row_operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let lim = Limits::default();
    for _ in 0..10 {
        let p = random_instance(&mut rng);
        let base: HashSet<Vec<u32>> = p.interference(&lim).unwrap().deltas().iter().cloned().collect();
        for _ in 0..20 {
            let k = random_full_rank(&mut rng, p.field(), p.m(), p.m());
            let pk = FunctionUpdateProblem::new(k.mul(p.a()).unwrap(), p.epsilon()).unwrap();
            let d: HashSet<Vec<u32>> = pk.interference(&lim).unwrap().deltas().iter().cloned().collect();
            assert_eq!(d, base);
        }
    }
}

#[test]
fn normalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let lim = Limits::default();
    for _ in 0..30 {
        let p = random_instance(&mut rng);
        let (p2, k) = normalize(&p).unwrap();
        assert_eq!(*p2.a(), k.mul(p.a()).unwrap());
        let pivots = p.a().rref().pivots;
        assert!(p2.a().select_columns(&pivots).is_identity());
        assert_eq!(p.interference(&lim).unwrap().deltas(), p2.interference(&lim).unwrap().deltas());
    }
    let f = FieldSpec::gf(2).unwrap();
    let a = Matrix::from_rows(&f, &[[1, 0, 1], [0, 1, 1]]).unwrap();
    let (_, k) = normalize(&FunctionUpdateProblem::new(a, 1).unwrap()).unwrap();
    assert!(k.is_identity());
}

#[test]
fn striped_single_row_eta() {
    let lim = Limits::default();
    for q in [2, 3] {
        let f = FieldSpec::gf(q).unwrap();
        for a in 3..=6 {
            let c = Matrix::from_rows(&f, &[[1, q - 1]]).unwrap();
            let p = FunctionUpdateProblem::striped(c, a, 1).unwrap();
            assert_eq!(p.interference(&lim).unwrap().eta(), 2);
        }
    }
}

#[test]
fn rejects_bad_problems() {
    let f = FieldSpec::gf(2).unwrap();
    let deficient = Matrix::from_rows(&f, &[[1, 1, 0], [1, 1, 0]]).unwrap();
    assert!(matches!(FunctionUpdateProblem::new(deficient.clone(), 1), Err(Error::InvalidProblem(_))));
    assert!(FunctionUpdateProblem::new(Matrix::identity(&f, 2), 0).is_err());
    assert!(FunctionUpdateProblem::striped(deficient, 2, 1).is_err());
    let small = FunctionUpdateProblem::new(Matrix::identity(&f, 2), 1).unwrap();
    assert!(small.naive_optimal());
}

#[test]
fn budget_is_enforced() {
    let f = FieldSpec::gf(2).unwrap();
    let p = FunctionUpdateProblem::new(Matrix::identity(&f, 30), 3).unwrap();
    let lim = Limits { enumeration: 1000, ..Limits::default() };
    assert!(matches!(p.interference(&lim), Err(Error::BudgetExceeded { .. })));
}
