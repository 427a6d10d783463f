mod common;

use std::collections::HashSet;

use common::{all_vectors, apply, is_zero};
use fupdate::{FieldSpec, Matrix};
use proptest::prelude::*;

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (prop::sample::select(vec![2u32, 3, 4, 5]), 0..=max_rows, 1..=max_cols)
        .prop_flat_map(|(q, r, c)| {
            prop::collection::vec(0..q, r * c).prop_map(move |data| {
                Matrix::new(&FieldSpec::gf(q).unwrap(), r, c, data).unwrap()
            })
        })
}

/// Every vector in the row space, by enumerating coefficient vectors.
fn span(m: &Matrix) -> HashSet<Vec<u32>> {
    let f = m.field();
    all_vectors(m.rows(), f.order())
        .into_iter()
        .map(|c| {
            (0..m.cols())
                .map(|j| (0..m.rows()).fold(0, |acc, i| f.add(acc, f.mul(c[i], m.get(i, j)))))
                .collect()
        })
        .collect()
}

fn q_pow(q: u32, e: usize) -> usize {
    (q as usize).pow(e as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_transpose_rank(m in matrix_strategy(5, 5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(span(&m).len(), q_pow(m.field().order(), m.rank()));
    }

    #[test]
    fn kernel_matches_brute_force(m in matrix_strategy(4, 5)) {
        let k = m.kernel_basis();
        let q = m.field().order();
        let solutions = all_vectors(m.cols(), q).into_iter().filter(|v| is_zero(&apply(&m, v))).count();
        prop_assert_eq!(k.rows(), m.cols() - m.rank());
        prop_assert_eq!(k.rank(), k.rows());
        prop_assert_eq!(solutions, q_pow(q, k.rows()));
        for row in k.to_rows() {
            prop_assert!(is_zero(&apply(&m, &row)));
        }
    }

    #[test]
    fn complement_round_trip(m in matrix_strategy(4, 5)) {
        let back = m.orthogonal_complement().orthogonal_complement();
        prop_assert!(back.same_row_space(&m).unwrap());
    }

    #[test]
    fn intersection_matches_sets((a, b) in matrix_strategy(3, 4).prop_flat_map(|a| {
        let q = a.field().order();
        let cols = a.cols();
        (Just(a), (0..=3usize).prop_flat_map(move |r| {
            prop::collection::vec(0..q, r * cols).prop_map(move |data| {
                Matrix::new(&FieldSpec::gf(q).unwrap(), r, cols, data).unwrap()
            })
        }))
    })) {
        let expected: HashSet<Vec<u32>> = span(&a).intersection(&span(&b)).cloned().collect();
        let got = a.code_intersection(&b).unwrap();
        prop_assert_eq!(span(&got), expected);
    }

    #[test]
    fn kron_rank_multiplies(c in matrix_strategy(3, 3), a in 1usize..4) {
        let id = Matrix::identity(c.field(), a);
        let k = id.kron(&c).unwrap();
        prop_assert_eq!((k.rows(), k.cols()), (a * c.rows(), a * c.cols()));
        prop_assert_eq!(k.rank(), a * c.rank());
        let cc = c.kron(&c).unwrap();
        prop_assert_eq!(cc.rank(), c.rank() * c.rank());
    }

    #[test]
    fn square_inverse(m in matrix_strategy(4, 4)) {
        prop_assume!(m.rows() == m.cols() && m.rows() > 0);
        let n = m.rows();
        match m.inverse() {
            Ok(inv) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert!(m.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&m).unwrap().is_identity());
            }
            Err(_) => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn multiplication_matches_dot_products(a in matrix_strategy(3, 4), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = a.field().order();
        let v: Vec<u32> = (0..a.cols()).map(|_| rng.random_range(0..q)).collect();
        prop_assert_eq!(a.mul_vec(&v).unwrap(), apply(&a, &v));
        let b = common::random_matrix(&mut rng, a.field(), a.cols(), 2);
        let ab = a.mul(&b).unwrap();
        for j in 0..2 {
            prop_assert_eq!(ab.column(j), apply(&a, &b.column(j)));
        }
    }
}

#[test]
fn rref_is_reduced() {
    let f = FieldSpec::gf(3).unwrap();
    let m = Matrix::from_rows(&f, &[[0, 2, 1, 1], [1, 1, 0, 2], [1, 0, 2, 0]]).unwrap();
    let r = m.rref();
    for (i, &p) in r.pivots.iter().enumerate() {
        assert_eq!(r.reduced.get(i, p), 1);
        for k in 0..r.rank {
            if k != i {
                assert_eq!(r.reduced.get(k, p), 0);
            }
        }
    }
    assert!(r.reduced.same_row_space(&m).unwrap());
}
