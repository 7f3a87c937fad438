mod common;

use common::{rng, small_coeff};
use leavitt::linalg::{sparse_from_dense, ExactMatrix, Solution, Subspace};
use leavitt::GaussianRational as Q;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> ExactMatrix {
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if r.gen_bool(0.4) {
                        small_coeff(r)
                    } else {
                        Q::from(0)
                    }
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_dense(data).unwrap()
}

fn random_vectors(r: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<Vec<Q>> {
    random_matrix(r, k, n).to_dense()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let m = random_matrix(&mut rng(seed), rows, cols);
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for k in &kernel {
            prop_assert!(m.mul_vec(k).unwrap().iter().all(|x| *x == Q::from(0)));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rref_is_idempotent(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let m = random_matrix(&mut rng(seed), rows, cols);
        let (r1, k1) = m.rref();
        let (r2, k2) = r1.rref();
        prop_assert_eq!(k1, k2);
        prop_assert_eq!(r1.to_dense(), r2.to_dense());
    }

    #[test]
    fn solve_finds_preimages(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, rows, cols);
        let x: Vec<Q> = (0..cols).map(|_| small_coeff(&mut r)).collect();
        let b = m.mul_vec(&x).unwrap();
        match m.solve(&b).unwrap() {
            Solution::Found(y) => prop_assert_eq!(m.mul_vec(&y).unwrap(), b),
            Solution::Inconsistent { .. } => prop_assert!(false, "consistent system reported inconsistent"),
        }
    }

    #[test]
    fn subspace_dimension_formula(seed in any::<u64>(), n in 1usize..6, k1 in 0usize..5, k2 in 0usize..5) {
        let mut r = rng(seed);
        let u = Subspace::span_dense(n, &random_vectors(&mut r, n, k1)).unwrap();
        let w = Subspace::span_dense(n, &random_vectors(&mut r, n, k2)).unwrap();
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(u.dim() + w.dim(), s.dim() + i.dim());
        prop_assert!(u.contains(&i).unwrap() && w.contains(&i).unwrap());
        prop_assert!(s.contains(&u).unwrap() && s.contains(&w).unwrap());
        for b in u.basis() {
            prop_assert!(s.contains_vector(b));
        }
    }
}

#[test]
fn inconsistent_system_has_witness() {
    let m = ExactMatrix::from_ints(&[&[1, 1], &[2, 2]]);
    match m.solve(&[Q::from(1), Q::from(3)]).unwrap() {
        Solution::Inconsistent { witness } => assert!(!witness.is_empty()),
        Solution::Found(_) => panic!("system is inconsistent"),
    }
}

#[test]
fn complex_entries() {
    let i = Q::i();
    let m = ExactMatrix::from_dense(vec![
        vec![Q::from(1), i.clone()],
        vec![i.clone(), Q::from(-1)],
    ])
    .unwrap();
    assert_eq!(m.rank(), 1);
    let s = Subspace::span(2, &[sparse_from_dense(&[Q::from(1), i])]).unwrap();
    assert_eq!(s.dim(), 1);
}
