//! Exact linear algebra over the Gaussian rationals.

use leavitt::linalg::{sparse_from_dense, ExactMatrix, Solution, Subspace};
use leavitt::GaussianRational as Q;

fn main() {
    let m = ExactMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    let (r, rank) = m.rref();
    println!("rank {rank}, rref:");
    for row in r.to_dense() {
        println!(
            "  {}",
            row.iter().map(|q| format!("{q:>4}")).collect::<String>()
        );
    }
    for k in m.kernel() {
        println!("kernel vector {k:?}, image {:?}", m.mul_vec(&k).unwrap());
    }

    let b = vec![Q::from(2), Q::from(4), Q::from(0)];
    match m.solve(&b).unwrap() {
        Solution::Found(x) => println!("solution {x:?}"),
        Solution::Inconsistent { witness } => println!("inconsistent: {witness:?}"),
    }
    let b = vec![Q::from(1), Q::from(1), Q::from(0)];
    println!(
        "b = {b:?} solvable: {}",
        matches!(m.solve(&b).unwrap(), Solution::Found(_))
    );

    let i = Q::i();
    let u = Subspace::span_dense(
        3,
        &[
            vec![Q::from(1), i.clone(), Q::from(0)],
            vec![Q::from(0), Q::from(0), Q::from(1)],
        ],
    )
    .unwrap();
    let w = Subspace::span(3, &[sparse_from_dense(&[Q::from(1), i, Q::from(1)])]).unwrap();
    println!(
        "dim U = {}, dim W = {}, dim U∩W = {}, dim U+W = {}",
        u.dim(),
        w.dim(),
        u.intersect(&w).unwrap().dim(),
        u.sum(&w).unwrap().dim()
    );
}
