//! The gauge grading, the degree-zero expectation and the coaction δ.

use std::sync::Arc;

use leavitt::grading::{coaction_delta, decompose, expectation, homogeneous_degree};
use leavitt::graph::Graph;
use leavitt::parse::parse_element;
use leavitt::Element;

fn main() {
    let g = Arc::new(
        Graph::load(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/examples/data/two_loops.json"
        ))
        .unwrap(),
    );
    let x = parse_element(&g, "v + 2*e - e.f* + f.f.e* + 3*f*").unwrap();
    println!("x = {x}");
    for (d, part) in &decompose(&x).parts {
        println!("  degree {d:>2}: {part}");
    }
    assert_eq!(decompose(&x).reassemble(Element::zero(g.clone())), x);

    let ex = expectation(&x);
    println!("E(x) = {ex}");
    println!("E(x*x) = {}", expectation(&(&x.star() * &x)));

    let a = parse_element(&g, "e.e").unwrap();
    let b = parse_element(&g, "f*").unwrap();
    println!(
        "deg(a) = {:?}, deg(b) = {:?}, deg(ab) = {:?}",
        homogeneous_degree(&a),
        homogeneous_degree(&b),
        homogeneous_degree(&(&a * &b))
    );

    println!("δ(x) = {}", coaction_delta(&x));
    println!(
        "δ(e.e*) = {}",
        coaction_delta(&parse_element(&g, "e.e*").unwrap())
    );
}
