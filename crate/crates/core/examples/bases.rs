//! Canonical bases αβ* filtered by weight and degree.

use leavitt::basis::{basis_at_weight, basis_at_weight_degree, laurent_basis_at_weight_degree};
use leavitt::graph::Graph;

fn main() {
    for file in ["line.json", "loop.json", "two_loops.json"] {
        let path = format!("{}/examples/data/{file}", env!("CARGO_MANIFEST_DIR"));
        let g = Graph::load(&path).unwrap();
        let counts: Vec<usize> = (0..=5).map(|n| basis_at_weight(&g, n).len()).collect();
        println!(
            "{:>10}: |basis at weight <= n|, n = 0..5: {counts:?}",
            g.name()
        );
    }

    let g = Graph::load(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/loop.json"
    ))
    .unwrap();
    let shown: Vec<String> = basis_at_weight(&g, 2)
        .iter()
        .map(|m| m.display(&g).to_string())
        .collect();
    println!("loop, weight <= 2: {}", shown.join(", "));
    let deg: Vec<String> = basis_at_weight_degree(&g, 4, 0)
        .iter()
        .map(|m| m.display(&g).to_string())
        .collect();
    println!("loop, weight <= 4, degree 0: {}", deg.join(", "));
    for d in -3..=3 {
        println!(
            "Laurent loop, degree {d:>2}: dim {}",
            laurent_basis_at_weight_degree(&g, 8, d).len()
        );
    }
}
