//! The degree-zero core as a union of multi-matrix algebras.

use leavitt::af::{acyclic_structure, bratteli_diagram, level_algebra, zero_component_dim_check};
use leavitt::graph::{Graph, GraphSpec};
use std::sync::Arc;

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let two = Arc::new(Graph::load(format!("{data}/two_loops.json")).unwrap());
    let b = bratteli_diagram(&two, 8);
    let sizes: Vec<u128> = b.levels.iter().map(|l| l.sizes()[0]).collect();
    println!(
        "two loops: block sizes {sizes:?}, multiplicity {:?}, consistent {}",
        b.multiplicities[0],
        b.is_consistent()
    );
    for n in 0..=4 {
        let c = zero_component_dim_check(&two, n);
        println!(
            "  level {n}: formula {} brute {} match {}",
            c.formula, c.brute, c.matches
        );
    }

    let line = Graph::load(format!("{data}/line.json")).unwrap();
    for n in 0..=2 {
        let lv = level_algebra(&line, n);
        let blocks: Vec<String> = lv
            .blocks
            .iter()
            .map(|b| format!("{}:{}", b.label, b.size))
            .collect();
        println!("line level {n}: {} (dim {})", blocks.join(" "), lv.dim());
    }

    let names: Vec<String> = (1..=4).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (1..4)
        .map(|i| (format!("e{i}"), names[i - 1].clone(), names[i].clone()))
        .collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> = edges
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    let chain = GraphSpec::new("line4", &vs, &es).validate().unwrap();
    let s = acyclic_structure(&chain).unwrap();
    println!(
        "line4 ≅ {:?}, dim {} vs basis count {}",
        s.summands, s.total_dim, s.basis_count
    );
    println!(
        "loop: {}",
        acyclic_structure(&Graph::load(format!("{data}/loop.json")).unwrap()).unwrap_err()
    );
}
