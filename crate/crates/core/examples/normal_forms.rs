//! Normal forms, products and adjoints in L(E), and the independence of the
//! normal form from the order in which rewrites are applied.

use std::sync::Arc;

use leavitt::graph::Graph;
use leavitt::parse::{parse_element, parse_raw};
use leavitt::rewrite::RewriteOrder;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/two_loops.json");
    let g = Arc::new(Graph::load(path).unwrap());
    let p = |s: &str| parse_element(&g, s).unwrap();

    for src in [
        "e.e* + f.f*",
        "e*.f",
        "f*.f",
        "e.f.f*.e*",
        "(1/2+1i)*e.f* - 3*v",
    ] {
        println!("{src:>22}  =  {}", p(src));
    }

    let x = p("e + 2i*f.e*");
    let y = p("e* - f");
    println!(
        "x = {x}\ny = {y}\nx*y = {}\n(x*y)* = {}",
        &x * &y,
        (&x * &y).star()
    );
    assert_eq!((&x * &y).star(), &y.star() * &x.star());

    let raw = parse_raw(&g, "f*.e.e*.f.f.e*.e - e.f*.f.f*", false).unwrap();
    let orders = [
        RewriteOrder::Leftmost,
        RewriteOrder::Rightmost,
        RewriteOrder::Seeded(7),
        RewriteOrder::Seeded(8),
    ];
    for order in orders {
        println!("{order:?}: {}", raw.normalize(order));
    }
}
