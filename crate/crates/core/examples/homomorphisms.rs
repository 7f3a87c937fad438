//! *-homomorphisms from generator images: relation checks, gradedness,
//! quotients by hereditary saturated sets, and finite-level behaviour.

use std::collections::BTreeMap;
use std::sync::Arc;

use leavitt::files::load_hom;
use leavitt::graph::Graph;
use leavitt::hom::{level_analysis, AlgebraRef, GenHom};

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

    let delta = load_hom(format!("{data}/delta.json").as_ref()).unwrap();
    println!(
        "δ: well defined {:?}, graded {:?}, bound {:?}",
        delta.well_defined(),
        delta.graded(),
        delta.expansion_bound()
    );
    for n in 0..=3 {
        let la = level_analysis(&delta, n).unwrap();
        println!(
            "  n={n}: {}x{} matrix, rank {}, injective {}, surjective {}",
            la.matrix.rows(),
            la.matrix.cols(),
            la.rank,
            la.injective_at_n,
            la.surjective_at_n
        );
    }

    let swap = load_hom(format!("{data}/swap_bad.json").as_ref()).unwrap();
    println!(
        "vertex swap on a line: {:?}, failing relations {:?}",
        swap.well_defined(),
        swap.failed_relations()
    );

    let lp = Arc::new(Graph::load(format!("{data}/loop.json")).unwrap());
    let a = AlgebraRef::plain(lp.clone());
    let exprs: BTreeMap<String, String> = [("v", "v"), ("x", "1i*x")]
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let mut rot = GenHom::from_expressions("rot", a.clone(), a.clone(), &exprs).unwrap();
    println!("x ↦ ix: {:?}", rot.verify());
    let rot4 = rot
        .compose(&rot)
        .unwrap()
        .compose(&rot)
        .unwrap()
        .compose(&rot)
        .unwrap();
    println!("fourth power: {:?}", rot4.image_table());

    let u = Arc::new(Graph::load(format!("{data}/loop_plus_line.json")).unwrap());
    let h = u.vertex_set(&["b_v1", "b_v2"]).unwrap();
    let q = GenHom::quotient(&u, &h).unwrap();
    let x = AlgebraRef::plain(u.clone())
        .parse("a_x.a_x* + b_e + b_v2")
        .unwrap();
    println!(
        "quotient onto {}: {} ↦ {}",
        q.codomain().describe(),
        x,
        q.apply(&x).unwrap()
    );
    println!(
        "surjective at level 3: {}",
        level_analysis(&q, 3).unwrap().surjective_at_n
    );
}
