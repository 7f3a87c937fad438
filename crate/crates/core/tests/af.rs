mod common;

use std::sync::Arc;

use common::*;
use leavitt::af::{acyclic_structure, bratteli_diagram, zero_component_dim_check};
use leavitt::basis::basis_at_weight;
use leavitt::graph::{Graph, GraphSpec};
use rand::Rng;

#[test]
fn bratteli_data_is_consistent() {
    for g in corpus() {
        let b = bratteli_diagram(&g, 6);
        assert!(b.is_consistent(), "{}", g.name());
        for lv in &b.levels {
            let labels: std::collections::BTreeSet<_> =
                lv.blocks.iter().map(|b| &b.label).collect();
            assert_eq!(labels.len(), lv.blocks.len());
            assert!(lv.blocks.iter().all(|b| b.size >= 1));
        }
    }
}

fn random_graph(seed: u64) -> Arc<Graph> {
    let mut r = rng(seed);
    let nv = r.gen_range(1..=4);
    let ne = r.gen_range(0..=6);
    let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..ne)
        .map(|i| {
            (
                format!("e{i}"),
                names[r.gen_range(0..nv)].clone(),
                names[r.gen_range(0..nv)].clone(),
            )
        })
        .collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> = edges
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    Arc::new(
        GraphSpec::new(&format!("random{seed}"), &vs, &es)
            .validate()
            .unwrap(),
    )
}

#[test]
fn degree_zero_dimension_sweep() {
    for seed in 0..40 {
        let g = random_graph(seed);
        // keep brute force enumeration small on graphs with many long paths
        let max_n = if g.path_counts(4)[4].iter().sum::<u128>() > 200 {
            3
        } else {
            4
        };
        for n in 0..=max_n {
            let c = zero_component_dim_check(&g, n);
            assert!(c.matches, "{} n={n}: {c:?}", g.name());
        }
    }
}

#[test]
fn acyclic_structure_matches_basis() {
    for seed in 0..200 {
        let g = random_graph(seed);
        match acyclic_structure(&g) {
            Ok(s) => {
                let saturation = 2 * g.longest_path().unwrap();
                assert_eq!(s.total_dim, basis_at_weight(&g, saturation).len() as u128);
                assert_eq!(
                    basis_at_weight(&g, saturation + 2).len(),
                    basis_at_weight(&g, saturation).len()
                );
                assert!(s.verified);
            }
            Err(_) => assert!(!g.is_acyclic()),
        }
    }
}
