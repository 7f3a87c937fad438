//! Loading, validating and inspecting directed graphs.

use leavitt::graph::{Graph, GraphSpec};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/two_loops.json");
    let g = Graph::load(path).expect("valid graph file");
    println!(
        "{}: {} vertex, {} edges",
        g.name(),
        g.vertex_count(),
        g.edge_count()
    );
    for (v, kind) in g.classify_vertices() {
        println!("  {v}: {kind:?}");
    }
    let v = g.vertex("v").unwrap();
    println!(
        "special edge at v: {}",
        g.edge_name(g.special_edge(v).unwrap())
    );
    for len in 0..=2 {
        let paths: Vec<String> = g
            .enumerate_paths(len, None)
            .iter()
            .map(|p| p.display(&g).to_string())
            .collect();
        println!("paths of length {len}: {}", paths.join(" "));
    }

    let spec = GraphSpec::new(
        "chain",
        &["u", "v", "w"],
        &[("e", "u", "v"), ("f", "v", "w")],
    );
    let chain = spec.validate().unwrap();
    println!(
        "{} acyclic: {}, longest path {:?}",
        chain.name(),
        chain.is_acyclic(),
        chain.longest_path()
    );
    for names in [&["w"][..], &["v", "w"], &["u", "v", "w"], &["v"]] {
        let h = chain.vertex_set(names).unwrap();
        println!("  {names:?}: {:?}", chain.hereditary_saturated(&h));
    }

    let bad = GraphSpec::new("bad", &["v1"], &[("e1", "v1", "v2")]);
    println!("invalid input: {}", bad.validate().unwrap_err());
}
