#![allow(dead_code)]

use std::sync::Arc;

use leavitt::graph::{Graph, GraphSpec, Path};
use leavitt::lpa::{Element, LaurentElement, LaurentMonomial, Monomial};
use leavitt::rewrite::{Letter, RawCombination};
use leavitt::GaussianRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn graph(name: &str, vertices: &[&str], edges: &[(&str, &str, &str)]) -> Arc<Graph> {
    Arc::new(
        GraphSpec::new(name, vertices, edges)
            .validate()
            .expect("corpus graph is valid"),
    )
}

pub fn line(n: usize) -> Arc<Graph> {
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (1..n)
        .map(|i| (format!("e{i}"), names[i - 1].clone(), names[i].clone()))
        .collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> = edges
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    graph(&format!("line{n}"), &vs, &es)
}

pub fn single_loop() -> Arc<Graph> {
    graph("loop", &["v"], &[("x", "v", "v")])
}

pub fn two_loops() -> Arc<Graph> {
    graph("two_loops", &["v"], &[("e", "v", "v"), ("f", "v", "v")])
}

/// Twelve small graphs: at most 5 vertices and 8 edges each, mixing sinks,
/// loops, cycles, exits and parallel edges.
pub fn corpus() -> Vec<Arc<Graph>> {
    vec![
        graph("point", &["v"], &[]),
        graph("two_points", &["a", "b"], &[]),
        line(2),
        line(3),
        single_loop(),
        two_loops(),
        graph(
            "loop_exit",
            &["v", "w"],
            &[("x", "v", "v"), ("e", "v", "w")],
        ),
        graph(
            "two_cycle",
            &["u", "v"],
            &[("a", "u", "v"), ("b", "v", "u")],
        ),
        graph("parallel", &["v", "w"], &[("e", "v", "w"), ("f", "v", "w")]),
        graph(
            "mixed",
            &["a", "b", "c", "d"],
            &[
                ("p", "a", "b"),
                ("q", "b", "b"),
                ("s", "b", "c"),
                ("u", "a", "c"),
                ("w", "c", "d"),
            ],
        ),
        graph(
            "ring_tail",
            &["r1", "r2", "r3", "t1", "t2"],
            &[
                ("g1", "r1", "r2"),
                ("g2", "r2", "r3"),
                ("g3", "r3", "r1"),
                ("h1", "r3", "t1"),
                ("h2", "t1", "t2"),
            ],
        ),
        graph(
            "dense",
            &["a", "b", "c"],
            &[
                ("e1", "a", "a"),
                ("e2", "a", "b"),
                ("e3", "b", "a"),
                ("e4", "b", "c"),
                ("e5", "c", "c"),
                ("e6", "c", "a"),
                ("e7", "a", "c"),
                ("e8", "b", "b"),
            ],
        ),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_coeff(rng: &mut ChaCha8Rng) -> GaussianRational {
    let re = rng.gen_range(-3..=3);
    let im = if rng.gen_bool(0.3) {
        rng.gen_range(-2..=2)
    } else {
        0
    };
    let d = rng.gen_range(1..=2);
    let c = GaussianRational::from_ints(re, im) * GaussianRational::real(1, d);
    if c == GaussianRational::from(0) {
        GaussianRational::from(1)
    } else {
        c
    }
}

/// A random path of length at most `max_len` ending at `end` (any end if `None`),
/// built backwards along incoming edges.
pub fn random_path(g: &Graph, rng: &mut ChaCha8Rng, max_len: usize, end: Option<u32>) -> Path {
    let start = end.unwrap_or_else(|| rng.gen_range(0..g.vertex_count() as u32));
    let len = rng.gen_range(0..=max_len);
    let mut rev = Vec::new();
    let mut at = start;
    for _ in 0..len {
        let incoming: Vec<u32> = g.edge_ids().filter(|&e| g.r(e) == at).collect();
        if incoming.is_empty() {
            break;
        }
        let e = incoming[rng.gen_range(0..incoming.len())];
        rev.push(e);
        at = g.src(e);
    }
    if rev.is_empty() {
        Path::vertex(start)
    } else {
        rev.reverse();
        Path::from_edges(g, &rev).expect("walk is a path")
    }
}

/// Word of `αβ*`.
pub fn block_word(g: &Graph, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<Letter> {
    let alpha = random_path(g, rng, max_len, None);
    let beta = random_path(g, rng, max_len, Some(alpha.range(g)));
    let mut w: Vec<Letter> = alpha.edges().iter().map(|&e| Letter::Edge(e)).collect();
    w.extend(beta.edges().iter().rev().map(|&e| Letter::Ghost(e)));
    if w.is_empty() {
        w.push(Letter::Vertex(alpha.range(g)));
    }
    w
}

/// Raw combination of products of one to three `αβ*` blocks, so that
/// adjacent blocks create redexes of every kind.
pub fn random_raw(
    g: &Arc<Graph>,
    rng: &mut ChaCha8Rng,
    terms: usize,
    laurent: bool,
) -> RawCombination {
    let mut raw = RawCombination::new(g.clone());
    for _ in 0..terms {
        let mut word = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            word.extend(block_word(g, rng, 2));
        }
        let t = if laurent { rng.gen_range(-2..=2) } else { 0 };
        raw.push(small_coeff(rng), word, t);
    }
    raw
}

/// Random canonical monomial with `|α|, |β| ≤ max_len`.
pub fn random_monomial(g: &Graph, rng: &mut ChaCha8Rng, max_len: usize) -> Monomial {
    loop {
        let alpha = random_path(g, rng, max_len, None);
        let beta = random_path(g, rng, max_len, Some(alpha.range(g)));
        let m = Monomial::new(g, alpha, beta).expect("ranges agree");
        if m.is_canonical(g) {
            return m;
        }
    }
}

pub fn random_element(
    g: &Arc<Graph>,
    rng: &mut ChaCha8Rng,
    max_terms: usize,
    max_len: usize,
) -> Element {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| (small_coeff(rng), random_monomial(g, rng, max_len)))
        .collect();
    Element::from_terms(g.clone(), terms)
}

pub fn random_nonzero_element(
    g: &Arc<Graph>,
    rng: &mut ChaCha8Rng,
    max_terms: usize,
    max_len: usize,
) -> Element {
    loop {
        let x = random_element(g, rng, max_terms, max_len);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_laurent(
    g: &Arc<Graph>,
    rng: &mut ChaCha8Rng,
    max_terms: usize,
    max_len: usize,
) -> LaurentElement {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            (
                small_coeff(rng),
                LaurentMonomial::new(random_monomial(g, rng, max_len), rng.gen_range(-2..=2)),
            )
        })
        .collect();
    LaurentElement::from_terms(g.clone(), terms)
}

/// `Σ_{i+j ≤ n} Σ_w P_i(w) P_j(w)` minus the pairs that both end in the
/// special edge out of the same regular vertex, from path counts alone.
pub fn basis_count_oracle(g: &Graph, n: usize) -> usize {
    let p = g.path_counts(n);
    let mut total: u128 = 0;
    for i in 0..=n {
        for j in 0..=n - i {
            for w in g.vertex_ids() {
                total += p[i][w as usize] * p[j][w as usize];
            }
            if i >= 1 && j >= 1 {
                for v in g.vertex_ids().filter(|&v| g.is_regular(v)) {
                    total -= p[i - 1][v as usize] * p[j - 1][v as usize];
                }
            }
        }
    }
    total as usize
}
