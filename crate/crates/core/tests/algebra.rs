mod common;

use std::sync::Arc;

use common::*;
use leavitt::basis::{basis_at_weight, laurent_basis_at_weight};
use leavitt::graph::Graph;
use leavitt::lpa::{Element, LaurentElement, Monomial};
use leavitt::parse::{parse_element, parse_laurent};
use leavitt::rewrite::{normalize_monomials, word_element, Letter, RawCombination, RewriteOrder};
use leavitt::GaussianRational;
use proptest::prelude::*;

fn ck_relations(g: &Arc<Graph>) -> Vec<(String, Element)> {
    let w = |word: Vec<Letter>| word_element(g, word);
    let mut out = Vec::new();
    for v in g.vertex_ids() {
        for u in g.vertex_ids() {
            let mut x = w(vec![Letter::Vertex(v), Letter::Vertex(u)]);
            if u == v {
                x = &x - &Element::vertex(g, v);
            }
            out.push((format!("{v}.{u}"), x));
        }
    }
    for e in g.edge_ids() {
        let edge = Element::edge(g, e);
        out.push((
            format!("s.e {e}"),
            &w(vec![Letter::Vertex(g.src(e)), Letter::Edge(e)]) - &edge,
        ));
        out.push((
            format!("e.r {e}"),
            &w(vec![Letter::Edge(e), Letter::Vertex(g.r(e))]) - &edge,
        ));
        out.push((
            format!("r.e* {e}"),
            &w(vec![Letter::Vertex(g.r(e)), Letter::Ghost(e)]) - &edge.star(),
        ));
        for f in g.edge_ids() {
            let mut x = w(vec![Letter::Ghost(e), Letter::Edge(f)]);
            if e == f {
                x = &x - &Element::vertex(g, g.r(e));
            }
            out.push((format!("e*f {e} {f}"), x));
        }
    }
    for v in g.vertex_ids().filter(|&v| g.is_regular(v)) {
        let sum = g
            .out_edges(v)
            .iter()
            .fold(Element::zero(g.clone()), |acc, &e| {
                &acc + &w(vec![Letter::Edge(e), Letter::Ghost(e)])
            });
        out.push((format!("CK {v}"), &sum - &Element::vertex(g, v)));
    }
    out
}

#[test]
fn cuntz_krieger_relations_vanish() {
    for g in corpus() {
        for (label, x) in ck_relations(&g) {
            assert!(x.is_zero(), "{}: {label} gave {x}", g.name());
        }
    }
}

#[test]
fn basis_counts_match_path_count_oracle() {
    for g in corpus() {
        for n in 0..=4 {
            assert_eq!(
                basis_at_weight(&g, n).len(),
                basis_count_oracle(&g, n),
                "{} at {n}",
                g.name()
            );
        }
    }
}

#[test]
fn laurent_basis_counts() {
    for g in corpus() {
        for n in 0..=4 {
            // weight m + |k| ≤ n: monomials of plain weight exactly m pair with
            // the 2(n − m) + 1 powers t^k, |k| ≤ n − m
            let exact = |m: usize| {
                basis_count_oracle(&g, m)
                    - if m == 0 {
                        0
                    } else {
                        basis_count_oracle(&g, m - 1)
                    }
            };
            let oracle: usize = (0..=n).map(|m| (2 * (n - m) + 1) * exact(m)).sum();
            assert_eq!(
                laurent_basis_at_weight(&g, n).len(),
                oracle,
                "{} at {n}",
                g.name()
            );
        }
    }
}

#[test]
fn basis_monomials_are_independent_normal_forms() {
    for g in corpus() {
        for m in basis_at_weight(&g, 3) {
            let x = normalize_monomials(
                &g,
                [(GaussianRational::from(1), m.clone())],
                RewriteOrder::Rightmost,
            );
            assert_eq!(
                x,
                Element::from_monomial(g.clone(), m.clone()),
                "{}",
                g.name()
            );
        }
    }
}

#[test]
fn matrix_units_at_each_level() {
    for g in corpus() {
        for n in 1..=2 {
            for v in g.vertex_ids() {
                let paths = g.enumerate_paths(n, Some(v));
                for a in &paths {
                    for b in &paths {
                        for c in &paths {
                            for d in &paths {
                                let x = Element::from_monomial(
                                    g.clone(),
                                    Monomial::new(&g, a.clone(), b.clone()).unwrap(),
                                );
                                let y = Element::from_monomial(
                                    g.clone(),
                                    Monomial::new(&g, c.clone(), d.clone()).unwrap(),
                                );
                                let expected = if b == c {
                                    normalize_monomials(
                                        &g,
                                        [(
                                            GaussianRational::from(1),
                                            Monomial::new(&g, a.clone(), d.clone()).unwrap(),
                                        )],
                                        RewriteOrder::Leftmost,
                                    )
                                } else {
                                    Element::zero(g.clone())
                                };
                                assert_eq!(&x * &y, expected, "{}", g.name());
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn documented_products() {
    let g = two_loops();
    let p = |s: &str| parse_element(&g, s).unwrap();
    assert_eq!(p("e*.e").to_string(), "v");
    assert_eq!(p("e*.f").to_string(), "0");
    assert_eq!(p("e.e*").to_string(), "v - f.f*");
    let l = single_loop();
    assert_eq!(parse_element(&l, "x.x*").unwrap().to_string(), "v");
    assert_eq!(parse_laurent(&l, "x.t.x*.t*").unwrap().to_string(), "v");
}

#[test]
fn confluence_over_orders() {
    for (i, g) in corpus().into_iter().enumerate() {
        let mut r = rng(100 + i as u64);
        for k in 0..200 {
            let raw = random_raw(&g, &mut r, 3, k % 2 == 1);
            let a = raw.normalize(RewriteOrder::Leftmost);
            let b = raw.normalize(RewriteOrder::Rightmost);
            let c = raw.normalize(RewriteOrder::Seeded(k));
            assert_eq!(a, b, "{}", g.name());
            assert_eq!(a, c, "{}", g.name());
        }
    }
}

#[test]
fn raw_concatenation_matches_multiplication() {
    for (i, g) in corpus().into_iter().enumerate() {
        let mut r = rng(200 + i as u64);
        for _ in 0..50 {
            let x = random_raw(&g, &mut r, 2, true);
            let y = random_raw(&g, &mut r, 2, true);
            let lhs = x.concat(&y).normalize(RewriteOrder::Leftmost);
            let rhs = &x.normalize(RewriteOrder::Leftmost) * &y.normalize(RewriteOrder::Rightmost);
            assert_eq!(lhs, rhs, "{}", g.name());
            let back = RawCombination::from_element(&lhs).normalize(RewriteOrder::Seeded(1));
            assert_eq!(back, lhs);
        }
    }
}

#[test]
fn printed_elements_reparse() {
    for (i, g) in corpus().into_iter().enumerate() {
        let mut r = rng(300 + i as u64);
        for _ in 0..50 {
            let x = random_element(&g, &mut r, 4, 3);
            assert_eq!(parse_element(&g, &x.to_string()).unwrap(), x);
            let y = random_laurent(&g, &mut r, 4, 2);
            assert_eq!(parse_laurent(&g, &y.to_string()).unwrap(), y);
        }
    }
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0..corpus().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_associative(gi in corpus_index(), seed in any::<u64>()) {
        let g = corpus()[gi].clone();
        let mut r = rng(seed);
        let x = random_element(&g, &mut r, 3, 2);
        let y = random_element(&g, &mut r, 3, 2);
        let z = random_element(&g, &mut r, 3, 2);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn star_is_an_antimultiplicative_involution(gi in corpus_index(), seed in any::<u64>()) {
        let g = corpus()[gi].clone();
        let mut r = rng(seed);
        let x = random_element(&g, &mut r, 3, 3);
        let y = random_element(&g, &mut r, 3, 3);
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!(x.star().star(), x.clone());
        let c = small_coeff(&mut r);
        prop_assert_eq!(x.scale(&c).star(), x.star().scale(&c.conj()));
    }

    #[test]
    fn distributive_and_unital(gi in corpus_index(), seed in any::<u64>()) {
        let g = corpus()[gi].clone();
        let mut r = rng(seed);
        let x = random_element(&g, &mut r, 3, 2);
        let y = random_element(&g, &mut r, 3, 2);
        let z = random_element(&g, &mut r, 3, 2);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        let one = Element::one(&g);
        prop_assert_eq!(&one * &x, x.clone());
        prop_assert_eq!(&x * &one, x.clone());
    }

    #[test]
    fn laurent_products(gi in corpus_index(), seed in any::<u64>()) {
        let g = corpus()[gi].clone();
        let mut r = rng(seed);
        let x = random_laurent(&g, &mut r, 3, 2);
        let y = random_laurent(&g, &mut r, 3, 2);
        let z = random_laurent(&g, &mut r, 3, 2);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        let t = LaurentElement::one(&g).shift_t(1);
        prop_assert_eq!(&t * &x, &x * &t);
    }
}
