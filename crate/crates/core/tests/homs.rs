mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::*;
use leavitt::diagram::{
    certify_cstar_pullback, coaction_diagram, disjoint_union_diagram, pullback_at_level, Diagram,
};
use leavitt::grading::Action;
use leavitt::graph::Graph;
use leavitt::hom::{level_analysis, AlgebraRef, Flag, GenHom};
use leavitt::lpa::{LaurentElement, LaurentMonomial};
use leavitt::GaussianRational;

/// `e ↦ λe` with `λ = i` on every edge.
fn gauge_rotation(g: &Arc<Graph>) -> GenHom {
    let a = AlgebraRef::plain(g.clone());
    let mut images = BTreeMap::new();
    for v in g.vertex_ids() {
        images.insert(g.vertex_name(v).to_string(), LaurentElement::vertex(g, v));
    }
    for e in g.edge_ids() {
        images.insert(
            g.edge_name(e).to_string(),
            LaurentElement::edge(g, e).scale(&GaussianRational::i()),
        );
    }
    let mut h = GenHom::new("rot", a.clone(), a, images).unwrap();
    h.verify();
    h
}

fn hereditary_saturated_sets(g: &Graph) -> Vec<BTreeSet<u32>> {
    let n = g.vertex_count();
    (0u32..(1 << n))
        .map(|mask| {
            (0..n as u32)
                .filter(|i| mask >> i & 1 == 1)
                .collect::<BTreeSet<u32>>()
        })
        .filter(|h| {
            let hs = g.hereditary_saturated(h);
            hs.hereditary && hs.saturated
        })
        .collect()
}

fn by_degree(alg: &AlgebraRef, x: &LaurentElement, d: i64) -> LaurentElement {
    LaurentElement::from_terms(
        x.graph().clone(),
        x.terms()
            .iter()
            .filter(|(m, _)| alg.degree(m) == d)
            .map(|(m, c)| (c.clone(), m.clone())),
    )
}

fn verified_homs() -> Vec<GenHom> {
    let mut out = Vec::new();
    for g in corpus() {
        out.push(GenHom::coaction(&g).unwrap());
        out.push(gauge_rotation(&g));
        for h in hereditary_saturated_sets(&g) {
            out.push(GenHom::quotient(&g, &h).unwrap());
        }
    }
    out
}

#[test]
fn apply_preserves_products_and_stars() {
    for (i, h) in verified_homs().into_iter().enumerate() {
        assert_eq!(h.well_defined(), Flag::Verified);
        let g = h.domain().graph().clone();
        let mut r = rng(400 + i as u64);
        for _ in 0..20 {
            let x = random_element(&g, &mut r, 3, 2).to_laurent();
            let y = random_element(&g, &mut r, 3, 2).to_laurent();
            let hx = h.apply(&x).unwrap();
            let hy = h.apply(&y).unwrap();
            assert_eq!(h.apply(&(&x * &y)).unwrap(), &hx * &hy, "{}", g.name());
            assert_eq!(h.apply(&x.star()).unwrap(), hx.star(), "{}", g.name());
        }
    }
}

#[test]
fn graded_homs_commute_with_expectation() {
    for (i, h) in verified_homs().into_iter().enumerate() {
        assert_eq!(h.graded(), Flag::Verified);
        let g = h.domain().graph().clone();
        let mut r = rng(500 + i as u64);
        for _ in 0..20 {
            let x = random_element(&g, &mut r, 4, 3).to_laurent();
            let lhs = h.apply(&by_degree(h.domain(), &x, 0)).unwrap();
            let rhs = by_degree(h.codomain(), &h.apply(&x).unwrap(), 0);
            assert_eq!(lhs, rhs, "{}", g.name());
        }
    }
}

#[test]
fn quotients_are_surjective_at_every_level() {
    for g in corpus() {
        for h in hereditary_saturated_sets(&g) {
            let q = GenHom::quotient(&g, &h).unwrap();
            for n in 0..=3 {
                assert!(
                    level_analysis(&q, n).unwrap().surjective_at_n,
                    "{} H={h:?} n={n}",
                    g.name()
                );
            }
        }
    }
}

/// Column of `m` in a level matrix, keyed by codomain monomial.
fn column(
    la: &leavitt::hom::LevelAnalysis,
    j: usize,
) -> BTreeMap<LaurentMonomial, GaussianRational> {
    (0..la.matrix.rows())
        .filter_map(|i| {
            let c = la.matrix.get(i, j);
            (c != GaussianRational::from(0)).then(|| (la.codomain_basis[i].clone(), c))
        })
        .collect()
}

#[test]
fn level_matrices_compose() {
    let pairs: Vec<(GenHom, GenHom)> = corpus()
        .iter()
        .map(|g| (gauge_rotation(g), GenHom::coaction(g).unwrap()))
        .chain(corpus().iter().flat_map(|g| {
            hereditary_saturated_sets(g).into_iter().map(move |h| {
                let q = GenHom::quotient(g, &h).unwrap();
                let delta = GenHom::coaction(q.codomain().graph()).unwrap();
                (q, delta)
            })
        }))
        .collect();
    for (h, g) in pairs {
        let gh = g.compose(&h).unwrap();
        for n in 0..=2 {
            let mh = level_analysis(&h, n).unwrap();
            let mg = level_analysis(&g, mh.bound).unwrap();
            let mgh = level_analysis(&gh, n).unwrap();
            assert_eq!(mh.domain_basis, mgh.domain_basis);
            let g_index: BTreeMap<&LaurentMonomial, usize> = mg
                .domain_basis
                .iter()
                .enumerate()
                .map(|(j, m)| (m, j))
                .collect();
            for j in 0..mh.domain_basis.len() {
                let mut composed: BTreeMap<LaurentMonomial, GaussianRational> = BTreeMap::new();
                for (k, c) in column(&mh, j) {
                    for (m, d) in column(&mg, g_index[&k]) {
                        let e = composed
                            .entry(m)
                            .or_insert_with(|| GaussianRational::from(0));
                        *e = &*e + &(&c * &d);
                    }
                }
                composed.retain(|_, c| *c != GaussianRational::from(0));
                assert_eq!(composed, column(&mgh, j));
            }
        }
    }
}

#[test]
fn failing_levels_are_never_certified() {
    let mut diagrams: Vec<Diagram> = Vec::new();
    for g in corpus().into_iter().take(8) {
        let good = coaction_diagram(&g).unwrap();
        let r0 = GenHom::zero_map("r", &good.b, &good.d);
        diagrams.push(
            Diagram::new(
                good.f.clone(),
                good.g.clone(),
                good.l.clone(),
                r0,
                good.witnesses.clone(),
            )
            .unwrap(),
        );
        diagrams.push(good);
    }
    diagrams.push(disjoint_union_diagram(&single_loop(), &line(2)).unwrap());
    for dg in diagrams {
        let failed = (0..=3).any(|n| !pullback_at_level(&dg, n, None).unwrap().pass);
        let cert = certify_cstar_pullback(&dg, 3, Action::Gauge).unwrap();
        if failed {
            assert!(!cert.verdict.is_certified());
        } else {
            assert!(cert.verdict.is_certified(), "{:?}", cert.verdict);
        }
    }
}
