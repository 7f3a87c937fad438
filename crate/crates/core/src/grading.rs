//! The gauge ℤ-grading, the degree-zero expectation and the coaction `δ`.
//!
//! On `L(E)` the degree of `αβ*` is `|α| − |β|`. On `L(E) ⊗ k[t, t⁻¹]` only
//! the t-exponent counts, so `δ(x) = Σ_d x_d ⊗ t^d` is a graded map.

use std::collections::BTreeMap;

use crate::lpa::{BasisMonomial, Combination, Element, LaurentElement, LaurentMonomial};

/// Homogeneous components, keyed by degree. Zero parts are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDecomposition<T: BasisMonomial> {
    pub parts: BTreeMap<i64, Combination<T>>,
}

impl<T: BasisMonomial> GradedDecomposition<T> {
    /// Sum of the parts; equals the decomposed element.
    pub fn reassemble(&self, zero: Combination<T>) -> Combination<T> {
        self.parts.values().fold(zero, |acc, p| &acc + p)
    }

    pub fn part(&self, d: i64) -> Option<&Combination<T>> {
        self.parts.get(&d)
    }
}

pub fn decompose<T: BasisMonomial>(x: &Combination<T>) -> GradedDecomposition<T> {
    let mut buckets: BTreeMap<i64, Vec<_>> = BTreeMap::new();
    for (m, c) in x.terms() {
        buckets
            .entry(m.degree())
            .or_default()
            .push((c.clone(), m.clone()));
    }
    GradedDecomposition {
        parts: buckets
            .into_iter()
            .map(|(d, terms)| (d, Combination::from_terms(x.graph().clone(), terms)))
            .collect(),
    }
}

/// Degree of a homogeneous element; `None` for zero or inhomogeneous input.
pub fn homogeneous_degree<T: BasisMonomial>(x: &Combination<T>) -> Option<i64> {
    let mut degrees = x.terms().keys().map(|m| m.degree());
    let d = degrees.next()?;
    degrees.all(|e| e == d).then_some(d)
}

/// The part of degree `d`.
pub fn component<T: BasisMonomial>(x: &Combination<T>, d: i64) -> Combination<T> {
    Combination::from_terms(
        x.graph().clone(),
        x.terms()
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (c.clone(), m.clone())),
    )
}

/// Group acting on the algebra, for the invariant-part projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// The circle acting by the gauge action; invariants are degree zero.
    Gauge,
    /// The trivial group; every element is invariant.
    Trivial,
}

/// Projection onto the invariant subalgebra: the degree-zero part for the
/// gauge circle (its Haar average), the identity for the trivial group.
pub fn expectation_for<T: BasisMonomial>(action: Action, x: &Combination<T>) -> Combination<T> {
    match action {
        Action::Gauge => component(x, 0),
        Action::Trivial => x.clone(),
    }
}

/// The degree-zero projection.
pub fn expectation<T: BasisMonomial>(x: &Combination<T>) -> Combination<T> {
    expectation_for(Action::Gauge, x)
}

/// `δ: L(E) → L(E) ⊗ k[t, t⁻¹]`, `x_d ↦ x_d ⊗ t^d`.
pub fn coaction_delta(x: &Element) -> LaurentElement {
    x.map_terms(|m| LaurentMonomial::new(m.clone(), m.degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, GraphSpec};
    use crate::parse::{parse_element, parse_laurent};
    use std::sync::Arc;

    fn line() -> Arc<Graph> {
        Arc::new(
            GraphSpec::new("line", &["v", "w"], &[("e", "v", "w"), ("f", "v", "w")])
                .validate()
                .unwrap(),
        )
    }

    fn lp() -> Arc<Graph> {
        Arc::new(
            GraphSpec::new("loop", &["v"], &[("x", "v", "v")])
                .validate()
                .unwrap(),
        )
    }

    #[test]
    fn decomposition_examples() {
        let g = line();
        let d = decompose(&parse_element(&g, "v + e").unwrap());
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.part(0).unwrap().to_string(), "v");
        assert_eq!(d.part(1).unwrap().to_string(), "e");
        let d = decompose(&parse_element(&g, "e.f*").unwrap());
        assert_eq!(d.parts.keys().copied().collect::<Vec<_>>(), vec![0]);

        let g = lp();
        let x = parse_element(&g, "x.x + x*").unwrap();
        let d = decompose(&x);
        assert_eq!(d.part(2).unwrap().to_string(), "x.x");
        assert_eq!(d.part(-1).unwrap().to_string(), "x*");
        assert_eq!(d.reassemble(Element::zero(g.clone())), x);
    }

    #[test]
    fn expectation_examples() {
        let g = line();
        let x = parse_element(&g, "v + e").unwrap();
        assert_eq!(expectation(&x).to_string(), "v");
        assert!(expectation(&parse_element(&g, "e + 3*f").unwrap()).is_zero());
        assert_eq!(expectation(&expectation(&x)), expectation(&x));
        assert_eq!(expectation_for(Action::Trivial, &x), x);
    }

    #[test]
    fn coaction_examples() {
        let g = lp();
        let d = |s: &str| coaction_delta(&parse_element(&g, s).unwrap()).to_string();
        assert_eq!(d("x"), "x.t");
        assert_eq!(d("v"), "v");
        assert_eq!(d("x*"), "x*.t^-1");
    }

    #[test]
    fn laurent_arithmetic() {
        let g = line();
        let a = parse_laurent(&g, "v.t").unwrap();
        let b = parse_laurent(&g, "e.t^-1").unwrap();
        assert_eq!((&a * &b).to_string(), "e");
        assert_eq!(
            parse_laurent(&g, "e.t").unwrap().star().to_string(),
            "e*.t^-1"
        );
        let g = lp();
        let p = &parse_laurent(&g, "x.t").unwrap() * &parse_laurent(&g, "x*.t^-1").unwrap();
        assert_eq!(p.to_string(), "v");
        assert_eq!(
            homogeneous_degree(&parse_laurent(&g, "x.t + v.t").unwrap()),
            Some(1)
        );
    }
}
