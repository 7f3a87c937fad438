//! Normalization of raw combinations of generator words.
//!
//! A raw term is a coefficient times a word in the generators `v`, `e`, `e*`
//! (and a t-power). Words are rewritten pairwise:
//!
//! | pair      | result                                  |
//! |-----------|-----------------------------------------|
//! | `v w`     | `δ_{v,w} v`                             |
//! | `v e`     | `δ_{v,s(e)} e`, likewise `v e*`, `e v`, `e* v` |
//! | `e f`     | `0` unless `r(e) = s(f)`; likewise `e* f*`, `e f*` |
//! | `e* f`    | `δ_{e,f} r(e)`                          |
//! | `γ_v γ_v*`| `v − Σ_{f ∈ s⁻¹(v), f ≠ γ_v} f f*`      |
//!
//! Irreducible words are exactly the canonical monomials. The system is
//! terminating and confluent, so the result does not depend on the order in
//! which redexes are chosen; [`RewriteOrder`] exposes that choice for testing.

use std::sync::Arc;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::lpa::{
    AlgebraError, BasisMonomial, Combination, Element, LaurentElement, LaurentMonomial, Monomial,
};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    Vertex(VertexId),
    Edge(EdgeId),
    Ghost(EdgeId),
}

impl Letter {
    pub fn adjoint(self) -> Letter {
        match self {
            Letter::Vertex(v) => Letter::Vertex(v),
            Letter::Edge(e) => Letter::Ghost(e),
            Letter::Ghost(e) => Letter::Edge(e),
        }
    }
}

/// A coefficient times a word times `t^k`. The empty word stands for the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTerm {
    pub coeff: GaussianRational,
    pub word: Vec<Letter>,
    pub t: i64,
}

/// An unreduced sum of raw terms over a graph.
#[derive(Debug, Clone)]
pub struct RawCombination {
    pub graph: Arc<Graph>,
    pub terms: Vec<RawTerm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    /// Always rewrite the leftmost redex of the most recently produced term.
    Leftmost,
    /// Always rewrite the rightmost redex of the most recently produced term.
    Rightmost,
    /// Pick both the pending term and the redex at random.
    Seeded(u64),
}

/// The word of a monomial `αβ*`.
pub fn monomial_word(m: &Monomial) -> Vec<Letter> {
    if m.alpha().is_empty() && m.beta().is_empty() {
        return vec![Letter::Vertex(m.alpha().source())];
    }
    m.alpha()
        .edges()
        .iter()
        .map(|&e| Letter::Edge(e))
        .chain(m.beta().edges().iter().rev().map(|&e| Letter::Ghost(e)))
        .collect()
}

impl RawCombination {
    pub fn new(graph: Arc<Graph>) -> Self {
        RawCombination {
            graph,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, coeff: GaussianRational, word: Vec<Letter>, t: i64) {
        self.terms.push(RawTerm { coeff, word, t });
    }

    /// Raw form of an already reduced element (one word per term).
    pub fn from_element<T: BasisMonomial + RawWord>(x: &Combination<T>) -> Self {
        let mut raw = RawCombination::new(x.graph().clone());
        for (m, c) in x.terms() {
            let (word, t) = m.raw_word();
            raw.push(c.clone(), word, t);
        }
        raw
    }

    /// Formal product: words are concatenated, nothing is reduced.
    pub fn concat(&self, other: &RawCombination) -> RawCombination {
        let mut out = RawCombination::new(self.graph.clone());
        for a in &self.terms {
            for b in &other.terms {
                let mut word = a.word.clone();
                word.extend_from_slice(&b.word);
                out.push(&a.coeff * &b.coeff, word, a.t + b.t);
            }
        }
        out
    }

    pub fn has_laurent_terms(&self) -> bool {
        self.terms.iter().any(|t| t.t != 0)
    }

    pub fn normalize(&self, order: RewriteOrder) -> LaurentElement {
        normalize_terms(&self.graph, &self.terms, order)
    }

    pub fn normalize_plain(&self, order: RewriteOrder) -> Result<Element, AlgebraError> {
        if self.has_laurent_terms() {
            return Err(AlgebraError::UnexpectedLaurent);
        }
        self.normalize(order).to_plain()
    }
}

/// Monomials that can be written back as generator words.
pub trait RawWord {
    fn raw_word(&self) -> (Vec<Letter>, i64);
}

impl RawWord for Monomial {
    fn raw_word(&self) -> (Vec<Letter>, i64) {
        (monomial_word(self), 0)
    }
}

impl RawWord for LaurentMonomial {
    fn raw_word(&self) -> (Vec<Letter>, i64) {
        (monomial_word(&self.mono), self.t)
    }
}

/// Result of rewriting one adjacent pair.
enum PairRule {
    Keep,
    /// Replace the pair with a signed list of replacement words (empty list = 0).
    Replace(Vec<(bool, Vec<Letter>)>),
}

fn pair_rule(g: &Graph, a: Letter, b: Letter) -> PairRule {
    use Letter::*;
    let zero = || PairRule::Replace(Vec::new());
    let one = |l: Letter| PairRule::Replace(vec![(false, vec![l])]);
    match (a, b) {
        (Vertex(v), Vertex(w)) => {
            if v == w {
                one(Vertex(v))
            } else {
                zero()
            }
        }
        (Vertex(v), Edge(e)) => {
            if g.src(e) == v {
                one(Edge(e))
            } else {
                zero()
            }
        }
        (Vertex(v), Ghost(e)) => {
            if g.r(e) == v {
                one(Ghost(e))
            } else {
                zero()
            }
        }
        (Edge(e), Vertex(v)) => {
            if g.r(e) == v {
                one(Edge(e))
            } else {
                zero()
            }
        }
        (Ghost(e), Vertex(v)) => {
            if g.src(e) == v {
                one(Ghost(e))
            } else {
                zero()
            }
        }
        (Edge(e), Edge(f)) => {
            if g.r(e) == g.src(f) {
                PairRule::Keep
            } else {
                zero()
            }
        }
        // e* f* = (f e)*
        (Ghost(e), Ghost(f)) => {
            if g.r(f) == g.src(e) {
                PairRule::Keep
            } else {
                zero()
            }
        }
        (Ghost(e), Edge(f)) => {
            if e == f {
                one(Vertex(g.r(e)))
            } else {
                zero()
            }
        }
        (Edge(e), Ghost(f)) => {
            if g.r(e) != g.r(f) {
                zero()
            } else if e == f && g.special_edge(g.src(e)) == Some(e) {
                let v = g.src(e);
                let mut out = vec![(false, vec![Vertex(v)])];
                out.extend(
                    g.out_edges(v)
                        .iter()
                        .filter(|&&o| o != e)
                        .map(|&o| (true, vec![Edge(o), Ghost(o)])),
                );
                PairRule::Replace(out)
            } else {
                PairRule::Keep
            }
        }
    }
}

fn redexes(g: &Graph, word: &[Letter]) -> Vec<usize> {
    (0..word.len().saturating_sub(1))
        .filter(|&i| !matches!(pair_rule(g, word[i], word[i + 1]), PairRule::Keep))
        .collect()
}

/// Reads an irreducible word as a canonical monomial.
fn word_to_monomial(g: &Graph, word: &[Letter]) -> Monomial {
    if let [Letter::Vertex(v)] = word {
        return Monomial::vertex(*v);
    }
    let split = word
        .iter()
        .position(|l| matches!(l, Letter::Ghost(_)))
        .unwrap_or(word.len());
    let edges: Vec<EdgeId> = word[..split]
        .iter()
        .map(|l| match l {
            Letter::Edge(e) => *e,
            _ => unreachable!("irreducible word is edges then ghosts"),
        })
        .collect();
    let ghosts: Vec<EdgeId> = word[split..]
        .iter()
        .rev()
        .map(|l| match l {
            Letter::Ghost(e) => *e,
            _ => unreachable!("irreducible word is edges then ghosts"),
        })
        .collect();
    let alpha = Path::from_edges(g, &edges);
    let beta = Path::from_edges(g, &ghosts);
    let (alpha, beta) = match (alpha, beta) {
        (Some(a), Some(b)) => (a, b),
        (Some(a), None) => {
            let r = a.range(g);
            (a, Path::vertex(r))
        }
        (None, Some(b)) => {
            let r = b.range(g);
            (Path::vertex(r), b)
        }
        (None, None) => unreachable!("words are never empty"),
    };
    let m = Monomial::new_unchecked(alpha, beta);
    debug_assert!(m.is_canonical(g));
    m
}

fn normalize_terms(graph: &Arc<Graph>, terms: &[RawTerm], order: RewriteOrder) -> LaurentElement {
    let g = &**graph;
    let mut rng = match order {
        RewriteOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending: Vec<RawTerm> = Vec::new();
    for term in terms {
        if term.coeff.is_zero() {
            continue;
        }
        if term.word.is_empty() {
            // unit = Σ_v v
            pending.extend(g.vertex_ids().map(|v| RawTerm {
                coeff: term.coeff.clone(),
                word: vec![Letter::Vertex(v)],
                t: term.t,
            }));
        } else {
            pending.push(term.clone());
        }
    }

    let mut out = LaurentElement::zero(graph.clone());
    loop {
        let idx = match rng.as_mut() {
            Some(r) if !pending.is_empty() => r.gen_range(0..pending.len()),
            _ => match pending.len() {
                0 => break,
                n => n - 1,
            },
        };
        let term = pending.swap_remove(idx);
        let spots = redexes(g, &term.word);
        let Some(&first) = spots.first() else {
            let mono = word_to_monomial(g, &term.word);
            out.add_term(LaurentMonomial::new(mono, term.t), &term.coeff);
            continue;
        };
        let at = match (order, rng.as_mut()) {
            (RewriteOrder::Leftmost, _) => first,
            (RewriteOrder::Rightmost, _) => *spots.last().unwrap(),
            (_, Some(r)) => spots[r.gen_range(0..spots.len())],
            (_, None) => first,
        };
        let PairRule::Replace(replacements) = pair_rule(g, term.word[at], term.word[at + 1]) else {
            unreachable!("redex positions only hold rewritable pairs");
        };
        for (neg, middle) in replacements {
            let mut word = Vec::with_capacity(term.word.len());
            word.extend_from_slice(&term.word[..at]);
            word.extend_from_slice(&middle);
            word.extend_from_slice(&term.word[at + 2..]);
            let coeff = if neg {
                -&term.coeff
            } else {
                term.coeff.clone()
            };
            pending.push(RawTerm {
                coeff,
                word,
                t: term.t,
            });
        }
    }
    out
}

/// Normalizes an element whose monomials may be non-canonical.
pub fn normalize_monomials(
    graph: &Arc<Graph>,
    terms: impl IntoIterator<Item = (GaussianRational, Monomial)>,
    order: RewriteOrder,
) -> Element {
    let raw: Vec<RawTerm> = terms
        .into_iter()
        .map(|(coeff, m)| RawTerm {
            coeff,
            word: monomial_word(&m),
            t: 0,
        })
        .collect();
    normalize_terms(graph, &raw, order)
        .to_plain()
        .expect("no t-powers introduced")
}

/// Convenience: the element given by a single word with coefficient one.
pub fn word_element(graph: &Arc<Graph>, word: Vec<Letter>) -> Element {
    let mut raw = RawCombination::new(graph.clone());
    raw.push(GaussianRational::one(), word, 0);
    raw.normalize_plain(RewriteOrder::Leftmost)
        .expect("plain word")
}
