//! Elements of `L(E)` and `L(E) ⊗ k[t, t⁻¹]` in the canonical basis.
//!
//! Every element is a finite combination of canonical monomials `αβ*`: paths
//! `α`, `β` with a common range, excluding those where both paths end in the
//! special edge `γ_v` (the least edge emitted by `v`). Products are computed
//! monomial by monomial and pushed back into the basis with the rule
//! `γ_v γ_v* → v − Σ_{f ≠ γ_v} f f*`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::scalar::GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements live over different graphs ({0} vs {1})")]
    GraphMismatch(String, String),
    #[error("paths {0} and {1} do not share a range")]
    RangeMismatch(String, String),
    #[error("Laurent variable t used in a plain Leavitt path algebra")]
    UnexpectedLaurent,
}

/// A monomial `αβ*` with `r(α) = r(β)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: Path,
    beta: Path,
}

impl Monomial {
    pub fn new(g: &Graph, alpha: Path, beta: Path) -> Result<Monomial, AlgebraError> {
        if alpha.range(g) != beta.range(g) {
            return Err(AlgebraError::RangeMismatch(
                alpha.display(g).to_string(),
                beta.display(g).to_string(),
            ));
        }
        Ok(Monomial { alpha, beta })
    }

    pub(crate) fn new_unchecked(alpha: Path, beta: Path) -> Monomial {
        Monomial { alpha, beta }
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            alpha: Path::vertex(v),
            beta: Path::vertex(v),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Monomial {
        Monomial {
            alpha: Path::edge(g, e),
            beta: Path::vertex(g.r(e)),
        }
    }

    pub fn ghost(g: &Graph, e: EdgeId) -> Monomial {
        Monomial {
            alpha: Path::vertex(g.r(e)),
            beta: Path::edge(g, e),
        }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.alpha.range(g)
    }

    /// `|α| + |β|`
    pub fn weight(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    /// Gauge degree `|α| − |β|`.
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn is_canonical(&self, g: &Graph) -> bool {
        match (self.alpha.last_edge(), self.beta.last_edge()) {
            (Some(e), Some(f)) => !(e == f && g.special_edge(g.src(e)) == Some(e)),
            _ => true,
        }
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> MonomialDisplay<'a> {
        MonomialDisplay {
            mono: self,
            graph: g,
            t: 0,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.alpha.len().cmp(&other.alpha.len()))
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Signed expansion of a product or reduction: `(negated, monomial)` pairs.
pub type Expansion<T> = Vec<(bool, T)>;

/// Rewrites a possibly non-canonical monomial into canonical ones.
pub fn reduce_monomial(g: &Graph, m: Monomial) -> Expansion<Monomial> {
    let mut out = Vec::new();
    let mut cur = m;
    loop {
        match (cur.alpha.last_edge(), cur.beta.last_edge()) {
            (Some(e), Some(f)) if e == f && g.special_edge(g.src(e)) == Some(e) => {
                cur.alpha.pop();
                cur.beta.pop();
                let v = g.src(e);
                for &other in g.out_edges(v).iter().filter(|&&o| o != e) {
                    let mut a = cur.alpha.clone();
                    let mut b = cur.beta.clone();
                    a.push(g, other);
                    b.push(g, other);
                    out.push((true, Monomial { alpha: a, beta: b }));
                }
            }
            _ => {
                out.push((false, cur));
                return out;
            }
        }
    }
}

/// `(αβ*)(γδ*)` expanded in the canonical basis.
pub fn mul_monomials(g: &Graph, x: &Monomial, y: &Monomial) -> Expansion<Monomial> {
    let raw = if x.beta.is_prefix_of(&y.alpha) {
        let rest = x.beta.strip_from(g, &y.alpha);
        Monomial {
            alpha: x.alpha.concat(&rest),
            beta: y.beta.clone(),
        }
    } else if y.alpha.is_prefix_of(&x.beta) {
        let rest = y.alpha.strip_from(g, &x.beta);
        Monomial {
            alpha: x.alpha.clone(),
            beta: y.beta.concat(&rest),
        }
    } else {
        return Vec::new();
    };
    reduce_monomial(g, raw)
}

/// A monomial of `L(E) ⊗ k[t, t⁻¹]`: `αβ* ⊗ t^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentMonomial {
    pub mono: Monomial,
    pub t: i64,
}

impl LaurentMonomial {
    pub fn new(mono: Monomial, t: i64) -> Self {
        LaurentMonomial { mono, t }
    }
}

impl Ord for LaurentMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.mono.cmp(&other.mono))
            .then_with(|| self.t.cmp(&other.t))
    }
}

impl PartialOrd for LaurentMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Basis elements of a path algebra: what a [`Combination`] is a combination of.
pub trait BasisMonomial: Ord + Clone + Hash + fmt::Debug + Send + Sync {
    fn product(g: &Graph, x: &Self, y: &Self) -> Expansion<Self>;
    fn adjoint(&self) -> Self;
    /// Filtration weight used for truncations.
    fn weight(&self) -> usize;
    /// Degree for the grading of the ambient algebra.
    fn degree(&self) -> i64;
    fn fmt_with(&self, g: &Graph, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    fn from_monomial(m: Monomial) -> Self;
}

impl BasisMonomial for Monomial {
    fn product(g: &Graph, x: &Self, y: &Self) -> Expansion<Self> {
        mul_monomials(g, x, y)
    }

    fn adjoint(&self) -> Self {
        Monomial::adjoint(self)
    }

    fn weight(&self) -> usize {
        Monomial::weight(self)
    }

    fn degree(&self) -> i64 {
        Monomial::degree(self)
    }

    fn fmt_with(&self, g: &Graph, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display(g), f)
    }

    fn from_monomial(m: Monomial) -> Self {
        m
    }
}

impl BasisMonomial for LaurentMonomial {
    fn product(g: &Graph, x: &Self, y: &Self) -> Expansion<Self> {
        let t = x.t + y.t;
        mul_monomials(g, &x.mono, &y.mono)
            .into_iter()
            .map(|(neg, mono)| (neg, LaurentMonomial { mono, t }))
            .collect()
    }

    fn adjoint(&self) -> Self {
        LaurentMonomial {
            mono: self.mono.adjoint(),
            t: -self.t,
        }
    }

    /// `|α| + |β| + |k|`
    fn weight(&self) -> usize {
        self.mono.weight() + self.t.unsigned_abs() as usize
    }

    /// The t-exponent: the tensor factor carries the grading.
    fn degree(&self) -> i64 {
        self.t
    }

    fn fmt_with(&self, g: &Graph, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(
            &MonomialDisplay {
                mono: &self.mono,
                graph: g,
                t: self.t,
            },
            f,
        )
    }

    fn from_monomial(m: Monomial) -> Self {
        LaurentMonomial { mono: m, t: 0 }
    }
}

/// Prints a monomial as a word of generators, e.g. `e1.e2.f2*.f1*` or `v.t^-2`.
pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    graph: &'a Graph,
    t: i64,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        let (alpha, beta) = (&self.mono.alpha, &self.mono.beta);
        if alpha.is_empty() && beta.is_empty() {
            f.write_str(g.vertex_name(alpha.source()))?;
        } else {
            let mut first = true;
            for &e in alpha.edges() {
                if !first {
                    f.write_str(".")?;
                }
                first = false;
                f.write_str(g.edge_name(e))?;
            }
            for &e in beta.edges().iter().rev() {
                if !first {
                    f.write_str(".")?;
                }
                first = false;
                write!(f, "{}*", g.edge_name(e))?;
            }
        }
        match self.t {
            0 => Ok(()),
            1 => f.write_str(".t"),
            k => write!(f, ".t^{k}"),
        }
    }
}

/// A finite linear combination of basis monomials over a fixed graph.
///
/// Terms are kept in the deterministic monomial order; zero coefficients are
/// never stored, so the zero element is the empty map.
#[derive(Clone)]
pub struct Combination<T> {
    graph: Arc<Graph>,
    terms: BTreeMap<T, GaussianRational>,
}

/// An element of `L(E)`.
pub type Element = Combination<Monomial>;
/// An element of `L(E) ⊗ k[t, t⁻¹]`.
pub type LaurentElement = Combination<LaurentMonomial>;

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<T: BasisMonomial> Combination<T> {
    pub fn zero(graph: Arc<Graph>) -> Self {
        Combination {
            graph,
            terms: BTreeMap::new(),
        }
    }

    /// Sums `(coefficient, monomial)` pairs; the monomials must already be canonical.
    pub fn from_terms(
        graph: Arc<Graph>,
        terms: impl IntoIterator<Item = (GaussianRational, T)>,
    ) -> Self {
        let mut out = Combination::zero(graph);
        for (c, m) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn from_monomial(graph: Arc<Graph>, m: T) -> Self {
        Self::from_terms(graph, [(GaussianRational::one(), m)])
    }

    pub fn vertex(graph: &Arc<Graph>, v: VertexId) -> Self {
        Self::from_monomial(graph.clone(), T::from_monomial(Monomial::vertex(v)))
    }

    pub fn edge(graph: &Arc<Graph>, e: EdgeId) -> Self {
        Self::from_monomial(graph.clone(), T::from_monomial(Monomial::edge(graph, e)))
    }

    pub fn ghost(graph: &Arc<Graph>, e: EdgeId) -> Self {
        Self::from_monomial(graph.clone(), T::from_monomial(Monomial::ghost(graph, e)))
    }

    /// The unit `Σ_v v`.
    pub fn one(graph: &Arc<Graph>) -> Self {
        Self::from_terms(
            graph.clone(),
            graph.vertex_ids().map(|v| {
                (
                    GaussianRational::one(),
                    T::from_monomial(Monomial::vertex(v)),
                )
            }),
        )
    }

    pub fn scalar(graph: &Arc<Graph>, c: GaussianRational) -> Self {
        Self::one(graph).scale(&c)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn terms(&self) -> &BTreeMap<T, GaussianRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<T, GaussianRational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &T) -> GaussianRational {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Largest weight of a term, or `None` for zero.
    pub fn top_weight(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    pub(crate) fn add_term(&mut self, m: T, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_graph(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(AlgebraError::GraphMismatch(
                self.graph.name().into(),
                other.graph.name().into(),
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_graph(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_graph(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Combination::zero(self.graph.clone());
        }
        Combination {
            graph: self.graph.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_graph(other)?;
        let g = &*self.graph;
        let mut out = Combination::zero(self.graph.clone());
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let ab = a * b;
                for (neg, m) in T::product(g, x, y) {
                    if neg {
                        out.add_term(m, &-&ab);
                    } else {
                        out.add_term(m, &ab);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The involution: `(c·αβ*)* = c̄·βα*`.
    pub fn star(&self) -> Self {
        Combination {
            graph: self.graph.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.adjoint(), c.conj()))
                .collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one(&self.graph);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// True iff every term has degree `d` (zero is homogeneous of every degree).
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn map_terms<U: BasisMonomial>(&self, f: impl Fn(&T) -> U) -> Combination<U> {
        Combination::from_terms(
            self.graph.clone(),
            self.terms.iter().map(|(m, c)| (c.clone(), f(m))),
        )
    }
}

impl Element {
    /// `x ⊗ 1`
    pub fn to_laurent(&self) -> LaurentElement {
        self.map_terms(|m| LaurentMonomial {
            mono: m.clone(),
            t: 0,
        })
    }
}

impl LaurentElement {
    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: i64) -> LaurentElement {
        self.map_terms(|m| LaurentMonomial {
            mono: m.mono.clone(),
            t: m.t + k,
        })
    }

    /// Drops the tensor factor; fails if any term carries a nonzero t-power.
    pub fn to_plain(&self) -> Result<Element, AlgebraError> {
        if self.terms.keys().any(|m| m.t != 0) {
            return Err(AlgebraError::UnexpectedLaurent);
        }
        Ok(self.map_terms(|m| m.mono.clone()))
    }
}

impl<T: BasisMonomial> PartialEq for Combination<T> {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl<T: BasisMonomial> Eq for Combination<T> {}

impl<T: BasisMonomial> fmt::Display for Combination<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative_like() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            m.fmt_with(&self.graph, f)?;
        }
        Ok(())
    }
}

impl<T: BasisMonomial> fmt::Debug for Combination<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.graph.name(), self)
    }
}

// Operator forms panic on mismatched graphs; use the `try_` methods to get an error instead.
impl<T: BasisMonomial> Add for &Combination<T> {
    type Output = Combination<T>;
    fn add(self, o: &Combination<T>) -> Combination<T> {
        self.try_add(o).expect("graph mismatch")
    }
}

impl<T: BasisMonomial> Sub for &Combination<T> {
    type Output = Combination<T>;
    fn sub(self, o: &Combination<T>) -> Combination<T> {
        self.try_sub(o).expect("graph mismatch")
    }
}

impl<T: BasisMonomial> Mul for &Combination<T> {
    type Output = Combination<T>;
    fn mul(self, o: &Combination<T>) -> Combination<T> {
        self.try_mul(o).expect("graph mismatch")
    }
}

impl<T: BasisMonomial> Neg for &Combination<T> {
    type Output = Combination<T>;
    fn neg(self) -> Combination<T> {
        self.scale(&-GaussianRational::one())
    }
}
