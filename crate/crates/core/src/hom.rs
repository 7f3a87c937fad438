//! *-homomorphisms between Leavitt path algebras given on generators.
//!
//! Every algebra in a diagram is described by an [`AlgebraRef`]: a plain
//! `L(E)`, a Laurent extension `L(E) ⊗ k[t, t⁻¹]`, or the zero algebra.
//! Elements of all three are carried as [`LaurentElement`]s; in a plain algebra
//! every term has t-power zero, and the zero algebra lives over the empty graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::basis::{
    basis_at_weight, basis_at_weight_degree, laurent_basis_at_weight,
    laurent_basis_at_weight_degree,
};
use crate::graph::{Graph, GraphError, VertexId};
use crate::linalg::{Echelon, ExactMatrix, SparseVec};
use crate::lpa::{same_graph, AlgebraError, LaurentElement, LaurentMonomial};
use crate::parse::{parse_raw, ParseError};
use crate::rewrite::{monomial_word, Letter, RewriteOrder};
use crate::scalar::GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("no image given for generator {0}")]
    MissingImage(String),
    #[error("{0} is not a generator of the domain")]
    UnknownGenerator(String),
    #[error("image of {generator}: {source}")]
    Parse {
        generator: String,
        source: ParseError,
    },
    #[error("homomorphism {0} is not verified as well defined")]
    NotVerified(String),
    #[error("cannot compose: codomain of {0} is not the domain of {1}")]
    ChainMismatch(String, String),
    #[error("diagram shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("homomorphism {0} is not graded; degreewise comparison is unavailable")]
    Ungraded(String),
    #[error("a Laurent algebra cannot use the reserved id t")]
    ReservedId,
    #[error("element does not belong to the domain of {0}")]
    ForeignElement(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One corner of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraRef {
    graph: Arc<Graph>,
    laurent: bool,
    zero: bool,
}

impl AlgebraRef {
    pub fn plain(graph: Arc<Graph>) -> Self {
        AlgebraRef {
            graph,
            laurent: false,
            zero: false,
        }
    }

    pub fn laurent(graph: Arc<Graph>) -> Result<Self, HomError> {
        if graph.has_id("t") {
            return Err(HomError::ReservedId);
        }
        Ok(AlgebraRef {
            graph,
            laurent: true,
            zero: false,
        })
    }

    pub fn zero() -> Self {
        AlgebraRef {
            graph: Arc::new(Graph::empty("0")),
            laurent: false,
            zero: true,
        }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn describe(&self) -> String {
        if self.zero {
            "0".into()
        } else if self.laurent {
            format!("L({})[t,t^-1]", self.graph.name())
        } else {
            format!("L({})", self.graph.name())
        }
    }

    /// Generator ids: vertices, edges, and `t` for Laurent algebras.
    pub fn generators(&self) -> Vec<String> {
        let g = &self.graph;
        let mut out: Vec<String> = g
            .vertex_ids()
            .map(|v| g.vertex_name(v).to_string())
            .collect();
        out.extend(g.edge_ids().map(|e| g.edge_name(e).to_string()));
        if self.laurent {
            out.push("t".into());
        }
        out
    }

    /// The generator as an element of this algebra.
    pub fn generator(&self, id: &str) -> Option<LaurentElement> {
        let g = &self.graph;
        if let Some(v) = g.vertex(id) {
            Some(LaurentElement::vertex(g, v))
        } else if let Some(e) = g.edge(id) {
            Some(LaurentElement::edge(g, e))
        } else if self.laurent && id == "t" {
            Some(LaurentElement::one(g).shift_t(1))
        } else {
            None
        }
    }

    /// Degree of a generator in this algebra's grading.
    pub fn generator_degree(&self, id: &str) -> i64 {
        match (self.laurent, id) {
            (true, "t") => 1,
            (true, _) => 0,
            (false, _) if self.graph.edge(id).is_some() => 1,
            _ => 0,
        }
    }

    /// Degree of a basis monomial in this algebra's grading.
    pub fn degree(&self, m: &LaurentMonomial) -> i64 {
        if self.laurent {
            m.t
        } else {
            m.mono.degree()
        }
    }

    pub fn is_homogeneous_of(&self, x: &LaurentElement, d: i64) -> bool {
        x.terms().keys().all(|m| self.degree(m) == d)
    }

    pub fn basis_at_weight(&self, n: usize) -> Vec<LaurentMonomial> {
        if self.laurent {
            laurent_basis_at_weight(&self.graph, n)
        } else {
            basis_at_weight(&self.graph, n)
                .into_iter()
                .map(|m| LaurentMonomial::new(m, 0))
                .collect()
        }
    }

    pub fn basis_at_weight_degree(&self, n: usize, d: i64) -> Vec<LaurentMonomial> {
        if self.laurent {
            laurent_basis_at_weight_degree(&self.graph, n, d)
        } else {
            basis_at_weight_degree(&self.graph, n, d)
                .into_iter()
                .map(|m| LaurentMonomial::new(m, 0))
                .collect()
        }
    }

    pub fn parse(&self, src: &str) -> Result<LaurentElement, ParseError> {
        Ok(parse_raw(&self.graph, src, self.laurent)?.normalize(RewriteOrder::Leftmost))
    }

    pub fn one(&self) -> LaurentElement {
        LaurentElement::one(&self.graph)
    }

    pub fn contains(&self, x: &LaurentElement) -> bool {
        same_graph(&self.graph, x.graph()) && (self.laurent || x.terms().keys().all(|m| m.t == 0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Unset,
    Verified,
    Failed,
}

/// Weight growth `n ↦ a·n + b` of a homomorphism on the weight filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionBound {
    pub a: usize,
    pub b: usize,
}

impl ExpansionBound {
    pub fn at(&self, n: usize) -> usize {
        self.a * n + self.b
    }
}

/// A *-homomorphism defined by images of vertex and edge generators (and `t`).
/// Images of adjoints are always `star` of the given image.
#[derive(Clone)]
pub struct GenHom {
    name: String,
    domain: AlgebraRef,
    codomain: AlgebraRef,
    images: BTreeMap<String, LaurentElement>,
    vertex_images: Vec<LaurentElement>,
    edge_images: Vec<LaurentElement>,
    ghost_images: Vec<LaurentElement>,
    t_image: Option<(LaurentElement, LaurentElement)>,
    well_defined: Flag,
    graded: Flag,
    failed_relations: Vec<String>,
    expansion: ExpansionBound,
}

impl fmt::Debug for GenHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenHom")
            .field("name", &self.name)
            .field("domain", &self.domain.describe())
            .field("codomain", &self.codomain.describe())
            .field(
                "images",
                &self
                    .images
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_string()))
                    .collect::<BTreeMap<_, _>>(),
            )
            .field("well_defined", &self.well_defined)
            .field("graded", &self.graded)
            .finish()
    }
}

impl GenHom {
    pub fn new(
        name: &str,
        domain: AlgebraRef,
        codomain: AlgebraRef,
        images: BTreeMap<String, LaurentElement>,
    ) -> Result<GenHom, HomError> {
        let gens = domain.generators();
        for key in images.keys() {
            if !gens.contains(key) {
                return Err(HomError::UnknownGenerator(key.clone()));
            }
        }
        for (key, x) in &images {
            if !codomain.contains(x) {
                return Err(HomError::ShapeMismatch(format!(
                    "image of {key} is not in {}",
                    codomain.describe()
                )));
            }
        }
        let get = |id: &str| {
            images
                .get(id)
                .cloned()
                .ok_or_else(|| HomError::MissingImage(id.into()))
        };
        let g = domain.graph.clone();
        let vertex_images = g
            .vertex_ids()
            .map(|v| get(g.vertex_name(v)))
            .collect::<Result<Vec<_>, _>>()?;
        let edge_images = g
            .edge_ids()
            .map(|e| get(g.edge_name(e)))
            .collect::<Result<Vec<_>, _>>()?;
        let ghost_images = edge_images.iter().map(|x| x.star()).collect();
        let t_image = if domain.laurent {
            let t = get("t")?;
            let t_inv = t.star();
            Some((t, t_inv))
        } else {
            None
        };
        let top = |x: &LaurentElement| x.top_weight().unwrap_or(0);
        let a = edge_images
            .iter()
            .chain(t_image.as_ref().map(|p| &p.0))
            .map(top)
            .max()
            .unwrap_or(0);
        let b = vertex_images.iter().map(top).max().unwrap_or(0);
        Ok(GenHom {
            name: name.into(),
            domain,
            codomain,
            images,
            vertex_images,
            edge_images,
            ghost_images,
            t_image,
            well_defined: Flag::Unset,
            graded: Flag::Unset,
            failed_relations: Vec::new(),
            expansion: ExpansionBound { a, b },
        })
    }

    /// Builds a homomorphism from image expressions in the codomain's syntax.
    /// Generators with no listed image default to `0` only when the codomain is
    /// the zero algebra.
    pub fn from_expressions(
        name: &str,
        domain: AlgebraRef,
        codomain: AlgebraRef,
        exprs: &BTreeMap<String, String>,
    ) -> Result<GenHom, HomError> {
        let mut images = BTreeMap::new();
        for (k, src) in exprs {
            let x = codomain.parse(src).map_err(|source| HomError::Parse {
                generator: k.clone(),
                source,
            })?;
            images.insert(k.clone(), x);
        }
        if codomain.zero {
            for gen in domain.generators() {
                images
                    .entry(gen)
                    .or_insert_with(|| LaurentElement::zero(codomain.graph.clone()));
            }
        }
        GenHom::new(name, domain, codomain, images)
    }

    pub fn identity(alg: &AlgebraRef) -> GenHom {
        let images = alg.generators().into_iter().map(|id| {
            let x = alg.generator(&id).expect("own generator");
            (id, x)
        });
        let mut h = GenHom::new("id", alg.clone(), alg.clone(), images.collect())
            .expect("identity is well formed");
        h.verify();
        h
    }

    /// The zero map into `codomain`.
    pub fn zero_map(name: &str, domain: &AlgebraRef, codomain: &AlgebraRef) -> GenHom {
        let images = domain
            .generators()
            .into_iter()
            .map(|id| (id, LaurentElement::zero(codomain.graph.clone())))
            .collect();
        GenHom::new(name, domain.clone(), codomain.clone(), images)
            .expect("zero map is well formed")
    }

    /// The coaction `δ: L(E) → L(E) ⊗ k[t, t⁻¹]`, `v ↦ v`, `e ↦ e ⊗ t`.
    pub fn coaction(graph: &Arc<Graph>) -> Result<GenHom, HomError> {
        let domain = AlgebraRef::plain(graph.clone());
        let codomain = AlgebraRef::laurent(graph.clone())?;
        let mut images = BTreeMap::new();
        for v in graph.vertex_ids() {
            images.insert(
                graph.vertex_name(v).to_string(),
                LaurentElement::vertex(graph, v),
            );
        }
        for e in graph.edge_ids() {
            images.insert(
                graph.edge_name(e).to_string(),
                LaurentElement::edge(graph, e).shift_t(1),
            );
        }
        let mut h = GenHom::new("delta", domain, codomain, images)?;
        h.verify();
        Ok(h)
    }

    /// The surjection `L(E) → L(E ∖ H)` for a hereditary saturated `H`.
    pub fn quotient(graph: &Arc<Graph>, h: &BTreeSet<VertexId>) -> Result<GenHom, HomError> {
        let target = Arc::new(graph.remove_vertices(h)?);
        let domain = AlgebraRef::plain(graph.clone());
        let codomain = AlgebraRef::plain(target.clone());
        let mut images = BTreeMap::new();
        for v in graph.vertex_ids() {
            let name = graph.vertex_name(v);
            let img = match target.vertex(name) {
                Some(w) => LaurentElement::vertex(&target, w),
                None => LaurentElement::zero(target.clone()),
            };
            images.insert(name.to_string(), img);
        }
        for e in graph.edge_ids() {
            let name = graph.edge_name(e);
            let img = match target.edge(name) {
                Some(f) => LaurentElement::edge(&target, f),
                None => LaurentElement::zero(target.clone()),
            };
            images.insert(name.to_string(), img);
        }
        let mut q = GenHom::new("quotient", domain, codomain, images)?;
        q.verify();
        Ok(q)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn domain(&self) -> &AlgebraRef {
        &self.domain
    }

    pub fn codomain(&self) -> &AlgebraRef {
        &self.codomain
    }

    pub fn images(&self) -> &BTreeMap<String, LaurentElement> {
        &self.images
    }

    pub fn well_defined(&self) -> Flag {
        self.well_defined
    }

    pub fn graded(&self) -> Flag {
        self.graded
    }

    pub fn failed_relations(&self) -> &[String] {
        &self.failed_relations
    }

    pub fn expansion_bound(&self) -> ExpansionBound {
        self.expansion
    }

    fn letter_image(&self, l: Letter) -> &LaurentElement {
        match l {
            Letter::Vertex(v) => &self.vertex_images[v as usize],
            Letter::Edge(e) => &self.edge_images[e as usize],
            Letter::Ghost(e) => &self.ghost_images[e as usize],
        }
    }

    /// Image of `word ⊗ t^k`; the empty word is the unit.
    fn eval_word(&self, word: &[Letter], t: i64) -> LaurentElement {
        let mut acc: Option<LaurentElement> = None;
        for &l in word {
            let img = self.letter_image(l);
            acc = Some(match acc {
                None => img.clone(),
                Some(a) => &a * img,
            });
            if acc.as_ref().is_some_and(|a| a.is_zero()) {
                return LaurentElement::zero(self.codomain.graph.clone());
            }
        }
        let mut acc = match acc {
            Some(a) => a,
            None => self
                .vertex_images
                .iter()
                .fold(LaurentElement::zero(self.codomain.graph.clone()), |s, x| {
                    &s + x
                }),
        };
        if t != 0 {
            let (tp, tn) = self
                .t_image
                .as_ref()
                .expect("t-powers only occur in Laurent domains");
            let factor = if t > 0 { tp } else { tn };
            for _ in 0..t.unsigned_abs() {
                acc = &acc * factor;
            }
        }
        acc
    }

    fn apply_unchecked(&self, x: &LaurentElement) -> LaurentElement {
        let mut out = LaurentElement::zero(self.codomain.graph.clone());
        for (m, c) in x.terms() {
            let img = self.eval_word(&monomial_word(&m.mono), m.t);
            out = &out + &img.scale(c);
        }
        out
    }

    /// Multiplicative-linear extension of the generator images.
    pub fn apply(&self, x: &LaurentElement) -> Result<LaurentElement, HomError> {
        if self.well_defined != Flag::Verified {
            return Err(HomError::NotVerified(self.name.clone()));
        }
        if !self.domain.contains(x) {
            return Err(HomError::ForeignElement(self.name.clone()));
        }
        Ok(self.apply_unchecked(x))
    }

    /// Defining relations of the domain, each as `(label, raw terms)` with
    /// raw terms `(coefficient, word, t-power)`.
    fn relations(&self) -> Vec<(String, Vec<(GaussianRational, Vec<Letter>, i64)>)> {
        let g = &*self.domain.graph;
        let one = GaussianRational::one;
        let minus = || -GaussianRational::one();
        let vn = |v: VertexId| g.vertex_name(v).to_string();
        let mut rels = Vec::new();
        for v in g.vertex_ids() {
            for w in g.vertex_ids() {
                let mut terms = vec![(one(), vec![Letter::Vertex(v), Letter::Vertex(w)], 0)];
                if v == w {
                    terms.push((minus(), vec![Letter::Vertex(v)], 0));
                }
                rels.push((format!("{}.{} = δ {}", vn(v), vn(w), vn(v)), terms));
            }
        }
        for e in g.edge_ids() {
            let en = g.edge_name(e);
            rels.push((
                format!("s({en}).{en} = {en}"),
                vec![
                    (one(), vec![Letter::Vertex(g.src(e)), Letter::Edge(e)], 0),
                    (minus(), vec![Letter::Edge(e)], 0),
                ],
            ));
            rels.push((
                format!("{en}.r({en}) = {en}"),
                vec![
                    (one(), vec![Letter::Edge(e), Letter::Vertex(g.r(e))], 0),
                    (minus(), vec![Letter::Edge(e)], 0),
                ],
            ));
            for f in g.edge_ids() {
                let mut terms = vec![(one(), vec![Letter::Ghost(e), Letter::Edge(f)], 0)];
                if e == f {
                    terms.push((minus(), vec![Letter::Vertex(g.r(e))], 0));
                }
                rels.push((format!("{en}*.{} = δ r({en})", g.edge_name(f)), terms));
            }
        }
        for v in g.vertex_ids().filter(|&v| g.is_regular(v)) {
            let mut terms: Vec<_> = g
                .out_edges(v)
                .iter()
                .map(|&e| (one(), vec![Letter::Edge(e), Letter::Ghost(e)], 0))
                .collect();
            terms.push((minus(), vec![Letter::Vertex(v)], 0));
            rels.push((format!("Σ e.e* = {}", vn(v)), terms));
        }
        if self.domain.laurent {
            let gens: Vec<(String, Letter)> = g
                .vertex_ids()
                .map(|v| (vn(v), Letter::Vertex(v)))
                .chain(
                    g.edge_ids()
                        .map(|e| (g.edge_name(e).to_string(), Letter::Edge(e))),
                )
                .collect();
            for (name, l) in gens {
                rels.push((
                    format!("t.{name} = {name}.t"),
                    vec![(one(), vec![l], 1), (minus(), vec![l], 1)],
                ));
            }
            rels.push((
                "t.t* = 1".into(),
                vec![(one(), vec![], 1), (minus(), vec![], 0)],
            ));
        }
        rels
    }

    fn eval_relation(
        &self,
        label: &str,
        terms: &[(GaussianRational, Vec<Letter>, i64)],
    ) -> LaurentElement {
        let zero = LaurentElement::zero(self.codomain.graph.clone());
        if label.starts_with("t.") && terms.len() == 2 && !terms[0].1.is_empty() {
            // centrality: image(t)·image(g) − image(g)·image(t)
            let (tp, _) = self.t_image.as_ref().expect("Laurent domain");
            let gi = self.eval_word(&terms[0].1, 0);
            return &(tp * &gi) - &(&gi * tp);
        }
        if label == "t.t* = 1" {
            let (tp, tn) = self.t_image.as_ref().expect("Laurent domain");
            return &(tp * tn) - &self.eval_word(&[], 0);
        }
        terms.iter().fold(zero, |acc, (c, w, t)| {
            &acc + &self.eval_word(w, *t).scale(c)
        })
    }

    /// Evaluates every defining relation of the domain under the images.
    pub fn check_well_defined(&mut self) -> Flag {
        let mut failed = Vec::new();
        for (i, v) in self.vertex_images.iter().enumerate() {
            if v.star() != *v {
                failed.push(format!(
                    "{0}* = {0}",
                    self.domain.graph.vertex_name(i as VertexId)
                ));
            }
        }
        if let Some((tp, tn)) = &self.t_image {
            if &(tn * tp) - &self.eval_word(&[], 0)
                != LaurentElement::zero(self.codomain.graph.clone())
            {
                failed.push("t*.t = 1".into());
            }
        }
        for (label, terms) in self.relations() {
            if !self.eval_relation(&label, &terms).is_zero() {
                failed.push(label);
            }
        }
        self.well_defined = if failed.is_empty() {
            Flag::Verified
        } else {
            Flag::Failed
        };
        self.failed_relations = failed;
        self.well_defined
    }

    /// Checks that each generator image is homogeneous of the generator's degree.
    pub fn check_graded(&mut self) -> Flag {
        if self.well_defined != Flag::Verified {
            self.graded = Flag::Unset;
            return self.graded;
        }
        let ok = self.images.iter().all(|(id, x)| {
            self.codomain
                .is_homogeneous_of(x, self.domain.generator_degree(id))
        });
        self.graded = if ok { Flag::Verified } else { Flag::Failed };
        self.graded
    }

    /// Runs both checks.
    pub fn verify(&mut self) -> (Flag, Flag) {
        (self.check_well_defined(), self.check_graded())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GenHom) -> Result<GenHom, HomError> {
        if inner.codomain != self.domain {
            return Err(HomError::ChainMismatch(
                inner.name.clone(),
                self.name.clone(),
            ));
        }
        if self.well_defined != Flag::Verified {
            return Err(HomError::NotVerified(self.name.clone()));
        }
        if inner.well_defined != Flag::Verified {
            return Err(HomError::NotVerified(inner.name.clone()));
        }
        let images = inner
            .images
            .iter()
            .map(|(k, x)| (k.clone(), self.apply_unchecked(x)))
            .collect();
        let mut h = GenHom::new(
            &format!("{}∘{}", self.name, inner.name),
            inner.domain.clone(),
            self.codomain.clone(),
            images,
        )?;
        h.verify();
        Ok(h)
    }

    pub fn image_table(&self) -> BTreeMap<String, String> {
        self.images
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect()
    }
}

/// Finite-stage behaviour of a homomorphism on the weight-`n` truncation.
#[derive(Debug, Clone)]
pub struct LevelAnalysis {
    pub n: usize,
    pub bound: usize,
    pub domain_basis: Vec<LaurentMonomial>,
    /// Codomain basis monomials indexing the matrix rows: all of weight `≤ n`
    /// plus any further ones reached by the image (weight `≤ bound`).
    pub codomain_basis: Vec<LaurentMonomial>,
    /// Column `j` holds the coordinates of the image of `domain_basis[j]`.
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub injective_at_n: bool,
    pub surjective_at_n: bool,
}

pub fn level_analysis(h: &GenHom, n: usize) -> Result<LevelAnalysis, HomError> {
    if h.well_defined != Flag::Verified {
        return Err(HomError::NotVerified(h.name.clone()));
    }
    let domain_basis = h.domain.basis_at_weight(n);
    let bound = h.expansion.at(n);
    let images: Vec<LaurentElement> = domain_basis
        .iter()
        .map(|m| {
            h.apply_unchecked(&LaurentElement::from_monomial(
                h.domain.graph.clone(),
                m.clone(),
            ))
        })
        .collect();
    let targets = h.codomain.basis_at_weight(n);
    let mut keys: BTreeSet<LaurentMonomial> = targets.iter().cloned().collect();
    for x in &images {
        debug_assert!(x.top_weight().unwrap_or(0) <= bound.max(n));
        keys.extend(x.terms().keys().cloned());
    }
    let codomain_basis: Vec<LaurentMonomial> = keys.into_iter().collect();
    let index: HashMap<&LaurentMonomial, usize> = codomain_basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let to_vec = |x: &LaurentElement| -> SparseVec {
        let mut v: SparseVec = x
            .terms()
            .iter()
            .map(|(m, c)| (index[m], c.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };
    let rows: Vec<SparseVec> = images.iter().map(to_vec).collect();
    let mut ech = Echelon::new();
    for r in &rows {
        ech.insert(r);
    }
    let rank = ech.rank();
    let surjective = targets
        .iter()
        .all(|m| ech.contains(&vec![(index[m], GaussianRational::one())]));
    let matrix = ExactMatrix::from_sparse_rows(codomain_basis.len(), rows)
        .expect("rows indexed within the codomain basis")
        .transpose();
    Ok(LevelAnalysis {
        n,
        bound,
        injective_at_n: rank == domain_basis.len(),
        surjective_at_n: surjective,
        domain_basis,
        codomain_basis,
        matrix,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;

    fn lp() -> Arc<Graph> {
        Arc::new(
            GraphSpec::new("loop", &["v"], &[("x", "v", "v")])
                .validate()
                .unwrap(),
        )
    }

    fn exprs(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    fn hom(dom: &AlgebraRef, cod: &AlgebraRef, pairs: &[(&str, &str)]) -> GenHom {
        let mut h = GenHom::from_expressions("h", dom.clone(), cod.clone(), &exprs(pairs)).unwrap();
        h.verify();
        h
    }

    #[test]
    fn well_definedness_examples() {
        let a = AlgebraRef::plain(lp());
        let h = hom(&a, &a, &[("v", "v"), ("x", "1i*x")]);
        assert_eq!(h.well_defined(), Flag::Verified);
        assert_eq!(h.graded(), Flag::Verified);

        let ev = hom(&a, &a, &[("v", "v"), ("x", "v")]);
        assert_eq!(ev.well_defined(), Flag::Verified);
        assert_eq!(ev.graded(), Flag::Failed);

        let line = Arc::new(
            GraphSpec::new("line", &["v1", "v2"], &[("e", "v1", "v2")])
                .validate()
                .unwrap(),
        );
        let l = AlgebraRef::plain(line);
        let bad = hom(&l, &l, &[("v1", "v2"), ("v2", "v1"), ("e", "e")]);
        assert_eq!(bad.well_defined(), Flag::Failed);
        assert!(bad.failed_relations().iter().any(|r| r == "s(e).e = e"));
    }

    #[test]
    fn missing_and_unknown_generators() {
        let a = AlgebraRef::plain(lp());
        let err =
            GenHom::from_expressions("h", a.clone(), a.clone(), &exprs(&[("v", "v")])).unwrap_err();
        assert_eq!(err, HomError::MissingImage("x".into()));
        let err = GenHom::from_expressions(
            "h",
            a.clone(),
            a.clone(),
            &exprs(&[("v", "v"), ("x", "x"), ("y", "v")]),
        )
        .unwrap_err();
        assert_eq!(err, HomError::UnknownGenerator("y".into()));
    }

    #[test]
    fn coaction_is_graded_and_applies() {
        let g = lp();
        let delta = GenHom::coaction(&g).unwrap();
        assert_eq!(
            (delta.well_defined(), delta.graded()),
            (Flag::Verified, Flag::Verified)
        );
        let a = AlgebraRef::plain(g.clone());
        let xx = a.parse("x.x*").unwrap();
        assert_eq!(delta.apply(&xx).unwrap().to_string(), "v");
        let lg = Arc::new(
            GraphSpec::new("o2", &["v"], &[("e", "v", "v"), ("f", "v", "v")])
                .validate()
                .unwrap(),
        );
        let d2 = GenHom::coaction(&lg).unwrap();
        let ee = AlgebraRef::plain(lg).parse("e.e*").unwrap();
        assert_eq!(d2.apply(&ee).unwrap().to_string(), ee.to_string());
    }

    #[test]
    fn laurent_domain_relations() {
        let g = lp();
        let b = AlgebraRef::laurent(g.clone()).unwrap();
        let id = GenHom::identity(&b);
        assert_eq!(
            (id.well_defined(), id.graded()),
            (Flag::Verified, Flag::Verified)
        );
        // t ↦ 2t is not unitary
        let bad = hom(&b, &b, &[("v", "v"), ("x", "x"), ("t", "2*t")]);
        assert_eq!(bad.well_defined(), Flag::Failed);
        // evaluation t ↦ 1 is a *-hom but not graded
        let ev = hom(&b, &b, &[("v", "v"), ("x", "x"), ("t", "1")]);
        assert_eq!(
            (ev.well_defined(), ev.graded()),
            (Flag::Verified, Flag::Failed)
        );
        // t ↦ x is unitary but not central... x is central here (one loop), so it is fine
        let tx = hom(&b, &b, &[("v", "v"), ("x", "x"), ("t", "x")]);
        assert_eq!(tx.well_defined(), Flag::Verified);
    }

    #[test]
    fn compose_and_identity() {
        let a = AlgebraRef::plain(lp());
        let h = hom(&a, &a, &[("v", "v"), ("x", "1i*x")]);
        let id = GenHom::identity(&a);
        let c = id.compose(&h).unwrap();
        assert_eq!(c.image_table(), h.image_table());
        let hh = h.compose(&h).unwrap();
        assert_eq!(hh.images()["x"].to_string(), "-x");
        let unverified =
            GenHom::from_expressions("u", a.clone(), a.clone(), &exprs(&[("v", "v"), ("x", "x")]))
                .unwrap();
        assert!(matches!(
            unverified.apply(&a.one()),
            Err(HomError::NotVerified(_))
        ));
    }

    #[test]
    fn quotient_examples() {
        let lp1 = lp();
        let u = Arc::new(Graph::disjoint_union(&lp1, &lp1));
        let q = GenHom::quotient(&u, &BTreeSet::new()).unwrap();
        for (k, v) in q.images() {
            assert_eq!(&v.to_string(), k);
        }
        let h = u.vertex_set(&["b_v"]).unwrap();
        let p = GenHom::quotient(&u, &h).unwrap();
        assert_eq!(p.codomain().graph().vertex_count(), 1);
        let x = AlgebraRef::plain(u.clone()).parse("b_x.b_x + a_x").unwrap();
        assert_eq!(p.apply(&x).unwrap().to_string(), "a_x");

        let uv = Arc::new(
            GraphSpec::new("uv", &["u", "v"], &[("e", "u", "v"), ("f", "v", "v")])
                .validate()
                .unwrap(),
        );
        assert!(GenHom::quotient(&uv, &uv.vertex_set(&["v"]).unwrap()).is_err());
    }

    #[test]
    fn level_analysis_examples() {
        let g = lp();
        let a = AlgebraRef::plain(g.clone());
        let id = GenHom::identity(&a);
        for n in 0..4 {
            let la = level_analysis(&id, n).unwrap();
            assert!(la.injective_at_n && la.surjective_at_n);
        }
        let delta = GenHom::coaction(&g).unwrap();
        let la = level_analysis(&delta, 2).unwrap();
        assert!(la.injective_at_n);
        assert!(!la.surjective_at_n);
        assert_eq!(la.bound, 4);
    }
}
