//! Commutative squares
//!
//! ```text
//!     C --g--> B
//!     |        |
//!     f        r
//!     v        v
//!     A --l--> D
//! ```
//!
//! checked as pullbacks at finite weight truncations, one degree at a time,
//! and the hypothesis certificate for passing to C*-completions.

use std::collections::{BTreeMap, HashMap};

use num::One;
use serde::Serialize;
use serde_json::json;

use crate::af::{acyclic_structure, bratteli_diagram};
use crate::grading::Action;
use crate::hom::{AlgebraRef, Flag, GenHom, HomError};
use crate::linalg::{Echelon, SparseVec, Subspace};
use crate::lpa::{LaurentElement, LaurentMonomial};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone)]
pub struct Diagram {
    pub a: AlgebraRef,
    pub b: AlgebraRef,
    pub c: AlgebraRef,
    pub d: AlgebraRef,
    pub f: GenHom,
    pub g: GenHom,
    pub l: GenHom,
    pub r: GenHom,
    /// Preimages under `r` of the generators of `D`; `None` when not supplied.
    pub witnesses: Option<BTreeMap<String, LaurentElement>>,
}

fn check_shape(h: &GenHom, dom: &AlgebraRef, cod: &AlgebraRef, name: &str) -> Result<(), HomError> {
    if h.domain() != dom || h.codomain() != cod {
        return Err(HomError::ShapeMismatch(format!(
            "{name} must map {} to {}, found {} to {}",
            dom.describe(),
            cod.describe(),
            h.domain().describe(),
            h.codomain().describe()
        )));
    }
    Ok(())
}

impl Diagram {
    /// Assembles the square and runs the well-definedness and grading checks
    /// on all four maps.
    pub fn new(
        f: GenHom,
        g: GenHom,
        l: GenHom,
        r: GenHom,
        witnesses: Option<BTreeMap<String, LaurentElement>>,
    ) -> Result<Diagram, HomError> {
        let (c, a) = (f.domain().clone(), f.codomain().clone());
        let (b, d) = (r.domain().clone(), r.codomain().clone());
        check_shape(&f, &c, &a, "f")?;
        check_shape(&g, &c, &b, "g")?;
        check_shape(&l, &a, &d, "l")?;
        check_shape(&r, &b, &d, "r")?;
        if let Some(w) = &witnesses {
            for (k, x) in w {
                if !b.contains(x) {
                    return Err(HomError::ShapeMismatch(format!(
                        "witness for {k} is not in {}",
                        b.describe()
                    )));
                }
            }
        }
        let mut maps = [
            f.with_name("f"),
            g.with_name("g"),
            l.with_name("l"),
            r.with_name("r"),
        ];
        for h in &mut maps {
            h.verify();
        }
        let [f, g, l, r] = maps;
        Ok(Diagram {
            a,
            b,
            c,
            d,
            f,
            g,
            l,
            r,
            witnesses,
        })
    }

    fn maps(&self) -> [&GenHom; 4] {
        [&self.f, &self.g, &self.l, &self.r]
    }

    fn require_verified(&self) -> Result<(), HomError> {
        for h in self.maps() {
            if h.well_defined() != Flag::Verified {
                return Err(HomError::NotVerified(h.name().into()));
            }
        }
        Ok(())
    }

    fn require_graded(&self) -> Result<(), HomError> {
        self.require_verified()?;
        for h in self.maps() {
            if h.graded() != Flag::Verified {
                return Err(HomError::Ungraded(h.name().into()));
            }
        }
        Ok(())
    }
}

/// `l ∘ f = r ∘ g` on every generator of `C`.
pub fn square_commutes(dg: &Diagram) -> Result<bool, HomError> {
    dg.require_verified()?;
    for id in dg.c.generators() {
        let x = dg.c.generator(&id).expect("own generator");
        let left = dg.l.apply(&dg.f.apply(&x)?)?;
        let right = dg.r.apply(&dg.g.apply(&x)?)?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: i64,
    pub c_dim: usize,
    pub a_dim: usize,
    pub b_dim: usize,
    pub fiber_dim: usize,
    pub image_dim: usize,
    pub injective: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackLevel {
    pub n: usize,
    pub commutes: bool,
    pub fiber_dim: usize,
    pub image_dim: usize,
    pub injective: bool,
    pub pass: bool,
    pub degrees: Vec<DegreeRecord>,
}

fn by_degree(alg: &AlgebraRef, n: usize) -> BTreeMap<i64, Vec<LaurentMonomial>> {
    let mut out: BTreeMap<i64, Vec<LaurentMonomial>> = BTreeMap::new();
    for m in alg.basis_at_weight(n) {
        out.entry(alg.degree(&m)).or_default().push(m);
    }
    out
}

fn image(h: &GenHom, alg: &AlgebraRef, m: &LaurentMonomial) -> LaurentElement {
    h.apply(&LaurentElement::from_monomial(
        alg.graph().clone(),
        m.clone(),
    ))
    .expect("verified map on its domain")
}

/// Column indexer that hands out fresh indices on first sight.
struct Columns<K>(HashMap<K, usize>);

impl<K: std::hash::Hash + Eq> Columns<K> {
    fn new() -> Self {
        Columns(HashMap::new())
    }

    fn index(&mut self, key: K) -> usize {
        let next = self.0.len();
        *self.0.entry(key).or_insert(next)
    }
}

fn sorted(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Rows of an echelon basis whose pivot is at or beyond `offset`, shifted down.
fn rows_beyond(ech: Echelon, offset: usize) -> Vec<SparseVec> {
    ech.into_reduced()
        .into_iter()
        .filter(|r| r.first().is_some_and(|(c, _)| *c >= offset))
        .map(|r| r.into_iter().map(|(c, x)| (c - offset, x)).collect())
        .collect()
}

fn degree_record(
    dg: &Diagram,
    d: i64,
    c_basis: &[LaurentMonomial],
    a_basis: &[LaurentMonomial],
    b_basis: &[LaurentMonomial],
) -> DegreeRecord {
    let (na, nb) = (a_basis.len(), b_basis.len());
    let inside: HashMap<(bool, &LaurentMonomial), usize> = a_basis
        .iter()
        .enumerate()
        .map(|(i, m)| ((false, m), i))
        .chain(b_basis.iter().enumerate().map(|(j, m)| ((true, m), na + j)))
        .collect();

    // Fiber {(a, b) : l(a) = r(b)} as the left kernel of [l(a_i); −r(b_j)].
    let mut d_cols = Columns::new();
    let mut d_rows: Vec<SparseVec> = Vec::with_capacity(na + nb);
    for m in a_basis {
        let x = image(&dg.l, &dg.a, m);
        d_rows.push(
            x.terms()
                .iter()
                .map(|(k, c)| (d_cols.index(k.clone()), c.clone()))
                .collect(),
        );
    }
    for m in b_basis {
        let x = image(&dg.r, &dg.b, m);
        d_rows.push(
            x.terms()
                .iter()
                .map(|(k, c)| (d_cols.index(k.clone()), -c.clone()))
                .collect(),
        );
    }
    let width = d_cols.0.len();
    let mut ech = Echelon::new();
    for (i, mut row) in d_rows.into_iter().enumerate() {
        row.push((width + i, GaussianRational::one()));
        ech.insert(&sorted(row));
    }
    let fiber = Subspace::span(na + nb, &rows_beyond(ech, width))
        .expect("fiber vectors fit the ambient space");

    // Image of C; coordinates outside A_n ⊕ B_n come first so that reduced
    // rows with an inside pivot span the part of the image inside it.
    let mut outside = Columns::new();
    let mut raw_rows: Vec<Vec<(Result<usize, usize>, GaussianRational)>> =
        Vec::with_capacity(c_basis.len());
    for m in c_basis {
        let images = [
            (false, image(&dg.f, &dg.c, m)),
            (true, image(&dg.g, &dg.c, m)),
        ];
        let mut row = Vec::new();
        for (side, x) in &images {
            for (k, c) in x.terms() {
                let col = match inside.get(&(*side, k)) {
                    Some(&i) => Ok(i),
                    None => Err(outside.index((*side, k.clone()))),
                };
                row.push((col, c.clone()));
            }
        }
        raw_rows.push(row);
    }
    let offset = outside.0.len();
    let mut ech = Echelon::new();
    for row in raw_rows {
        let v = row
            .into_iter()
            .map(|(col, c)| (col.map_or_else(|o| o, |i| offset + i), c))
            .collect();
        ech.insert(&sorted(v));
    }
    let injective = ech.rank() == c_basis.len();
    let inner = Subspace::span(na + nb, &rows_beyond(ech, offset))
        .expect("image vectors fit the ambient space");
    let image_dim = inner.intersect(&fiber).expect("same ambient space").dim();
    let fiber_dim = fiber.dim();
    DegreeRecord {
        degree: d,
        c_dim: c_basis.len(),
        a_dim: na,
        b_dim: nb,
        fiber_dim,
        image_dim,
        injective,
        pass: injective && image_dim == fiber_dim,
    }
}

/// Compares `C_n` with the fiber product of `A_n` and `B_n` over `D` in each
/// degree `|d| ≤ window` (default `n`).
pub fn pullback_at_level(
    dg: &Diagram,
    n: usize,
    window: Option<usize>,
) -> Result<PullbackLevel, HomError> {
    dg.require_graded()?;
    let commutes = square_commutes(dg)?;
    let w = window.map_or(n, |w| w.min(n)) as i64;
    let (cb, ab, bb) = (
        by_degree(&dg.c, n),
        by_degree(&dg.a, n),
        by_degree(&dg.b, n),
    );
    let empty = Vec::new();
    let degrees: Vec<DegreeRecord> = (-w..=w)
        .map(|d| {
            let get = |m: &BTreeMap<i64, Vec<LaurentMonomial>>| m.get(&d).unwrap_or(&empty).clone();
            degree_record(dg, d, &get(&cb), &get(&ab), &get(&bb))
        })
        .collect();
    let fiber_dim = degrees.iter().map(|r| r.fiber_dim).sum();
    let image_dim = degrees.iter().map(|r| r.image_dim).sum();
    let injective = degrees.iter().all(|r| r.injective);
    let pass = commutes && degrees.iter().all(|r| r.pass);
    Ok(PullbackLevel {
        n,
        commutes,
        fiber_dim,
        image_dim,
        injective,
        pass,
        degrees,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Verified,
    Failed,
    Cited,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis {
    pub id: &'static str,
    pub statement: &'static str,
    pub status: HypothesisStatus,
    pub detail: String,
    pub evidence: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refused { failed: Vec<String>, reason: String },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }

    /// `certified` or `refused: H3` style summary.
    pub fn summary(&self) -> String {
        match self {
            Verdict::Certified => "certified".into(),
            Verdict::Refused { failed, .. } => format!("refused: {}", failed.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PullbackCertificate {
    pub algebras: BTreeMap<&'static str, String>,
    pub levels: usize,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Verdict,
    pub scope: String,
}

pub const SURJECTIVITY_REFUSAL: &str = "surjectivity witness missing or failed";

fn scope_note(levels: usize) -> String {
    format!(
        "H2 holds at levels <= {levels} only: finite evidence, not a proof of the unbounded algebraic pullback. \
         H5 is cited, not computed. Given H1-H5, the completion theorem makes the C*-completed square a pullback of S^1-C*-algebras."
    )
}

fn check_witnesses(dg: &Diagram) -> (HypothesisStatus, String, serde_json::Value) {
    let Some(wit) = &dg.witnesses else {
        return (
            HypothesisStatus::Failed,
            SURJECTIVITY_REFUSAL.into(),
            json!({"missing": "witnesses"}),
        );
    };
    let mut checked = BTreeMap::new();
    let mut bad = Vec::new();
    for gen in dg.d.generators() {
        let target = dg.d.generator(&gen).expect("own generator");
        match wit.get(&gen) {
            None => bad.push(format!("{gen}: no witness")),
            Some(x) => {
                let hit = dg.r.apply(x).map(|y| y == target).unwrap_or(false);
                if !hit {
                    bad.push(format!("{gen}: r({x}) is not {gen}"));
                }
                checked.insert(gen.clone(), x.to_string());
            }
        }
    }
    for k in wit.keys() {
        if dg.d.generator(k).is_none() {
            bad.push(format!("{k}: not a generator of {}", dg.d.describe()));
        }
    }
    if bad.is_empty() {
        (
            HypothesisStatus::Verified,
            format!("r hits all {} generators of D", checked.len()),
            json!(checked),
        )
    } else {
        (
            HypothesisStatus::Failed,
            SURJECTIVITY_REFUSAL.into(),
            json!({"problems": bad}),
        )
    }
}

fn check_af(
    dg: &Diagram,
    action: Action,
    levels: usize,
) -> (HypothesisStatus, String, serde_json::Value) {
    let c = &dg.c;
    if c.is_zero() {
        return (
            HypothesisStatus::Verified,
            "C is the zero algebra".into(),
            json!(null),
        );
    }
    match (action, c.is_laurent()) {
        (Action::Gauge, false) => {
            let b = bratteli_diagram(c.graph(), levels.max(1));
            let sizes: Vec<Vec<u128>> = b.levels.iter().map(|l| l.sizes()).collect();
            if b.is_consistent() {
                (
                    HypothesisStatus::Verified,
                    "Bratteli diagram of the gauge-invariant core".into(),
                    json!({"sizes": sizes}),
                )
            } else {
                (
                    HypothesisStatus::Failed,
                    "inconsistent Bratteli data".into(),
                    json!({"sizes": sizes}),
                )
            }
        }
        // The invariant part of L(E)[t, t⁻¹] under the t-grading is L(E) itself,
        // and fixed points of the trivial group are everything: AF iff finite-dimensional.
        (Action::Gauge, true) | (Action::Trivial, false) => match acyclic_structure(c.graph()) {
            Ok(s) => (
                HypothesisStatus::Verified,
                format!("L(E) is a sum of matrix algebras, dim {}", s.total_dim),
                json!(s),
            ),
            Err(e) => (HypothesisStatus::Failed, e.to_string(), json!(null)),
        },
        (Action::Trivial, true) => (
            HypothesisStatus::Failed,
            "contains the Laurent polynomials, which are not AF".into(),
            json!(null),
        ),
    }
}

/// Checks the hypotheses of the completion theorem for `dg`.
pub fn certify_cstar_pullback(
    dg: &Diagram,
    levels: usize,
    action: Action,
) -> Result<PullbackCertificate, HomError> {
    dg.require_verified()?;
    let mut hyps = Vec::new();

    let commutes = square_commutes(dg)?;
    hyps.push(Hypothesis {
        id: "H1",
        statement: "the square commutes",
        status: if commutes {
            HypothesisStatus::Verified
        } else {
            HypothesisStatus::Failed
        },
        detail: if commutes {
            "l.f = r.g on all generators of C".into()
        } else {
            "l.f != r.g".into()
        },
        evidence: json!(null),
    });

    let (status, detail, evidence) = match dg.require_graded() {
        Err(e) => (HypothesisStatus::Failed, e.to_string(), json!(null)),
        Ok(()) => {
            let mut records = Vec::new();
            let mut first_failure = None;
            for n in 0..=levels {
                let lv = pullback_at_level(dg, n, None)?;
                if !lv.pass && first_failure.is_none() {
                    first_failure = Some(n);
                }
                records.push(
                    json!({"n": n, "fiber_dim": lv.fiber_dim, "image_dim": lv.image_dim,
                                    "injective": lv.injective, "pass": lv.pass}),
                );
            }
            match first_failure {
                None => (
                    HypothesisStatus::Verified,
                    format!("graded pullback at levels <= {levels}"),
                    json!(records),
                ),
                Some(n) => (
                    HypothesisStatus::Failed,
                    format!("not a pullback at level {n}"),
                    json!(records),
                ),
            }
        }
    };
    hyps.push(Hypothesis {
        id: "H2",
        statement: "the square is a pullback of graded *-algebras",
        status,
        detail,
        evidence,
    });

    let (status, detail, evidence) = check_witnesses(dg);
    hyps.push(Hypothesis {
        id: "H3",
        statement: "r is onto",
        status,
        detail,
        evidence,
    });

    let (status, detail, evidence) = check_af(dg, action, levels);
    hyps.push(Hypothesis {
        id: "H4",
        statement: "the invariant subalgebra of C is AF",
        status,
        detail,
        evidence,
    });

    hyps.push(Hypothesis {
        id: "H5",
        statement: "each algebra embeds in its C*-completion",
        status: HypothesisStatus::Cited,
        detail: "graph algebras embed in their C*-envelopes; cited, not computed".into(),
        evidence: json!(null),
    });

    let failed: Vec<&Hypothesis> = hyps
        .iter()
        .filter(|h| h.status == HypothesisStatus::Failed)
        .collect();
    let verdict = if failed.is_empty() {
        Verdict::Certified
    } else {
        Verdict::Refused {
            failed: failed.iter().map(|h| h.id.to_string()).collect(),
            reason: failed
                .iter()
                .map(|h| format!("{}: {}", h.id, h.detail))
                .collect::<Vec<_>>()
                .join("; "),
        }
    };
    let algebras = [("A", &dg.a), ("B", &dg.b), ("C", &dg.c), ("D", &dg.d)]
        .into_iter()
        .map(|(k, a)| (k, a.describe()))
        .collect();
    Ok(PullbackCertificate {
        algebras,
        levels,
        hypotheses: hyps,
        verdict,
        scope: scope_note(levels),
    })
}

/// `C = A = L(E)`, `B = D = L(E)[t, t⁻¹]`, `f = id`, `g = l = δ`, `r = id`,
/// with identity witnesses.
pub fn coaction_diagram(graph: &std::sync::Arc<crate::graph::Graph>) -> Result<Diagram, HomError> {
    let a = AlgebraRef::plain(graph.clone());
    let b = AlgebraRef::laurent(graph.clone())?;
    let delta = GenHom::coaction(graph)?;
    let witnesses = b.generators().into_iter().map(|id| {
        let x = b.generator(&id).expect("own generator");
        (id, x)
    });
    Diagram::new(
        GenHom::identity(&a),
        delta.clone(),
        delta,
        GenHom::identity(&b),
        Some(witnesses.collect()),
    )
}

/// `C = L(E₁ ⊔ E₂)` over `A = L(E₁)`, `B = L(E₂)` and `D = 0`.
pub fn disjoint_union_diagram(
    e1: &std::sync::Arc<crate::graph::Graph>,
    e2: &std::sync::Arc<crate::graph::Graph>,
) -> Result<Diagram, HomError> {
    use std::sync::Arc;
    let u = Arc::new(crate::graph::Graph::disjoint_union(e1, e2));
    let prefixed = |prefix: &str, g: &crate::graph::Graph| -> Vec<String> {
        g.vertex_ids()
            .map(|v| format!("{prefix}{}", g.vertex_name(v)))
            .collect()
    };
    let (drop_a, drop_b) = (prefixed("a_", e1), prefixed("b_", e2));
    let f = GenHom::quotient(&u, &u.vertex_set(&drop_b)?)?;
    let g = GenHom::quotient(&u, &u.vertex_set(&drop_a)?)?;
    let zero = AlgebraRef::zero();
    let l = GenHom::zero_map("l", f.codomain(), &zero);
    let r = GenHom::zero_map("r", g.codomain(), &zero);
    Diagram::new(f, g, l, r, Some(BTreeMap::new()))
}
