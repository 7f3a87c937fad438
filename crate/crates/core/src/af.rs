//! The degree-zero core `L(E)₀` as an increasing union of multi-matrix algebras.
//!
//! Stage `n` is spanned by `αβ*` with `|α| = |β| ≤ n`. It splits into one
//! matrix block per vertex `v` (paths of length `n` ending at `v`) plus one
//! block per sink `w` and earlier level `k < n` (paths of length `k` ending at
//! `w`, which can no longer be extended). Blocks are labelled `v@n`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::basis::basis_at_weight;
use crate::graph::{Graph, VertexId};
use crate::linalg::Echelon;
use crate::lpa::Monomial;
use crate::rewrite::{normalize_monomials, RewriteOrder};
use crate::scalar::GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AfError {
    #[error("graph {0} has a cycle; its Leavitt path algebra is not finite-dimensional")]
    Cyclic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub label: String,
    pub size: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAlgebra {
    pub n: usize,
    pub blocks: Vec<Block>,
}

impl LevelAlgebra {
    pub fn dim(&self) -> u128 {
        self.blocks.iter().map(|b| b.size * b.size).sum()
    }

    pub fn sizes(&self) -> Vec<u128> {
        self.blocks.iter().map(|b| b.size).collect()
    }
}

/// Block keys at one level: `(vertex, level tag)`.
fn block_keys(g: &Graph, counts: &[Vec<u128>], n: usize) -> Vec<(VertexId, usize)> {
    let mut keys: Vec<(VertexId, usize)> = g
        .vertex_ids()
        .filter(|&v| counts[n][v as usize] > 0)
        .map(|v| (v, n))
        .collect();
    for w in g.sinks() {
        for k in 0..n {
            if counts[k][w as usize] > 0 {
                keys.push((w, k));
            }
        }
    }
    keys.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    keys
}

fn label(g: &Graph, (v, k): (VertexId, usize)) -> String {
    format!("{}@{}", g.vertex_name(v), k)
}

pub fn level_algebra(g: &Graph, n: usize) -> LevelAlgebra {
    let counts = g.path_counts(n);
    level_from_counts(g, &counts, n)
}

fn level_from_counts(g: &Graph, counts: &[Vec<u128>], n: usize) -> LevelAlgebra {
    LevelAlgebra {
        n,
        blocks: block_keys(g, counts, n)
            .into_iter()
            .map(|key| Block {
                label: label(g, key),
                size: counts[key.1][key.0 as usize],
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BratteliData {
    pub levels: Vec<LevelAlgebra>,
    /// `multiplicities[n][i][j]`: multiplicity of block `j` of level `n` in
    /// block `i` of level `n + 1`, so `sizes(n+1) = M · sizes(n)`.
    pub multiplicities: Vec<Vec<Vec<u128>>>,
}

impl BratteliData {
    /// Checks `sizes(n+1) = M_n · sizes(n)` for every consecutive pair.
    pub fn is_consistent(&self) -> bool {
        self.levels
            .windows(2)
            .zip(&self.multiplicities)
            .all(|(pair, m)| {
                let (lo, hi) = (pair[0].sizes(), pair[1].sizes());
                m.len() == hi.len()
                    && m.iter().zip(&hi).all(|(row, &target)| {
                        row.len() == lo.len()
                            && row.iter().zip(&lo).map(|(a, b)| a * b).sum::<u128>() == target
                    })
            })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

pub fn bratteli_diagram(g: &Graph, levels: usize) -> BratteliData {
    let counts = g.path_counts(levels);
    let mut out = BratteliData {
        levels: Vec::new(),
        multiplicities: Vec::new(),
    };
    for n in 0..=levels {
        out.levels.push(level_from_counts(g, &counts, n));
        if n == 0 {
            continue;
        }
        let lo = block_keys(g, &counts, n - 1);
        let hi = block_keys(g, &counts, n);
        let matrix = hi
            .iter()
            .map(|&(w, kw)| {
                lo.iter()
                    .map(|&(v, kv)| {
                        if kw == n && kv == n - 1 {
                            // regular expansion along edges v → w
                            g.out_edges(v).iter().filter(|&&e| g.r(e) == w).count() as u128
                        } else if kw < n && (v, kv) == (w, kw) {
                            // sink block passes through unchanged
                            1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        out.multiplicities.push(matrix);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCheck {
    pub formula: u128,
    pub brute: u128,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Compares `Σ size²` at level `n` with the rank of all products `αβ*`,
/// `|α| = |β| ≤ n`, after normalization.
pub fn zero_component_dim_check(g: &Arc<Graph>, n: usize) -> DimCheck {
    let formula = level_algebra(g, n).dim();
    let mut index: std::collections::HashMap<Monomial, usize> = std::collections::HashMap::new();
    let mut ech = Echelon::new();
    for len in 0..=n {
        for alpha in g.enumerate_paths(len, None) {
            for beta in g.enumerate_paths(len, Some(alpha.range(g))) {
                let raw = Monomial::new_unchecked(alpha.clone(), beta);
                let x = normalize_monomials(
                    g,
                    [(GaussianRational::from(1), raw)],
                    RewriteOrder::Leftmost,
                );
                let mut row: Vec<(usize, GaussianRational)> = x
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let next = index.len();
                        (*index.entry(m.clone()).or_insert(next), c.clone())
                    })
                    .collect();
                row.sort_by_key(|(i, _)| *i);
                ech.insert(&row);
            }
        }
    }
    let brute = ech.rank() as u128;
    DimCheck {
        formula,
        brute,
        matches: formula == brute,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSummand {
    pub sink: String,
    pub size: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicStructure {
    pub summands: Vec<MatrixSummand>,
    pub total_dim: u128,
    /// Size of the canonical basis at weight `2 · longest path`.
    pub basis_count: u128,
    pub verified: bool,
}

/// `L(E) ≅ ⊕_{sinks w} M_{p(w)}` for an acyclic graph, `p(w)` the number of
/// paths ending at `w`.
pub fn acyclic_structure(g: &Graph) -> Result<AcyclicStructure, AfError> {
    let longest = g
        .longest_path()
        .ok_or_else(|| AfError::Cyclic(g.name().into()))?;
    let counts = g.path_counts(longest);
    let summands: Vec<MatrixSummand> = g
        .sinks()
        .into_iter()
        .map(|w| MatrixSummand {
            sink: g.vertex_name(w).to_string(),
            size: counts.iter().map(|c| c[w as usize]).sum(),
        })
        .collect();
    let total_dim = summands.iter().map(|s| s.size * s.size).sum();
    let basis_count = basis_at_weight(g, 2 * longest).len() as u128;
    Ok(AcyclicStructure {
        summands,
        total_dim,
        basis_count,
        verified: total_dim == basis_count,
    })
}
