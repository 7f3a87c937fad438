//! Canonical bases of the weight truncations.

use crate::graph::{Graph, Path};
use crate::lpa::{LaurentMonomial, Monomial};

/// Paths of length `0..=max_len`, grouped by range: `out[v][len]`.
fn paths_by_range(g: &Graph, max_len: usize) -> Vec<Vec<Vec<Path>>> {
    let mut out = vec![vec![Vec::new(); max_len + 1]; g.vertex_count()];
    for len in 0..=max_len {
        for p in g.enumerate_paths(len, None) {
            out[p.range(g) as usize][len].push(p);
        }
    }
    out
}

/// All canonical monomials `αβ*` with `|α| + |β| ≤ n`, in monomial order.
pub fn basis_at_weight(g: &Graph, n: usize) -> Vec<Monomial> {
    let by_range = paths_by_range(g, n);
    let mut out = Vec::new();
    for per_len in &by_range {
        for a in 0..=n {
            for b in 0..=(n - a) {
                for alpha in &per_len[a] {
                    for beta in &per_len[b] {
                        let m = Monomial::new_unchecked(alpha.clone(), beta.clone());
                        if m.is_canonical(g) {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Canonical monomials of weight `≤ n` and degree exactly `d`.
pub fn basis_at_weight_degree(g: &Graph, n: usize, d: i64) -> Vec<Monomial> {
    let by_range = paths_by_range(g, n);
    let mut out = Vec::new();
    for per_len in &by_range {
        for a in 0..=n {
            let b = a as i64 - d;
            if b < 0 || a + b as usize > n {
                continue;
            }
            for alpha in &per_len[a] {
                for beta in &per_len[b as usize] {
                    let m = Monomial::new_unchecked(alpha.clone(), beta.clone());
                    if m.is_canonical(g) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Basis of `L(E) ⊗ k[t, t⁻¹]` truncated at weight `|α| + |β| + |k| ≤ n`.
pub fn laurent_basis_at_weight(g: &Graph, n: usize) -> Vec<LaurentMonomial> {
    let inner = basis_at_weight(g, n);
    let mut out = Vec::new();
    for m in &inner {
        let room = (n - m.weight()) as i64;
        for k in -room..=room {
            out.push(LaurentMonomial::new(m.clone(), k));
        }
    }
    out.sort();
    out
}

/// Laurent basis elements of weight `≤ n` and t-degree `d`.
pub fn laurent_basis_at_weight_degree(g: &Graph, n: usize, d: i64) -> Vec<LaurentMonomial> {
    let room = n as i64 - d.abs();
    if room < 0 {
        return Vec::new();
    }
    let mut out: Vec<LaurentMonomial> = basis_at_weight(g, room as usize)
        .into_iter()
        .map(|m| LaurentMonomial::new(m, d))
        .collect();
    out.sort();
    out
}
