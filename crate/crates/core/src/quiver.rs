//! Bound quiver algebras Λ = kQ/I over GF(p).
//!
//! Composition convention, fixed once for the whole crate: the path
//! `[a, b]` means "a then b" (so as an operator it is b∘a), and a
//! representation assigns to an arrow x: i→j a matrix M_x: M_i → M_j.
//! These representations are declared to be the objects of mod-Λ.
//!
//! The path basis of kQ/I is computed by bounded linear algebra on the
//! span of paths of length ≤ L, where L is the supplied nilpotency bound
//! with rad^L ⊆ I. Admissibility is checked by verifying that every
//! length-L path reduces to zero in the computed quotient.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rref, Mat, PrimeField};

/// Cap on the number of enumerated paths; bound quiver input beyond this
/// is outside desk scale.
const PATH_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &arrows {
            if s >= vertex_count || t >= vertex_count {
                return Err(Error::InvalidInput(format!(
                    "arrow {s}->{t} out of range for {vertex_count} vertices"
                )));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows: arrows.into_iter().map(|(source, target)| Arrow { source, target }).collect(),
        })
    }

    /// Linear A_m quiver 0 → 1 → ⋯ → m−1; arrow i goes i → i+1.
    pub fn linear(m: usize) -> Self {
        Quiver {
            vertex_count: m,
            arrows: (0..m.saturating_sub(1)).map(|i| Arrow { source: i, target: i + 1 }).collect(),
        }
    }

    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// A path in application order (innermost first): `arrows[0]` is applied
/// first. An empty arrow list is the trivial path at `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.source, |&a| q.arrows[a].target)
    }

    /// `self` then `other`; requires target(self) = source(other).
    pub fn compose(&self, other: &Path, q: &Quiver) -> Path {
        debug_assert_eq!(self.target(q), other.source);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Path { source: self.source, arrows }
    }

    pub fn reversed(&self, q: &Quiver) -> Path {
        let source = self.target(q);
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source, arrows }
    }
}

/// A linear combination of parallel paths of length ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub terms: Vec<(u64, Path)>,
}

impl Relation {
    pub fn monomial(path: Path) -> Self {
        Relation { terms: vec![(1, path)] }
    }
}

/// A finite-dimensional bound quiver algebra with an explicit path basis.
#[derive(Debug)]
pub struct Algebra {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub field: PrimeField,
    pub nilpotency_bound: usize,
    /// Residue paths forming a basis of kQ/I, sorted by (length, source, arrows).
    pub path_basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    /// For every path of length ≤ L: its coordinates over `path_basis`.
    reduction: HashMap<Path, Vec<u64>>,
    op: OnceLock<Arc<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver
            && self.relations == other.relations
            && self.field == other.field
            && self.nilpotency_bound == other.nilpotency_bound
    }
}

fn enumerate_paths(q: &Quiver, max_len: usize) -> Result<Vec<Path>> {
    let mut all: Vec<Path> = (0..q.vertex_count).map(Path::trivial).collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let end = p.target(q);
            for (aid, a) in q.arrows.iter().enumerate() {
                if a.source == end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(aid);
                    next.push(Path { source: p.source, arrows });
                }
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > PATH_CAP {
            return Err(Error::InvalidInput(format!(
                "more than {PATH_CAP} paths up to length {max_len}; not desk scale"
            )));
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(all)
}

pub fn build_algebra(
    quiver: Quiver,
    relations: Vec<Relation>,
    nilpotency_bound: usize,
    field: PrimeField,
) -> Result<Arc<Algebra>> {
    let l = nilpotency_bound;
    if l < 2 {
        return Err(Error::InvalidInput("nilpotency bound L must be ≥ 2".into()));
    }
    for r in &relations {
        if r.terms.is_empty() {
            return Err(Error::NotAdmissible("relation with no terms".into()));
        }
        let (_, first) = &r.terms[0];
        for (c, t) in &r.terms {
            if t.len() < 2 {
                return Err(Error::NotAdmissible(format!(
                    "relation term {:?} has length < 2",
                    t
                )));
            }
            if *c % field.modulus() == 0 {
                return Err(Error::NotAdmissible("relation term with zero coefficient".into()));
            }
            if t.source != first.source || t.target(&quiver) != first.target(&quiver) {
                return Err(Error::NotAdmissible("relation terms are not parallel".into()));
            }
            for &a in &t.arrows {
                if a >= quiver.arrows.len() {
                    return Err(Error::InvalidInput(format!("arrow id {a} out of range")));
                }
            }
        }
    }

    // All paths of length ≤ L, sorted by (length, source, arrows).
    let mut paths = enumerate_paths(&quiver, l)?;
    paths.sort_by_key(|p| (p.len(), p.source, p.arrows.clone()));
    let index: HashMap<Path, usize> =
        paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    // Column order for elimination: longest paths first, so the surviving
    // (non-pivot) basis keeps the shortest representatives.
    let mut col_order: Vec<usize> = (0..paths.len()).collect();
    col_order.sort_by_key(|&i| (std::cmp::Reverse(paths[i].len()), paths[i].source, paths[i].arrows.clone()));
    let col_of_path: HashMap<usize, usize> =
        col_order.iter().enumerate().map(|(c, &i)| (i, c)).collect();

    // Ideal slice: spans of u·r·v truncated to length ≤ L.
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for r in &relations {
        let min_len = r.terms.iter().map(|(_, t)| t.len()).min().unwrap();
        let src = r.terms[0].1.source;
        let tgt = r.terms[0].1.target(&quiver);
        for pre in &paths {
            if pre.target(&quiver) != src || pre.len() + min_len > l {
                continue;
            }
            for post in &paths {
                if post.source != tgt || pre.len() + min_len + post.len() > l {
                    continue;
                }
                let mut row = vec![0u64; paths.len()];
                let mut nonzero = false;
                for (c, t) in &r.terms {
                    let full = pre.compose(t, &quiver).compose(post, &quiver);
                    if full.len() <= l {
                        let i = index[&full];
                        row[col_of_path[&i]] = field.add(row[col_of_path[&i]], *c % field.modulus());
                        nonzero = true;
                    }
                }
                if nonzero && row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }

    let w = Mat::from_rows(&rows, field);
    let red = if rows.is_empty() {
        None
    } else {
        Some(rref(&w))
    };
    let pivots: Vec<usize> = red.as_ref().map_or(Vec::new(), |r| r.pivots.clone());
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();

    // Basis: non-pivot paths. They must all have length < L; a surviving
    // length-L path means rad^L ⊄ I.
    let mut basis: Vec<Path> = Vec::new();
    for (c, &pi) in col_order.iter().enumerate() {
        if !pivot_set.contains(&c) {
            if paths[pi].len() >= l {
                return Err(Error::NotAdmissible(format!(
                    "length-{l} path {:?} does not reduce to 0",
                    paths[pi]
                )));
            }
            basis.push(paths[pi].clone());
        }
    }
    basis.sort_by_key(|p| (p.len(), p.source, p.arrows.clone()));
    let basis_index: HashMap<Path, usize> =
        basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    // Reduction table: every path of length ≤ L in basis coordinates.
    let mut reduction: HashMap<Path, Vec<u64>> = HashMap::new();
    let mut pivot_row_of_col: HashMap<usize, usize> = HashMap::new();
    for (ri, &pc) in pivots.iter().enumerate() {
        pivot_row_of_col.insert(pc, ri);
    }
    for (c, &pi) in col_order.iter().enumerate() {
        let path = &paths[pi];
        let mut v = vec![0u64; basis.len()];
        if let Some(&ri) = pivot_row_of_col.get(&c) {
            let rmat = &red.as_ref().unwrap().mat;
            for (c2, &pj) in col_order.iter().enumerate() {
                if c2 == c || pivot_set.contains(&c2) {
                    continue;
                }
                let coeff = rmat.at(ri, c2);
                if coeff != 0 {
                    // the reduced row says path_c + Σ coeff·path_c2 = 0 in kQ/I
                    if let Some(&bi) = basis_index.get(&paths[pj]) {
                        v[bi] = field.neg(coeff);
                    }
                }
            }
        } else if let Some(&bi) = basis_index.get(path) {
            v[bi] = 1;
        }
        reduction.insert(path.clone(), v);
    }

    Ok(Arc::new(Algebra {
        quiver,
        relations,
        field,
        nilpotency_bound: l,
        path_basis: basis,
        basis_index,
        reduction,
        op: OnceLock::new(),
    }))
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.path_basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    /// Coordinates of a path's residue over the path basis; paths longer
    /// than L are zero.
    pub fn reduce_path(&self, p: &Path) -> Vec<u64> {
        if p.len() > self.nilpotency_bound {
            // split at a length-L prefix; the prefix reduces, the rest multiplies
            let prefix = Path { source: p.source, arrows: p.arrows[..self.nilpotency_bound].to_vec() };
            let rest = Path {
                source: prefix.target(&self.quiver),
                arrows: p.arrows[self.nilpotency_bound..].to_vec(),
            };
            let pre = self.reduce_path(&prefix);
            let mut out = vec![0u64; self.dim()];
            for (bi, &c) in pre.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let composed = self.path_basis[bi].compose(&rest, &self.quiver);
                for (bj, &d) in self.reduce_path(&composed).iter().enumerate() {
                    out[bj] = self.field.add(out[bj], self.field.mul(c, d));
                }
            }
            return out;
        }
        self.reduction
            .get(p)
            .cloned()
            .unwrap_or_else(|| vec![0u64; self.dim()])
    }

    pub fn basis_index_of(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    /// Product of two basis elements, in basis coordinates.
    pub fn mult_basis(&self, i: usize, j: usize) -> Vec<u64> {
        let a = &self.path_basis[i];
        let b = &self.path_basis[j];
        if a.target(&self.quiver) != b.source {
            return vec![0u64; self.dim()];
        }
        self.reduce_path(&a.compose(b, &self.quiver))
    }

    /// The opposite algebra, built once and cached.
    pub fn op(self: &Arc<Self>) -> Arc<Algebra> {
        self.op
            .get_or_init(|| {
                let q = self.quiver.reversed();
                let rels = self
                    .relations
                    .iter()
                    .map(|r| Relation {
                        terms: r
                            .terms
                            .iter()
                            .map(|(c, t)| (*c, t.reversed(&self.quiver)))
                            .collect(),
                    })
                    .collect();
                build_algebra(q, rels, self.nilpotency_bound, self.field)
                    .expect("opposite of a valid algebra is valid")
            })
            .clone()
    }
}
