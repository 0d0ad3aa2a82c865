//! Finite-dimensional representations of a bound quiver algebra and the
//! ambient abelian-category operations: Hom spaces, kernels, images,
//! cokernels, direct sums, pushouts, pullbacks and the exact duality
//! D: mod-Λ → mod-Λ^op.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{
    coords_in_basis, image_basis, inverse, kernel_basis, rank, solve, Mat, PrimeField,
};
use crate::quiver::{Algebra, Path};

/// A representation: one space per vertex, one matrix per arrow.
/// The matrix of arrow a: i→j has shape dim_j × dim_i (columns act).
#[derive(Debug, Clone)]
pub struct Module {
    pub algebra: Arc<Algebra>,
    pub dim_vector: Vec<usize>,
    pub arrow_mats: Vec<Mat>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.dim_vector == other.dim_vector && self.arrow_mats == other.arrow_mats
    }
}

impl Module {
    pub fn new(algebra: Arc<Algebra>, dim_vector: Vec<usize>, arrow_mats: Vec<Mat>) -> Result<Self> {
        let m = Module { algebra, dim_vector, arrow_mats };
        m.validate()?;
        Ok(m)
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let v = algebra.vertex_count();
        let f = algebra.field;
        let mats = algebra
            .quiver
            .arrows
            .iter()
            .map(|_| Mat::zero(0, 0, f))
            .collect();
        Module { algebra, dim_vector: vec![0; v], arrow_mats: mats }
    }

    pub fn simple(algebra: Arc<Algebra>, v: usize) -> Self {
        let f = algebra.field;
        let mut dim = vec![0; algebra.vertex_count()];
        dim[v] = 1;
        let mats = algebra
            .quiver
            .arrows
            .iter()
            .map(|a| {
                Mat::zero(
                    if a.target == v { 1 } else { 0 },
                    if a.source == v { 1 } else { 0 },
                    f,
                )
            })
            .collect();
        Module { algebra, dim_vector: dim, arrow_mats: mats }
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field
    }

    pub fn total_dim(&self) -> usize {
        self.dim_vector.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn validate(&self) -> Result<()> {
        let q = &self.algebra.quiver;
        if self.dim_vector.len() != q.vertex_count {
            return Err(Error::InvalidInput("dim_vector length != vertex count".into()));
        }
        if self.arrow_mats.len() != q.arrows.len() {
            return Err(Error::InvalidInput("arrow matrix count != arrow count".into()));
        }
        for (aid, a) in q.arrows.iter().enumerate() {
            let m = &self.arrow_mats[aid];
            if m.rows != self.dim_vector[a.target] || m.cols != self.dim_vector[a.source] {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {aid}: matrix is {}x{}, expected {}x{}",
                    m.rows, m.cols, self.dim_vector[a.target], self.dim_vector[a.source]
                )));
            }
        }
        for (ri, r) in self.algebra.relations.iter().enumerate() {
            let src = r.terms[0].1.source;
            let tgt = r.terms[0].1.target(q);
            let mut acc = Mat::zero(self.dim_vector[tgt], self.dim_vector[src], self.field());
            for (c, t) in &r.terms {
                acc = acc.add(&self.eval_path(t).scale(*c));
            }
            if !acc.is_zero() {
                return Err(Error::RelationViolated(format!("relation {ri} acts nonzero")));
            }
        }
        Ok(())
    }

    /// Action of a path as a matrix dim_{target} × dim_{source}.
    pub fn eval_path(&self, p: &Path) -> Mat {
        let q = &self.algebra.quiver;
        let mut m = Mat::identity(self.dim_vector[p.source], self.field());
        for &a in &p.arrows {
            m = self.arrow_mats[a].mul(&m);
        }
        debug_assert_eq!(m.rows, self.dim_vector[p.target(q)]);
        m
    }

    /// Radical basis per vertex: columns spanning Σ im(arrow maps into v).
    pub fn radical_basis(&self) -> Vec<Mat> {
        let q = &self.algebra.quiver;
        let f = self.field();
        (0..q.vertex_count)
            .map(|v| {
                let mut stacked = Mat::zero(self.dim_vector[v], 0, f);
                for (aid, a) in q.arrows.iter().enumerate() {
                    if a.target == v {
                        stacked = stacked.hstack(&self.arrow_mats[aid]);
                    }
                }
                image_basis(&stacked)
            })
            .collect()
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }
}

/// A morphism of representations: one matrix per vertex, commuting with
/// all arrow actions.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub vertex_mats: Vec<Mat>,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, vertex_mats: Vec<Mat>) -> Result<Self> {
        let m = ModuleMap { source, target, vertex_mats };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(m: &Module) -> Self {
        let mats = m
            .dim_vector
            .iter()
            .map(|&d| Mat::identity(d, m.field()))
            .collect();
        ModuleMap { source: m.clone(), target: m.clone(), vertex_mats: mats }
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let f = source.field();
        let mats = source
            .dim_vector
            .iter()
            .zip(&target.dim_vector)
            .map(|(&s, &t)| Mat::zero(t, s, f))
            .collect();
        ModuleMap { source: source.clone(), target: target.clone(), vertex_mats: mats }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.source.same_algebra(&self.target) {
            return Err(Error::InvalidInput("map between modules over different algebras".into()));
        }
        let q = &self.source.algebra.quiver;
        if self.vertex_mats.len() != q.vertex_count {
            return Err(Error::InvalidInput("vertex matrix count != vertex count".into()));
        }
        for v in 0..q.vertex_count {
            let m = &self.vertex_mats[v];
            if m.rows != self.target.dim_vector[v] || m.cols != self.source.dim_vector[v] {
                return Err(Error::DimensionMismatch(format!(
                    "vertex {v}: matrix is {}x{}, expected {}x{}",
                    m.rows, m.cols, self.target.dim_vector[v], self.source.dim_vector[v]
                )));
            }
        }
        for (aid, a) in q.arrows.iter().enumerate() {
            let lhs = self.target.arrow_mats[aid].mul(&self.vertex_mats[a.source]);
            let rhs = self.vertex_mats[a.target].mul(&self.source.arrow_mats[aid]);
            if lhs != rhs {
                return Err(Error::InvalidInput(format!("square at arrow {aid} does not commute")));
            }
        }
        Ok(())
    }

    /// `other ∘ self` — first self, then other.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        debug_assert_eq!(self.target.dim_vector, other.source.dim_vector);
        let mats = self
            .vertex_mats
            .iter()
            .zip(&other.vertex_mats)
            .map(|(f, g)| g.mul(f))
            .collect();
        ModuleMap { source: self.source.clone(), target: other.target.clone(), vertex_mats: mats }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let mats = self
            .vertex_mats
            .iter()
            .zip(&other.vertex_mats)
            .map(|(a, b)| a.add(b))
            .collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), vertex_mats: mats }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        let mats = self
            .vertex_mats
            .iter()
            .zip(&other.vertex_mats)
            .map(|(a, b)| a.sub(b))
            .collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), vertex_mats: mats }
    }

    pub fn scale(&self, c: u64) -> ModuleMap {
        let mats = self.vertex_mats.iter().map(|m| m.scale(c)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), vertex_mats: mats }
    }

    pub fn neg(&self) -> ModuleMap {
        let mats = self.vertex_mats.iter().map(|m| m.neg()).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), vertex_mats: mats }
    }

    pub fn is_zero(&self) -> bool {
        self.vertex_mats.iter().all(Mat::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.vertex_mats.iter().all(|m| rank(m) == m.cols)
    }

    pub fn is_surjective(&self) -> bool {
        self.vertex_mats.iter().all(|m| rank(m) == m.rows)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.vertex_mats
            .iter()
            .all(|m| m.rows == m.cols && rank(m) == m.rows)
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let mut mats = Vec::with_capacity(self.vertex_mats.len());
        for m in &self.vertex_mats {
            mats.push(inverse(m)?);
        }
        Some(ModuleMap { source: self.target.clone(), target: self.source.clone(), vertex_mats: mats })
    }

    /// Flatten all vertex matrices into one coordinate vector (fixed order).
    pub fn flatten(&self) -> Vec<u64> {
        self.vertex_mats.iter().flat_map(|m| m.entries.iter().copied()).collect()
    }
}

/// Basis of Hom(M, N), in a deterministic order: solutions of the
/// commuting-square constraints N_a f_i = f_j M_a.
pub fn hom_basis(m: &Module, n: &Module) -> Vec<ModuleMap> {
    debug_assert!(m.same_algebra(n));
    let q = &m.algebra.quiver;
    let f = m.field();
    // variable layout: vertex blocks, each row-major
    let mut offset = vec![0usize; q.vertex_count + 1];
    for v in 0..q.vertex_count {
        offset[v + 1] = offset[v] + n.dim_vector[v] * m.dim_vector[v];
    }
    let nvars = offset[q.vertex_count];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dim_vector[v] + c;

    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (aid, a) in q.arrows.iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let na = &n.arrow_mats[aid]; // n_j × n_i
        let ma = &m.arrow_mats[aid]; // m_j × m_i
        // (N_a f_i − f_j M_a)[r][c] = 0 for r < n_j, c < m_i
        for r in 0..n.dim_vector[j] {
            for c in 0..m.dim_vector[i] {
                let mut row = vec![0u64; nvars];
                for k in 0..n.dim_vector[i] {
                    let coeff = na.at(r, k);
                    if coeff != 0 {
                        let vi = var(i, k, c);
                        row[vi] = f.add(row[vi], coeff);
                    }
                }
                for k in 0..m.dim_vector[j] {
                    let coeff = ma.at(k, c);
                    if coeff != 0 {
                        let vi = var(j, r, k);
                        row[vi] = f.sub(row[vi], coeff);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let ker = if rows.is_empty() {
        Mat::identity(nvars, f)
    } else {
        kernel_basis(&Mat::from_rows(&rows, f))
    };
    (0..ker.cols)
        .map(|c| {
            let sol = ker.col(c);
            let mats = (0..q.vertex_count)
                .map(|v| {
                    let mut mm = Mat::zero(n.dim_vector[v], m.dim_vector[v], f);
                    for r in 0..n.dim_vector[v] {
                        for cc in 0..m.dim_vector[v] {
                            mm.set(r, cc, sol[var(v, r, cc)]);
                        }
                    }
                    mm
                })
                .collect();
            ModuleMap { source: m.clone(), target: n.clone(), vertex_mats: mats }
        })
        .collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> usize {
    hom_basis(m, n).len()
}

/// Kernel with its inclusion.
pub fn kernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let q = &f.source.algebra.quiver;
    let fld = f.source.field();
    let bases: Vec<Mat> = f.vertex_mats.iter().map(kernel_basis).collect();
    let dim: Vec<usize> = bases.iter().map(|b| b.cols).collect();
    let mats = q
        .arrows
        .iter()
        .enumerate()
        .map(|(aid, a)| {
            let img = f.source.arrow_mats[aid].mul(&bases[a.source]);
            if dim[a.target] == 0 {
                Mat::zero(0, dim[a.source], fld)
            } else {
                coords_in_basis(&bases[a.target], &img)
                    .expect("arrow maps kernel into kernel")
            }
        })
        .collect();
    let k = Module { algebra: f.source.algebra.clone(), dim_vector: dim, arrow_mats: mats };
    let incl = ModuleMap { source: k.clone(), target: f.source.clone(), vertex_mats: bases };
    (k, incl)
}

/// Image with inclusion into the target and the epi from the source,
/// so that f = incl ∘ epi.
pub fn image(f: &ModuleMap) -> (Module, ModuleMap, ModuleMap) {
    let q = &f.source.algebra.quiver;
    let fld = f.source.field();
    let bases: Vec<Mat> = f.vertex_mats.iter().map(image_basis).collect();
    let dim: Vec<usize> = bases.iter().map(|b| b.cols).collect();
    let mats = q
        .arrows
        .iter()
        .enumerate()
        .map(|(aid, a)| {
            let img = f.target.arrow_mats[aid].mul(&bases[a.source]);
            if dim[a.target] == 0 {
                Mat::zero(0, dim[a.source], fld)
            } else {
                coords_in_basis(&bases[a.target], &img)
                    .expect("arrow maps image into image")
            }
        })
        .collect();
    let im = Module { algebra: f.source.algebra.clone(), dim_vector: dim, arrow_mats: mats };
    let incl = ModuleMap { source: im.clone(), target: f.target.clone(), vertex_mats: bases.clone() };
    let epi_mats = bases
        .iter()
        .zip(&f.vertex_mats)
        .map(|(b, fm)| coords_in_basis(b, fm).expect("f lands in its image"))
        .collect();
    let epi = ModuleMap { source: f.source.clone(), target: im.clone(), vertex_mats: epi_mats };
    (im, incl, epi)
}

/// Cokernel with its projection.
pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let q = &f.source.algebra.quiver;
    let fld = f.source.field();
    let n = &f.target;
    // per vertex: extend image basis B to a full basis T = [B | S];
    // projection Q = last rows of T^{-1}, section S = complement columns.
    let mut qs: Vec<Mat> = Vec::new();
    let mut ss: Vec<Mat> = Vec::new();
    for v in 0..q.vertex_count {
        let b = image_basis(&f.vertex_mats[v]);
        let t = crate::linalg::extend_to_basis(&b);
        let tinv = inverse(&t).expect("extend_to_basis yields invertible matrix");
        let comp = t.cols - b.cols;
        let qrows: Vec<usize> = (b.cols..t.cols).collect();
        qs.push(tinv.select_rows(&qrows));
        let scols: Vec<usize> = (b.cols..t.cols).collect();
        ss.push(if comp == 0 {
            Mat::zero(n.dim_vector[v], 0, fld)
        } else {
            t.select_cols(&scols)
        });
    }
    let dim: Vec<usize> = qs.iter().map(|m| m.rows).collect();
    let mats = q
        .arrows
        .iter()
        .enumerate()
        .map(|(aid, a)| qs[a.target].mul(&n.arrow_mats[aid]).mul(&ss[a.source]))
        .collect();
    let c = Module { algebra: n.algebra.clone(), dim_vector: dim, arrow_mats: mats };
    let proj = ModuleMap { source: n.clone(), target: c.clone(), vertex_mats: qs };
    (c, proj)
}

/// Kernel inclusion, image module and cokernel projection in one call.
pub fn map_factorization(f: &ModuleMap) -> (ModuleMap, Module, ModuleMap) {
    let (_, ker_incl) = kernel(f);
    let (im, _, _) = image(f);
    let (_, coker_proj) = cokernel(f);
    (ker_incl, im, coker_proj)
}

/// Direct sum with injections and projections per summand.
pub fn direct_sum(parts: &[Module]) -> (Module, Vec<(ModuleMap, ModuleMap)>) {
    assert!(!parts.is_empty(), "direct_sum of empty list: use Module::zero");
    let alg = parts[0].algebra.clone();
    let fld = parts[0].field();
    let q = alg.quiver.clone();
    let dim: Vec<usize> = (0..q.vertex_count)
        .map(|v| parts.iter().map(|m| m.dim_vector[v]).sum())
        .collect();
    let mats: Vec<Mat> = (0..q.arrows.len())
        .map(|aid| {
            let blocks: Vec<&Mat> = parts.iter().map(|m| &m.arrow_mats[aid]).collect();
            Mat::block_diag(&blocks, fld)
        })
        .collect();
    let total = Module { algebra: alg, dim_vector: dim, arrow_mats: mats };
    let mut maps = Vec::with_capacity(parts.len());
    let mut before = vec![0usize; q.vertex_count];
    for part in parts {
        let mut inj_mats = Vec::with_capacity(q.vertex_count);
        let mut proj_mats = Vec::with_capacity(q.vertex_count);
        for v in 0..q.vertex_count {
            let mut inj = Mat::zero(total.dim_vector[v], part.dim_vector[v], fld);
            let mut proj = Mat::zero(part.dim_vector[v], total.dim_vector[v], fld);
            for i in 0..part.dim_vector[v] {
                inj.set(before[v] + i, i, 1);
                proj.set(i, before[v] + i, 1);
            }
            inj_mats.push(inj);
            proj_mats.push(proj);
        }
        maps.push((
            ModuleMap { source: part.clone(), target: total.clone(), vertex_mats: inj_mats },
            ModuleMap { source: total.clone(), target: part.clone(), vertex_mats: proj_mats },
        ));
        for v in 0..q.vertex_count {
            before[v] += part.dim_vector[v];
        }
    }
    (total, maps)
}

/// Pushout of f: S→A, g: S→B: cokernel of (f; −g): S → A ⊕ B,
/// returned with the two legs A → P, B → P.
pub fn pushout(f: &ModuleMap, g: &ModuleMap) -> (Module, ModuleMap, ModuleMap) {
    debug_assert_eq!(f.source.dim_vector, g.source.dim_vector);
    let (sum, incls) = direct_sum(&[f.target.clone(), g.target.clone()]);
    let h_mats = f
        .vertex_mats
        .iter()
        .zip(&g.vertex_mats)
        .map(|(fm, gm)| fm.vstack(&gm.neg()))
        .collect();
    let h = ModuleMap { source: f.source.clone(), target: sum.clone(), vertex_mats: h_mats };
    let (p, proj) = cokernel(&h);
    let leg_a = incls[0].0.then(&proj);
    let leg_b = incls[1].0.then(&proj);
    (p, leg_a, leg_b)
}

/// Pullback of f: A→T, g: B→T: kernel of (f, −g): A ⊕ B → T,
/// returned with the two legs P → A, P → B.
pub fn pullback(f: &ModuleMap, g: &ModuleMap) -> (Module, ModuleMap, ModuleMap) {
    debug_assert_eq!(f.target.dim_vector, g.target.dim_vector);
    let (sum, incls) = direct_sum(&[f.source.clone(), g.source.clone()]);
    let k_mats = f
        .vertex_mats
        .iter()
        .zip(&g.vertex_mats)
        .map(|(fm, gm)| fm.hstack(&gm.neg()))
        .collect();
    let k = ModuleMap { source: sum.clone(), target: f.target.clone(), vertex_mats: k_mats };
    let (p, incl) = kernel(&k);
    let leg_a = incl.then(&incls[0].1);
    let leg_b = incl.then(&incls[1].1);
    (p, leg_a, leg_b)
}

/// The duality D: mod-Λ → mod-Λ^op: same dimension vector, transposed
/// arrow matrices. Contravariant, exact, and D∘D = id on the nose.
pub fn dual_module(m: &Module) -> Module {
    let op = m.algebra.op();
    Module {
        algebra: op,
        dim_vector: m.dim_vector.clone(),
        arrow_mats: m.arrow_mats.iter().map(Mat::transpose).collect(),
    }
}

/// D applied to a map reverses direction: D(f): D(target) → D(source).
pub fn dual_map(f: &ModuleMap) -> ModuleMap {
    ModuleMap {
        source: dual_module(&f.target),
        target: dual_module(&f.source),
        vertex_mats: f.vertex_mats.iter().map(Mat::transpose).collect(),
    }
}

/// Basis paths of P_i grouped by target vertex, in `path_basis` order.
/// This layout is shared with projective-cover construction.
pub fn projective_basis_paths(alg: &Algebra, i: usize) -> Vec<Vec<Path>> {
    let q = &alg.quiver;
    (0..q.vertex_count)
        .map(|j| {
            alg.path_basis
                .iter()
                .filter(|p| p.source == i && p.target(q) == j)
                .cloned()
                .collect()
        })
        .collect()
}

/// The indecomposable projectives P_0, …, P_{v−1}; P_i has basis the
/// residue paths starting at i, with arrows acting by post-composition.
pub fn projective_modules(alg: &Arc<Algebra>) -> Vec<Module> {
    let q = &alg.quiver;
    let fld = alg.field;
    (0..q.vertex_count)
        .map(|i| {
            let by_vertex = projective_basis_paths(alg, i);
            let dim: Vec<usize> = by_vertex.iter().map(Vec::len).collect();
            let mats = q
                .arrows
                .iter()
                .enumerate()
                .map(|(aid, a)| {
                    let (src, tgt) = (a.source, a.target);
                    let mut m = Mat::zero(dim[tgt], dim[src], fld);
                    for (c, p) in by_vertex[src].iter().enumerate() {
                        let mut arrows = p.arrows.clone();
                        arrows.push(aid);
                        let extended = Path { source: i, arrows };
                        let red = alg.reduce_path(&extended);
                        for (r, bp) in by_vertex[tgt].iter().enumerate() {
                            let bi = alg.basis_index_of(bp).unwrap();
                            m.set(r, c, red[bi]);
                        }
                    }
                    m
                })
                .collect();
            Module { algebra: alg.clone(), dim_vector: dim, arrow_mats: mats }
        })
        .collect()
}

/// The indecomposable injectives I_i = D(P_i over Λ^op).
pub fn injective_modules(alg: &Arc<Algebra>) -> Vec<Module> {
    let op = alg.op();
    projective_modules(&op)
        .iter()
        .map(|p| {
            let d = dual_module(p);
            // D lands over (Λ^op)^op; rebind to alg, which is structurally equal
            Module { algebra: alg.clone(), dim_vector: d.dim_vector, arrow_mats: d.arrow_mats }
        })
        .collect()
}

/// Rebind a module over (Λ^op)^op (or any structurally equal algebra)
/// back to the given algebra handle.
pub fn rebind(m: &Module, alg: &Arc<Algebra>) -> Module {
    debug_assert!(**alg == *m.algebra);
    Module { algebra: alg.clone(), dim_vector: m.dim_vector.clone(), arrow_mats: m.arrow_mats.clone() }
}

pub fn rebind_map(f: &ModuleMap, alg: &Arc<Algebra>) -> ModuleMap {
    ModuleMap {
        source: rebind(&f.source, alg),
        target: rebind(&f.target, alg),
        vertex_mats: f.vertex_mats.clone(),
    }
}

/// Find ψ: A → B with optional constraints post ∘ ψ = rhs_post and
/// ψ ∘ pre = rhs_pre, by solving over the Hom(A,B) basis. Returns the
/// deterministic solution (free coordinates zero) or None.
pub struct HomConstraint<'a> {
    /// require constraint.0 ∘ ψ ∘ constraint.1-style composites; see below
    pub pre: Option<&'a ModuleMap>,
    pub post: Option<&'a ModuleMap>,
    pub rhs: &'a ModuleMap,
}

pub fn solve_module_map(a: &Module, b: &Module, constraints: &[HomConstraint]) -> Option<ModuleMap> {
    let basis = hom_basis(a, b);
    let fld = a.field();
    if basis.is_empty() {
        // only the zero map exists; check it satisfies all constraints
        let zero = ModuleMap::zero(a, b);
        for c in constraints {
            if !apply_constraint(&zero, c).is_zero_diff(c) {
                return None;
            }
        }
        return Some(zero);
    }
    let mut rows_per_basis: Vec<Vec<u64>> = vec![Vec::new(); basis.len()];
    let mut rhs_flat: Vec<u64> = Vec::new();
    for c in constraints {
        for (bi, h) in basis.iter().enumerate() {
            let composed = apply_constraint(h, c).flat;
            rows_per_basis[bi].extend(composed);
        }
        rhs_flat.extend(c.rhs.flatten());
    }
    let nrows = rhs_flat.len();
    let mut mat = Mat::zero(nrows, basis.len(), fld);
    for (bi, col) in rows_per_basis.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            mat.set(r, bi, v);
        }
    }
    let sol = solve(&mat, &rhs_flat).ok()??;
    let mut out = ModuleMap::zero(a, b);
    for (bi, &coef) in sol.iter().enumerate() {
        if coef != 0 {
            out = out.add(&basis[bi].scale(coef));
        }
    }
    Some(out)
}

struct Applied {
    flat: Vec<u64>,
}

impl Applied {
    fn is_zero_diff(&self, c: &HomConstraint) -> bool {
        self.flat
            .iter()
            .zip(c.rhs.flatten())
            .all(|(&a, b)| a == b)
    }
}

fn apply_constraint(h: &ModuleMap, c: &HomConstraint) -> Applied {
    let mut cur = h.clone();
    if let Some(pre) = c.pre {
        cur = pre.then(&cur);
    }
    if let Some(post) = c.post {
        cur = cur.then(post);
    }
    Applied { flat: cur.flatten() }
}

/// Lift f: X→Z through the epi e: Y↠Z: find ψ: X→Y with e∘ψ = f.
pub fn lift_through_epi(f: &ModuleMap, e: &ModuleMap) -> Option<ModuleMap> {
    solve_module_map(
        &f.source,
        &e.source,
        &[HomConstraint { pre: None, post: Some(e), rhs: f }],
    )
}

/// Extend f: X→Z along the mono m: X↪Y: find ψ: Y→Z with ψ∘m = f.
pub fn extend_along_mono(f: &ModuleMap, m: &ModuleMap) -> Option<ModuleMap> {
    solve_module_map(
        &m.target,
        &f.target,
        &[HomConstraint { pre: Some(m), post: None, rhs: f }],
    )
}
