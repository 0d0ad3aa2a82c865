//! Minimal projective resolutions, Ext spaces with explicit cocycle
//! representatives, induced maps in both variables, Yoneda products,
//! class extraction from exact sequences, and the dual injective route
//! used for independent cross-checks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{image_basis, kernel_basis, rank, solve, Mat};
use crate::module::{
    direct_sum, dual_map, dual_module, hom_basis, hom_dim, kernel, projective_basis_paths,
    projective_modules, rebind, rebind_map, solve_module_map, HomConstraint, Module, ModuleMap,
};
use crate::quiver::Algebra;

/// Projective cover P(m) ↠ m. Minimality is re-verified: the kernel
/// must land in rad P, otherwise an internal invariant is broken.
pub fn projective_cover(m: &Module) -> Result<ModuleMap> {
    let alg: &Arc<Algebra> = &m.algebra;
    let fld = m.field();
    let q = &alg.quiver;
    let rad = m.radical_basis();

    // top generators: complement of the radical at each vertex
    let mut parts: Vec<Module> = Vec::new();
    let mut gens: Vec<(usize, Vec<u64>)> = Vec::new(); // (vertex, generator column)
    let projectives = projective_modules(alg);
    for v in 0..q.vertex_count {
        let full = crate::linalg::extend_to_basis(&rad[v]);
        for c in rad[v].cols..full.cols {
            parts.push(projectives[v].clone());
            gens.push((v, full.col(c)));
        }
    }
    if parts.is_empty() {
        if !m.is_zero() {
            return Err(Error::Internal("nonzero module with zero top".into()));
        }
        let z = Module::zero(alg.clone());
        return Ok(ModuleMap::zero(&z, m));
    }
    let (p, _) = direct_sum(&parts);

    // vertex matrices: block columns per part, one column per basis path
    let mut mats: Vec<Mat> = (0..q.vertex_count)
        .map(|w| Mat::zero(m.dim_vector[w], 0, fld))
        .collect();
    for (v, g) in &gens {
        let by_vertex = projective_basis_paths(alg, *v);
        for w in 0..q.vertex_count {
            let mut block = Mat::zero(m.dim_vector[w], by_vertex[w].len(), fld);
            for (c, path) in by_vertex[w].iter().enumerate() {
                let col = m.eval_path(path).mul(&Mat::from_col(g, fld));
                for r in 0..m.dim_vector[w] {
                    block.set(r, c, col.at(r, 0));
                }
            }
            mats[w] = mats[w].hstack(&block);
        }
    }
    let cover = ModuleMap::new(p, m.clone(), mats)?;
    if !cover.is_surjective() {
        return Err(Error::Internal("projective cover candidate not surjective".into()));
    }
    // minimality: ker ⊆ rad P
    let (_, ker_incl) = kernel(&cover);
    let prad = cover.source.radical_basis();
    for v in 0..q.vertex_count {
        let kmat = &ker_incl.vertex_mats[v];
        for c in 0..kmat.cols {
            let col: Vec<u64> = (0..kmat.rows).map(|r| kmat.at(r, c)).collect();
            if solve(&prad[v], &col)?.is_none() {
                return Err(Error::Internal("projective cover kernel escapes the radical".into()));
            }
        }
    }
    Ok(cover)
}

/// A minimal projective resolution, padded with zero modules to the
/// requested length: `terms[i]` is P_i, `diffs[i]`: P_{i+1} → P_i,
/// `aug`: P_0 → target.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub target: Module,
    pub terms: Vec<Module>,
    pub diffs: Vec<ModuleMap>,
    pub aug: ModuleMap,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }
}

/// Minimal projective resolution with terms P_0 … P_len.
pub fn min_projective_resolution(m: &Module, len: usize) -> Result<Resolution> {
    let aug = projective_cover(m)?;
    let mut terms = vec![aug.source.clone()];
    let mut diffs: Vec<ModuleMap> = Vec::new();
    let mut last_epi = aug.clone(); // epi P_i ↠ current syzygy target (composed with incl)
    for _ in 0..len {
        let (syz, incl) = kernel(&last_epi);
        if syz.is_zero() {
            break;
        }
        let cover = projective_cover(&syz)?;
        let d = cover.then(&incl);
        terms.push(cover.source.clone());
        diffs.push(d.clone());
        last_epi = d;
    }
    // pad to the requested length so downstream indexing is uniform
    let zero = Module::zero(m.algebra.clone());
    while terms.len() < len + 1 {
        let prev = terms.last().unwrap().clone();
        diffs.push(ModuleMap::zero(&zero, &prev));
        terms.push(zero.clone());
    }
    Ok(Resolution { target: m.clone(), terms, diffs, aug })
}

/// Coordinates of a map in a listed Hom basis (flattened entries).
fn basis_matrix(basis: &[ModuleMap], flat_len: usize, fld: crate::linalg::PrimeField) -> Mat {
    let mut h = Mat::zero(flat_len, basis.len(), fld);
    for (c, b) in basis.iter().enumerate() {
        for (r, &v) in b.flatten().iter().enumerate() {
            h.set(r, c, v);
        }
    }
    h
}

fn coords_of_map(basis_mat: &Mat, f: &ModuleMap) -> Option<Vec<u64>> {
    solve(basis_mat, &f.flatten()).ok().flatten()
}

/// Ext^k(x, n) for k ≥ 1 in the cochain model Hom(P_•, n): cocycles Z,
/// coboundaries B, and chosen class representatives extending B inside Z.
#[derive(Debug, Clone)]
pub struct ExtSpace {
    pub res: Resolution,
    pub n: Module,
    pub k: usize,
    pub hom_k: Vec<ModuleMap>,
    hom_k_mat: Mat,
    /// kernel of d_{k+1}^*, columns in Hom(P_k, n)-basis coordinates
    z: Mat,
    /// image of d_k^*, same coordinates
    b: Mat,
    /// chosen representatives: columns of Z extending B
    reps: Mat,
}

impl ExtSpace {
    pub fn new(res: &Resolution, n: &Module, k: usize) -> Result<ExtSpace> {
        assert!(k >= 1, "ExtSpace models Ext^k for k ≥ 1");
        if res.length() < k + 1 {
            return Err(Error::Internal(format!(
                "resolution of length {} too short for Ext^{k}",
                res.length()
            )));
        }
        let fld = n.field();
        let hom_k = hom_basis(&res.terms[k], n);
        let flat_len: usize = n
            .dim_vector
            .iter()
            .zip(&res.terms[k].dim_vector)
            .map(|(&a, &b)| a * b)
            .sum();
        let hom_k_mat = basis_matrix(&hom_k, flat_len, fld);

        // d_{k+1}^*: Hom(P_k, n) → Hom(P_{k+1}, n), h ↦ h ∘ d_{k+1}
        let hom_k1 = hom_basis(&res.terms[k + 1], n);
        let flat_len1: usize = n
            .dim_vector
            .iter()
            .zip(&res.terms[k + 1].dim_vector)
            .map(|(&a, &b)| a * b)
            .sum();
        let hom_k1_mat = basis_matrix(&hom_k1, flat_len1, fld);
        let mut dstar_up = Mat::zero(hom_k1.len(), hom_k.len(), fld);
        for (c, h) in hom_k.iter().enumerate() {
            let composed = res.diffs[k].then(h);
            let coords = coords_of_map(&hom_k1_mat, &composed)
                .ok_or_else(|| Error::Internal("composite escapes Hom basis".into()))?;
            for (r, &v) in coords.iter().enumerate() {
                dstar_up.set(r, c, v);
            }
        }
        let z = kernel_basis(&dstar_up);

        // d_k^*: Hom(P_{k-1}, n) → Hom(P_k, n)
        let hom_km1 = hom_basis(&res.terms[k - 1], n);
        let mut dstar_down = Mat::zero(hom_k.len(), hom_km1.len(), fld);
        for (c, h) in hom_km1.iter().enumerate() {
            let composed = res.diffs[k - 1].then(h);
            let coords = coords_of_map(&hom_k_mat, &composed)
                .ok_or_else(|| Error::Internal("composite escapes Hom basis".into()))?;
            for (r, &v) in coords.iter().enumerate() {
                dstar_down.set(r, c, v);
            }
        }
        let b = image_basis(&dstar_down);

        // representatives: greedy extension of B inside Z
        let mut cur = b.clone();
        let mut reps = Mat::zero(hom_k.len(), 0, fld);
        let base_rank = rank(&cur);
        let mut r = base_rank;
        for c in 0..z.cols {
            let col = Mat::from_col(&z.col(c), fld);
            let cand = cur.hstack(&col);
            if rank(&cand) > r {
                cur = cand;
                reps = reps.hstack(&col);
                r += 1;
            }
        }
        Ok(ExtSpace { res: res.clone(), n: n.clone(), k, hom_k, hom_k_mat, z, b, reps })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols
    }

    /// Class coordinates of a cocycle P_k → n; None when the map is not
    /// a cocycle (or not expressible in the Hom basis).
    pub fn class_of_cocycle(&self, f: &ModuleMap) -> Option<Vec<u64>> {
        let coords = coords_of_map(&self.hom_k_mat, f)?;
        // must lie in Z
        solve(&self.z, &coords).ok().flatten()?;
        // express over [reps | B]; the reps part is the class
        let rb = self.reps.hstack(&self.b);
        let sol = solve(&rb, &coords).ok().flatten()?;
        Some(sol[..self.reps.cols].to_vec())
    }

    /// The chosen cocycle representative of a class.
    pub fn cocycle_of_class(&self, class: &[u64]) -> ModuleMap {
        assert_eq!(class.len(), self.reps.cols);
        let fld = self.n.field();
        let mut coords = vec![0u64; self.hom_k.len()];
        for (c, &cl) in class.iter().enumerate() {
            if cl == 0 {
                continue;
            }
            for r in 0..self.reps.rows {
                coords[r] = fld.add(coords[r], fld.mul(cl, self.reps.at(r, c)));
            }
        }
        let mut out = ModuleMap::zero(&self.res.terms[self.k], &self.n);
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.hom_k[i].scale(c));
            }
        }
        out
    }

    pub fn zero_class(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }
}

/// dim Ext^k(m, n) via the minimal projective resolution of m.
pub fn ext_dim(m: &Module, n: &Module, k: usize) -> Result<usize> {
    if k == 0 {
        return Ok(hom_dim(m, n));
    }
    let res = min_projective_resolution(m, k + 1)?;
    Ok(ExtSpace::new(&res, n, k)?.dim())
}

/// Covariant induced map Ext^k(x, n) → Ext^k(x, n') from f: n → n'.
/// Both Ext spaces must be built on the same resolution of x.
pub fn ext_induced_map(from: &ExtSpace, to: &ExtSpace, f: &ModuleMap) -> Result<Mat> {
    assert_eq!(from.k, to.k);
    let fld = f.source.field();
    let mut out = Mat::zero(to.dim(), from.dim(), fld);
    for j in 0..from.dim() {
        let mut class = from.zero_class();
        class[j] = 1;
        let z = from.cocycle_of_class(&class);
        let pushed = z.then(f);
        let col = to
            .class_of_cocycle(&pushed)
            .ok_or_else(|| Error::Internal("pushed cocycle is not a cocycle".into()))?;
        for (r, &v) in col.iter().enumerate() {
            out.set(r, j, v);
        }
    }
    Ok(out)
}

/// Chain map lifting h: x → x0 over the two minimal resolutions,
/// returning φ_0 … φ_up_to with aug ∘ φ_0 = h ∘ aug and d φ_{i+1} = φ_i d.
pub fn chain_lift(
    res_x: &Resolution,
    res_x0: &Resolution,
    h: &ModuleMap,
    up_to: usize,
) -> Result<Vec<ModuleMap>> {
    let mut phis: Vec<ModuleMap> = Vec::with_capacity(up_to + 1);
    let rhs0 = res_x.aug.then(h);
    let phi0 = solve_module_map(
        &res_x.terms[0],
        &res_x0.terms[0],
        &[HomConstraint { pre: None, post: Some(&res_x0.aug), rhs: &rhs0 }],
    )
    .ok_or_else(|| Error::Internal("chain lift failed at degree 0".into()))?;
    phis.push(phi0);
    for i in 0..up_to {
        let rhs = res_x.diffs[i].then(&phis[i]);
        let phi = solve_module_map(
            &res_x.terms[i + 1],
            &res_x0.terms[i + 1],
            &[HomConstraint { pre: None, post: Some(&res_x0.diffs[i]), rhs: &rhs }],
        )
        .ok_or_else(|| Error::Internal(format!("chain lift failed at degree {}", i + 1)))?;
        phis.push(phi);
    }
    Ok(phis)
}

/// Contravariant induced map Ext^k(x0, n) → Ext^k(x, n) from h: x → x0.
pub fn ext_contra_map(es_x0: &ExtSpace, es_x: &ExtSpace, h: &ModuleMap) -> Result<Mat> {
    assert_eq!(es_x0.k, es_x.k);
    let k = es_x.k;
    let phis = chain_lift(&es_x.res, &es_x0.res, h, k)?;
    let fld = h.source.field();
    let mut out = Mat::zero(es_x.dim(), es_x0.dim(), fld);
    for j in 0..es_x0.dim() {
        let mut class = es_x0.zero_class();
        class[j] = 1;
        let y = es_x0.cocycle_of_class(&class);
        let pulled = phis[k].then(&y);
        let col = es_x
            .class_of_cocycle(&pulled)
            .ok_or_else(|| Error::Internal("pulled cocycle is not a cocycle".into()))?;
        for (r, &v) in col.iter().enumerate() {
            out.set(r, j, v);
        }
    }
    Ok(out)
}

/// Yoneda product: given a cocycle z: P_k(m) → m0 and a cocycle
/// y: P_d(m0) → w, return the cocycle y ∘ (lifted z): P_{k+d}(m) → w
/// representing the product class in Ext^{k+d}(m, w).
pub fn yoneda_compose(
    res_m: &Resolution,
    res_m0: &Resolution,
    z: &ModuleMap,
    k: usize,
    y: &ModuleMap,
    d: usize,
) -> Result<ModuleMap> {
    if res_m.length() < k + d {
        return Err(Error::Internal("resolution too short for Yoneda product".into()));
    }
    // lift z: z_0: P_k(m) → P_0(m0) with aug ∘ z_0 = z, then climb
    let mut zj = solve_module_map(
        &res_m.terms[k],
        &res_m0.terms[0],
        &[HomConstraint { pre: None, post: Some(&res_m0.aug), rhs: z }],
    )
    .ok_or_else(|| Error::Internal("Yoneda lift failed at degree 0".into()))?;
    for j in 0..d {
        let rhs = res_m.diffs[k + j].then(&zj);
        zj = solve_module_map(
            &res_m.terms[k + j + 1],
            &res_m0.terms[j + 1],
            &[HomConstraint { pre: None, post: Some(&res_m0.diffs[j]), rhs: &rhs }],
        )
        .ok_or_else(|| Error::Internal(format!("Yoneda lift failed at degree {}", j + 1)))?;
    }
    Ok(zj.then(y))
}

/// Read the Ext^k class off an exact sequence
/// 0 → n → e_{k-1} → … → e_0 → x → 0, given as its k+1 maps in order
/// n → e_{k-1}, …, e_0 → x. The ExtSpace must be for (x, n, k).
pub fn ext_class_of_sequence(maps: &[ModuleMap], es: &ExtSpace) -> Result<Vec<u64>> {
    let k = es.k;
    if maps.len() != k + 1 {
        return Err(Error::InvalidInput(format!(
            "expected {} maps for an Ext^{k} sequence, got {}",
            k + 1,
            maps.len()
        )));
    }
    // lift the identity of x through the sequence
    // ψ_0: P_0 → e_0 with (e_0 → x) ∘ ψ_0 = aug
    let mut psi = solve_module_map(
        &es.res.terms[0],
        &maps[k].source,
        &[HomConstraint { pre: None, post: Some(&maps[k]), rhs: &es.res.aug }],
    )
    .ok_or_else(|| Error::Internal("sequence lift failed at degree 0".into()))?;
    for j in 1..=k {
        // ψ_j: P_j → e_j with (e_j → e_{j-1}) ∘ ψ_j = ψ_{j-1} ∘ d_j
        let rhs = es.res.diffs[j - 1].then(&psi);
        psi = solve_module_map(
            &es.res.terms[j],
            &maps[k - j].source,
            &[HomConstraint { pre: None, post: Some(&maps[k - j]), rhs: &rhs }],
        )
        .ok_or_else(|| Error::Internal(format!("sequence lift failed at degree {j}")))?;
    }
    es.class_of_cocycle(&psi)
        .ok_or_else(|| Error::Internal("sequence lift is not a cocycle".into()))
}

/// A minimal injective coresolution: `terms[i]` is I^i,
/// `diffs[i]`: I^i → I^{i+1}, `coaug`: source → I^0. Built by duality.
#[derive(Debug, Clone)]
pub struct Coresolution {
    pub source: Module,
    pub terms: Vec<Module>,
    pub diffs: Vec<ModuleMap>,
    pub coaug: ModuleMap,
}

pub fn min_injective_coresolution(m: &Module, len: usize) -> Result<Coresolution> {
    let alg = m.algebra.clone();
    let dm = dual_module(m);
    let res = min_projective_resolution(&dm, len)?;
    let terms: Vec<Module> = res
        .terms
        .iter()
        .map(|p| rebind(&dual_module(p), &alg))
        .collect();
    let coaug = rebind_map(&dual_map(&res.aug), &alg);
    // D(DM) has the same matrices as m but may be a different handle;
    // rebind sources so callers can compose directly
    let coaug = ModuleMap {
        source: m.clone(),
        target: coaug.target.clone(),
        vertex_mats: coaug.vertex_mats.clone(),
    };
    let diffs: Vec<ModuleMap> = res
        .diffs
        .iter()
        .map(|d| rebind_map(&dual_map(d), &alg))
        .collect();
    Ok(Coresolution { source: m.clone(), terms, diffs, coaug })
}

/// dim Ext^k(m, n) via the minimal injective coresolution of n —
/// an independent route used to cross-check the projective one.
pub fn ext_dim_via_injectives(m: &Module, n: &Module, k: usize) -> Result<usize> {
    if k == 0 {
        return Ok(hom_dim(m, n));
    }
    let cores = min_injective_coresolution(n, k + 1)?;
    // cochain C^j = Hom(m, I^j), δ^j = postcompose with I^j → I^{j+1}
    let fld = m.field();
    let delta = |j: usize| -> Result<Mat> {
        let src_basis = hom_basis(m, &cores.terms[j]);
        let tgt_basis = hom_basis(m, &cores.terms[j + 1]);
        let flat_len: usize = cores.terms[j + 1]
            .dim_vector
            .iter()
            .zip(&m.dim_vector)
            .map(|(&a, &b)| a * b)
            .sum();
        let tgt_mat = basis_matrix(&tgt_basis, flat_len, fld);
        let mut d = Mat::zero(tgt_basis.len(), src_basis.len(), fld);
        for (c, h) in src_basis.iter().enumerate() {
            let composed = h.then(&cores.diffs[j]);
            let coords = coords_of_map(&tgt_mat, &composed)
                .ok_or_else(|| Error::Internal("composite escapes Hom basis".into()))?;
            for (r, &v) in coords.iter().enumerate() {
                d.set(r, c, v);
            }
        }
        Ok(d)
    };
    let up = delta(k)?;
    let down = delta(k - 1)?;
    Ok(kernel_basis(&up).cols - rank(&down))
}

/// Syzygy Ω^i(m): the i-th kernel in the minimal projective resolution
/// (Ω^0 = m itself).
pub fn syzygy(m: &Module, i: usize) -> Result<Module> {
    if i == 0 {
        return Ok(m.clone());
    }
    let mut cur = projective_cover(m)?;
    for j in 0..i {
        let (syz, incl) = kernel(&cur);
        if j + 1 == i || syz.is_zero() {
            return Ok(syz);
        }
        let cover = projective_cover(&syz)?;
        cur = cover.then(&incl);
    }
    unreachable!()
}

/// Cosyzygy Ω^{-i}(m) via duality.
pub fn cosyzygy(m: &Module, i: usize) -> Result<Module> {
    let alg = m.algebra.clone();
    let s = syzygy(&dual_module(m), i)?;
    Ok(rebind(&dual_module(&s), &alg))
}
