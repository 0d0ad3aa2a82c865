//! Decision procedures for higher homological structure: n-cluster
//! tilting and nℤ verification, degree-n Ext-ladder exactness, perpendicular
//! subcategories, n-special precovers, n-cotorsion certification,
//! left-closure under n-extensions, the Wakamatsu-style cover experiment,
//! wide subcategories, and restriction of scalars along algebra quotients.
//!
//! Every procedure returns a `CheckReport` whose `Fail` verdict carries a
//! counterexample re-checkable by the lower-level APIs, and whose `Pass`
//! over a merely declared universe is downgraded to `PassRelative`.

use serde::Serialize;
use serde_json::{json, Value};
use std::sync::Arc;

use crate::approx::{
    dual_subcat, ext_class_representative, n_cokernel_in, n_kernel_in,
    right_approx, right_approx_forced, right_minimalize, NSequence,
};
use crate::config::{enumerate_vectors, Budget};
use crate::decompose::{in_add, Subcat};
use crate::error::{Error, Result};
use crate::homology::{ext_dim, ext_induced_map, min_projective_resolution, ExtSpace};
use crate::linalg::rank;
use crate::module::{
    dual_module, hom_basis, kernel, projective_modules, solve_module_map, HomConstraint, Module,
    ModuleMap,
};
use crate::quiver::Algebra;

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    PassRelative,
    Fail,
    Inconclusive,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// Produced by a catalog generator with a closed-form classification
    /// of indecomposables.
    Complete,
    /// Declared by the caller; verdicts quantified over it are relative.
    Declared,
}

/// The quantification range for "for every module" checks: a list of
/// pairwise non-isomorphic indecomposables over one algebra.
#[derive(Debug, Clone)]
pub struct Universe {
    pub algebra: Arc<Algebra>,
    pub indecomposables: Vec<Module>,
    pub completeness: Completeness,
}

impl Universe {
    fn scope(&self) -> String {
        match self.completeness {
            Completeness::Complete => {
                format!("complete universe of {} indecomposables", self.indecomposables.len())
            }
            Completeness::Declared => {
                format!("declared universe of {} indecomposables", self.indecomposables.len())
            }
        }
    }

    fn pass_verdict(&self) -> Verdict {
        match self.completeness {
            Completeness::Complete => Verdict::Pass,
            Completeness::Declared => Verdict::PassRelative,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub scope: String,
    pub certificate: Value,
    pub counterexample: Value,
}

impl CheckReport {
    pub fn new(check: &str, verdict: Verdict, scope: String, certificate: Value) -> Self {
        CheckReport {
            check: check.to_string(),
            verdict,
            scope,
            certificate,
            counterexample: Value::Null,
        }
    }

    pub fn fail(check: &str, scope: String, counterexample: Value) -> Self {
        CheckReport {
            check: check.to_string(),
            verdict: Verdict::Fail,
            scope,
            certificate: Value::Null,
            counterexample,
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::PassRelative)
    }

    /// Full report object: the schema used by the command-line surface.
    pub fn to_json(&self, seed: u64, elapsed_ms: u64) -> Value {
        json!({
            "check": self.check,
            "verdict": self.verdict,
            "scope": self.scope,
            "certificate": self.certificate,
            "counterexample": self.counterexample,
            "seed": seed,
            "elapsed_ms": elapsed_ms,
        })
    }
}

fn dims(m: &Module) -> Value {
    json!(m.dim_vector)
}

/// Errors that mean "this particular construction did not go through"
/// rather than "the input is broken": budget limitations plus the
/// approximation/representative diagnostics. Checks that rely on a
/// sufficient construction downgrade these to Inconclusive.
fn construction_failed(e: &Error) -> bool {
    e.is_inconclusive()
        || matches!(
            e,
            Error::ApproxNotSurjective(_)
                | Error::NKernelEscapesM(_)
                | Error::RepresentativeEscapesM(_)
        )
}

fn combo_map(basis: &[ModuleMap], coeffs: &[u64], src: &Module, tgt: &Module) -> ModuleMap {
    let mut acc = ModuleMap::zero(src, tgt);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// n-cluster tilting and nℤ
// ---------------------------------------------------------------------------

/// Is `cat` an n-cluster tilting subcategory relative to the universe?
/// Checks generating/cogenerating via approximations and the two-sided
/// degree-wise orthogonality characterization M = M^⊥ = ^⊥M (Ext^i for
/// 0 < i < n) against every universe member. Functorial finiteness is
/// automatic for the additive closure of finitely many modules and is
/// recorded, not computed.
pub fn is_n_cluster_tilting(
    u: &Universe,
    cat: &Subcat,
    n: usize,
    budget: &Budget,
) -> Result<CheckReport> {
    let check = "is_n_cluster_tilting";
    let dcat = dual_subcat(cat);
    for (idx, m) in u.indecomposables.iter().enumerate() {
        let gen = right_approx_forced(cat, m, true, budget)?.surjective;
        if !gen {
            return Ok(CheckReport::fail(
                check,
                u.scope(),
                json!({"module": idx, "dim_vector": dims(m), "reason": "no epi from the subcategory"}),
            ));
        }
        let cogen = right_approx_forced(&dcat, &dual_module(m), true, budget)?.surjective;
        if !cogen {
            return Ok(CheckReport::fail(
                check,
                u.scope(),
                json!({"module": idx, "dim_vector": dims(m), "reason": "no mono into the subcategory"}),
            ));
        }
        let member = in_add(m, cat, budget)?.is_some();
        for i in 1..n {
            for (gi, g) in cat.generators.iter().enumerate() {
                if ext_dim(g, m, i)? != 0 {
                    if member {
                        return Ok(CheckReport::fail(
                            check,
                            u.scope(),
                            json!({"module": idx, "dim_vector": dims(m), "generator": gi,
                                   "ext_degree": i, "reason": "member with nonvanishing Ext into it"}),
                        ));
                    }
                    // non-member correctly excluded from the right perp
                }
                if ext_dim(m, g, i)? != 0 && member {
                    return Ok(CheckReport::fail(
                        check,
                        u.scope(),
                        json!({"module": idx, "dim_vector": dims(m), "generator": gi,
                               "ext_degree": i, "reason": "member with nonvanishing Ext out of it"}),
                    ));
                }
            }
        }
        if !member {
            let in_rperp = (1..n).try_fold(true, |acc, i| -> Result<bool> {
                if !acc {
                    return Ok(false);
                }
                for g in &cat.generators {
                    if ext_dim(g, m, i)? != 0 {
                        return Ok(false);
                    }
                }
                Ok(true)
            })?;
            let in_lperp = (1..n).try_fold(true, |acc, i| -> Result<bool> {
                if !acc {
                    return Ok(false);
                }
                for g in &cat.generators {
                    if ext_dim(m, g, i)? != 0 {
                        return Ok(false);
                    }
                }
                Ok(true)
            })?;
            if in_rperp && in_lperp {
                return Ok(CheckReport::fail(
                    check,
                    u.scope(),
                    json!({"module": idx, "dim_vector": dims(m),
                           "reason": "two-sided perpendicular module outside the subcategory"}),
                ));
            }
        }
    }
    Ok(CheckReport::new(
        check,
        u.pass_verdict(),
        u.scope(),
        json!({
            "generators": cat.generators.len(),
            "functorially_finite": "automatic: additive closure of finitely many modules",
        }),
    ))
}

/// Is the subcategory closed under n-syzygies up to the requested depth
/// (Ω_{ni} g ∈ add(cat) for every generator g and i ≤ depth; the zero
/// module passes)? The degree-n cosyzygy is tested as a depth-1 cross-check.
pub fn is_nz(cat: &Subcat, n: usize, depth: usize, budget: &Budget) -> Result<CheckReport> {
    let check = "is_nZ";
    let scope = format!("generators of the subcategory, syzygy depth {depth}");
    for (gi, g) in cat.generators.iter().enumerate() {
        for i in 1..=depth {
            let s = crate::homology::syzygy(g, n * i)?;
            if !s.is_zero() && in_add(&s, cat, budget)?.is_none() {
                return Ok(CheckReport::fail(
                    check,
                    scope,
                    json!({"generator": gi, "syzygy_degree": n * i, "dim_vector": dims(&s)}),
                ));
            }
        }
    }
    // Informational cross-check in the opposite direction: for a subcategory
    // that is part of a full higher cluster-tilting pair the degree-n
    // cosyzygies stay inside as well, but this is not implied by syzygy
    // closure alone (the projectives are the standard counterexample), so
    // the outcome is recorded rather than folded into the verdict.
    let mut cosyzygy_closed = true;
    for g in &cat.generators {
        let c = crate::homology::cosyzygy(g, n)?;
        if !c.is_zero() && in_add(&c, cat, budget)?.is_none() {
            cosyzygy_closed = false;
            break;
        }
    }
    Ok(CheckReport::new(
        check,
        Verdict::Pass,
        scope,
        json!({"depth": depth, "cosyzygy_cross_check": cosyzygy_closed}),
    ))
}

// ---------------------------------------------------------------------------
// Ext ladders, perpendiculars, precovers
// ---------------------------------------------------------------------------

/// The tail r_n → r_{n-1} → … → r_1 of an (n+2)-term sequence, stored
/// left to right: maps[i]: modules[i] → modules[i+1].
#[derive(Debug, Clone)]
pub struct Tail {
    pub modules: Vec<Module>,
    pub maps: Vec<ModuleMap>,
}

/// Extract the tail (leftmost n terms) of 0 → r_n → … → r_1 → x → m → 0.
pub fn tail_of(seq: &NSequence) -> Tail {
    let n = seq.n();
    Tail {
        modules: seq.modules[..n].to_vec(),
        maps: seq.maps[..n.saturating_sub(1)].to_vec(),
    }
}

/// Exactness of 0 → Ext^d(x, r_n) → … → Ext^d(x, r_1) → 0: injectivity at
/// the left end, kernel-image rank conditions at interior spots,
/// surjectivity at the right end.
pub fn ext_ladder_exact(x: &Module, tail: &Tail, degree: usize) -> Result<bool> {
    assert!(degree >= 1);
    if tail.modules.is_empty() {
        return Ok(true);
    }
    let res = min_projective_resolution(x, degree + 1)?;
    let spaces: Vec<ExtSpace> = tail
        .modules
        .iter()
        .map(|m| ExtSpace::new(&res, m, degree))
        .collect::<Result<_>>()?;
    let mats: Vec<crate::linalg::Mat> = tail
        .maps
        .iter()
        .enumerate()
        .map(|(i, f)| ext_induced_map(&spaces[i], &spaces[i + 1], f))
        .collect::<Result<_>>()?;
    let t = spaces.len();
    if t == 1 {
        return Ok(spaces[0].dim() == 0);
    }
    for spot in 0..t {
        let in_rank = if spot == 0 { 0 } else { rank(&mats[spot - 1]) };
        let out_ker = if spot == t - 1 {
            spaces[spot].dim() // the outgoing map is the zero map to 0
        } else {
            spaces[spot].dim() - rank(&mats[spot])
        };
        if out_ker != in_rank && spot > 0 {
            return Ok(false);
        }
        if spot == 0 && out_ker != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does the tail belong to the class of sequences whose degree-n Ext
/// ladder against every generator of X is exact at both ends and in the
/// interior? Generator-level checking suffices by additivity of Ext.
pub fn is_in_x_exact_n(x: &Subcat, tail: &Tail, n: usize) -> Result<CheckReport> {
    let check = "is_in_X_exact_n";
    let scope = format!("{} generators of X", x.generators.len());
    for (gi, g) in x.generators.iter().enumerate() {
        if !ext_ladder_exact(g, tail, n)? {
            return Ok(CheckReport::fail(
                check,
                scope,
                json!({"generator": gi, "dim_vector": dims(g), "ext_degree": n}),
            ));
        }
    }
    Ok(CheckReport::new(check, Verdict::Pass, scope, json!({"tails": 1, "ext_degree": n})))
}

/// The generators of Msub against which every tail in the family has an
/// exact degree-n Ext ladder.
pub fn left_perp_of_family(msub: &Subcat, family: &[Tail], n: usize) -> Result<Subcat> {
    let mut kept = Vec::new();
    'gens: for g in &msub.generators {
        for tail in family {
            if !ext_ladder_exact(g, tail, n)? {
                continue 'gens;
            }
        }
        kept.push(g.clone());
    }
    Ok(Subcat::from_indecomposables_unchecked(kept))
}

/// An n-special precover of m: a surjective right add(X)-approximation
/// (with the projective cover added when surjectivity demands it and the
/// projectives lie in add(X)), its n-kernel inside add(Msub), and the
/// certification that the tail's Ext ladders against X are exact. The
/// precover property itself is re-verified by factoring a spanning set of
/// Hom(X-generators, m) through the constructed map.
pub fn n_special_precover(
    x: &Subcat,
    msub: &Subcat,
    m: &Module,
    n: usize,
    budget: &Budget,
) -> Result<(NSequence, CheckReport)> {
    let ar = right_approx_forced(x, m, true, budget)?;
    if !ar.surjective {
        return Err(Error::ApproxNotSurjective(
            "no surjective right approximation from the subcategory".into(),
        ));
    }
    let f = match right_minimalize(&ar.map, budget) {
        Ok(f) => f,
        Err(Error::MinimalityInconclusive(_)) => ar.map.clone(),
        Err(e) => return Err(e),
    };
    let seq = n_kernel_in(msub, &f, n, budget, true)?;
    let tail = tail_of(&seq);
    let mut report = is_in_x_exact_n(x, &tail, n)?;
    report.check = "n_special_precover".into();
    // precover re-verification: every map from a generator factors through f
    for (gi, g) in x.generators.iter().enumerate() {
        for phi in hom_basis(g, m) {
            let lifted = solve_module_map(
                g,
                &f.source,
                &[HomConstraint { pre: None, post: Some(&f), rhs: &phi }],
            );
            if lifted.is_none() {
                return Err(Error::Internal(format!(
                    "approximation lost the precover property for generator {gi}"
                )));
            }
        }
    }
    if report.is_pass() {
        report.certificate = json!({
            "sequence_dim_vectors": seq.modules.iter().map(|m| m.dim_vector.clone()).collect::<Vec<_>>(),
            "precover_factoring": "verified on a spanning set",
        });
    }
    Ok((seq, report))
}

// ---------------------------------------------------------------------------
// n-cotorsion
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CotorsionStrategy {
    /// Sufficient path: an n-special precovering class closed under direct
    /// summands is an n-cotorsion class; summand closure is automatic for
    /// the additive closure of a generator list.
    Theorem,
    /// Definition relative to a finite certified tail family F: compare X
    /// with ⊥F inside Msub.
    Relative,
}

/// Is X an n-cotorsion class inside add(Msub), i.e. X = ^⊥(X-exact_n)?
pub fn is_n_cotorsion(
    x: &Subcat,
    msub: &Subcat,
    u: &Universe,
    n: usize,
    strategy: CotorsionStrategy,
    extra_tails: &[Tail],
    budget: &Budget,
) -> Result<CheckReport> {
    let check = "is_n_cotorsion";
    match strategy {
        CotorsionStrategy::Theorem => {
            let mut built = Vec::new();
            for (gi, g) in msub.generators.iter().enumerate() {
                match n_special_precover(x, msub, g, n, budget) {
                    Ok((seq, rep)) if rep.is_pass() => {
                        built.push(seq.modules.iter().map(|m| m.dim_vector.clone()).collect::<Vec<_>>());
                    }
                    Ok((_, rep)) => {
                        return Ok(CheckReport::new(
                            check,
                            Verdict::Inconclusive,
                            "generators of Msub (sufficient criterion)".into(),
                            json!({"generator": gi, "reason": "canonical precover tail not certified",
                                   "detail": rep.counterexample}),
                        ));
                    }
                    Err(e) if construction_failed(&e) => {
                        return Ok(CheckReport::new(
                            check,
                            Verdict::Inconclusive,
                            "generators of Msub (sufficient criterion)".into(),
                            json!({"generator": gi, "reason": e.to_string()}),
                        ));
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(CheckReport::new(
                check,
                Verdict::Pass,
                "all of add(Msub) via generators".into(),
                json!({
                    "strategy": "theorem",
                    "certificate": "n-special precover constructed and certified for every generator; \
                                    summand closure automatic",
                    "precovers": built,
                }),
            ))
        }
        CotorsionStrategy::Relative => {
            let mut family: Vec<Tail> = extra_tails.to_vec();
            let mut attempted = 0usize;
            for m in &u.indecomposables {
                if in_add(m, msub, budget)?.is_none() {
                    continue;
                }
                attempted += 1;
                match n_special_precover(x, msub, m, n, budget) {
                    Ok((seq, rep)) if rep.is_pass() => family.push(tail_of(&seq)),
                    Ok(_) => {}
                    Err(e) if construction_failed(&e) => {}
                    Err(e) => return Err(e),
                }
            }
            // contractible tails are always exact, so they never shrink ⊥F
            let perp = left_perp_of_family(msub, &family, n)?;
            let scope = format!(
                "relative to a family of {} certified tails ({} precover attempts; {})",
                family.len(),
                attempted,
                u.scope()
            );
            for (xi, xg) in x.generators.iter().enumerate() {
                if in_add(xg, &perp, budget)?.is_none() {
                    return Ok(CheckReport::fail(
                        check,
                        scope,
                        json!({"x_generator": xi, "dim_vector": dims(xg),
                               "reason": "inexact ladder against a certified tail: X ⊄ ⊥F"}),
                    ));
                }
            }
            let mut extras = Vec::new();
            for pg in &perp.generators {
                if in_add(pg, x, budget)?.is_none() {
                    extras.push(dims(pg));
                }
            }
            if extras.is_empty() {
                Ok(CheckReport::new(
                    check,
                    Verdict::PassRelative,
                    scope,
                    json!({"strategy": "relative", "perp_generators": perp.generators.len()}),
                ))
            } else {
                Ok(CheckReport::new(
                    check,
                    Verdict::Inconclusive,
                    scope,
                    json!({"strategy": "relative", "reason": "X strictly inside ⊥F",
                           "extra_perp_members": extras}),
                ))
            }
        }
    }
}

/// Structural audit: (i) additive and summand closure are recorded as
/// automatic for a generator-list subcategory; (ii) when X claims to be an
/// n-cotorsion class the projectives must lie in add(X); (iii) when X is
/// closed under n-syzygies, the degree-ni ladders of all certified
/// precover tails must stay exact for i ≤ depth.
pub fn basic_properties_audit(
    x: &Subcat,
    msub: &Subcat,
    n: usize,
    depth: usize,
    claims_cotorsion: bool,
    budget: &Budget,
) -> Result<CheckReport> {
    let check = "basic_properties_audit";
    let scope = "generators of X and Msub".to_string();
    let alg = match msub.generators.first().or_else(|| x.generators.first()) {
        Some(g) => g.algebra.clone(),
        None => {
            return Ok(CheckReport::new(check, Verdict::Pass, scope, json!({"empty": true})))
        }
    };
    if claims_cotorsion {
        for (pi, p) in projective_modules(&alg).iter().enumerate() {
            if in_add(p, x, budget)?.is_none() {
                return Ok(CheckReport::fail(
                    check,
                    scope,
                    json!({"projective": pi, "dim_vector": dims(p),
                           "reason": "n-cotorsion class must contain the projectives"}),
                ));
            }
        }
    }
    // syzygy closure of X at degree n
    let mut syzygy_closed = true;
    for g in &x.generators {
        let s = crate::homology::syzygy(g, n)?;
        if !s.is_zero() && in_add(&s, x, budget)?.is_none() {
            syzygy_closed = false;
            break;
        }
    }
    let mut ladders_checked = 0usize;
    if syzygy_closed {
        let mut tails = Vec::new();
        for g in &msub.generators {
            match n_special_precover(x, msub, g, n, budget) {
                Ok((seq, rep)) if rep.is_pass() => tails.push(tail_of(&seq)),
                Ok(_) => {}
                Err(e) if construction_failed(&e) => {}
                Err(e) => return Err(e),
            }
        }
        for i in 1..=depth {
            for tail in &tails {
                for (gi, g) in x.generators.iter().enumerate() {
                    ladders_checked += 1;
                    if !ext_ladder_exact(g, tail, n * i)? {
                        return Ok(CheckReport::fail(
                            check,
                            scope,
                            json!({"generator": gi, "ext_degree": n * i,
                                   "reason": "higher ladder of a certified tail is inexact"}),
                        ));
                    }
                }
            }
        }
    }
    Ok(CheckReport::new(
        check,
        Verdict::Pass,
        scope,
        json!({
            "additive_and_summand_closed": "automatic for a generator-list subcategory",
            "projectives_contained": claims_cotorsion,
            "syzygy_closed": syzygy_closed,
            "higher_ladders_checked": ladders_checked,
        }),
    ))
}

/// The Ext-vanishing route to an n-cotorsion certificate: Ext^n(X, X) = 0
/// plus a classical special precover 0 → y → x → u → 0 with Ext¹(X, y) = 0
/// for every universe member; optionally verifies that every Msub
/// generator lies in the Ext¹-perpendicular class of X (split-sequence
/// membership in the cotorsion-free side).
pub fn ext_vanishing_path(
    x: &Subcat,
    msub: &Subcat,
    u: &Universe,
    n: usize,
    check_perp_membership: bool,
    budget: &Budget,
) -> Result<CheckReport> {
    let check = "ext_vanishing_path";
    for (i, a) in x.generators.iter().enumerate() {
        for (j, b) in x.generators.iter().enumerate() {
            let d = ext_dim(a, b, n)?;
            if d != 0 {
                return Ok(CheckReport::fail(
                    check,
                    u.scope(),
                    json!({"pair": [i, j], "ext_degree": n, "ext_dim": d}),
                ));
            }
        }
    }
    for (ui, um) in u.indecomposables.iter().enumerate() {
        let ar = right_approx_forced(x, um, true, budget)?;
        if !ar.surjective {
            return Ok(CheckReport::new(
                check,
                Verdict::Inconclusive,
                u.scope(),
                json!({"module": ui, "reason": "no surjective approximation: the classical \
                       precover construction does not apply"}),
            ));
        }
        let (y, _) = kernel(&ar.map);
        for (gi, g) in x.generators.iter().enumerate() {
            if ext_dim(g, &y, 1)? != 0 {
                return Ok(CheckReport::new(
                    check,
                    Verdict::Inconclusive,
                    u.scope(),
                    json!({"module": ui, "generator": gi,
                           "reason": "constructed kernel has nonvanishing Ext¹ from X"}),
                ));
            }
        }
    }
    let mut perp_membership = Value::Null;
    if check_perp_membership {
        for (mi, m) in msub.generators.iter().enumerate() {
            for (gi, g) in x.generators.iter().enumerate() {
                if ext_dim(g, m, 1)? != 0 {
                    return Ok(CheckReport::fail(
                        check,
                        u.scope(),
                        json!({"msub_generator": mi, "x_generator": gi,
                               "reason": "Msub generator outside the Ext¹-perpendicular class"}),
                    ));
                }
            }
        }
        perp_membership = json!("every Msub generator lies in the Ext¹-perpendicular class");
    }
    Ok(CheckReport::new(
        check,
        u.pass_verdict(),
        u.scope(),
        json!({
            "ext_vanishing": format!("Ext^{n}(X, X) = 0 on all generator pairs"),
            "special_precovers": "classical short special precover built for every universe member",
            "perp_membership": perp_membership,
        }),
    ))
}

// ---------------------------------------------------------------------------
// Left closure under n-extensions, cover experiment
// ---------------------------------------------------------------------------

/// For every ordered generator pair (x, x′) of X and every degree-n Ext
/// class from x to x′ (enumerated exhaustively over the prime field),
/// builds a representative with middle terms in add(Msub),
/// almost-minimalizes it, and tests that the leftmost middle term stays
/// in add(X).
pub fn is_left_closed_under_n_extensions(
    x: &Subcat,
    msub: &Subcat,
    n: usize,
    budget: &Budget,
) -> Result<CheckReport> {
    let check = "is_left_closed_under_n_extensions";
    let scope = "all Ext classes between generator pairs".to_string();
    let mut classes_checked = 0usize;
    for (ai, a) in x.generators.iter().enumerate() {
        for (bi, b) in x.generators.iter().enumerate() {
            let res = min_projective_resolution(a, n + 1)?;
            let es = ExtSpace::new(&res, b, n)?;
            let d = es.dim();
            if d == 0 {
                continue;
            }
            let p = a.field().modulus();
            if !budget.can_enumerate(p, d) {
                return Err(Error::EnumerationTooLarge(format!(
                    "Ext space of dimension {d} over GF({p}) exceeds the enumeration cap"
                )));
            }
            for class in enumerate_vectors(p, d) {
                classes_checked += 1;
                let rep = ext_class_representative(msub, a, b, &class, &es, n, budget)?;
                let min_seq =
                    crate::approx::almost_minimalize(&rep, Some((&es, &class)), budget)?;
                let leftmost_middle = &min_seq.modules[1];
                if in_add(leftmost_middle, x, budget)?.is_none() {
                    return Ok(CheckReport::fail(
                        check,
                        scope,
                        json!({"pair": [ai, bi], "class": class,
                               "leftmost_middle_dim_vector": dims(leftmost_middle)}),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::new(check, Verdict::Pass, scope, json!({"classes_checked": classes_checked})))
}

/// Cover-to-exactness experiment: compute the right-minimal surjective
/// X-approximation of m (NotApplicable when no surjection from add(X)
/// exists), take its n-kernel in add(Msub), and assert that the tail's
/// Ext ladders against X are exact. Under the verified hypotheses a Fail
/// would falsify the underlying theorem, so it is escalated as a
/// soundness alarm.
pub fn wakamatsu_check(
    x: &Subcat,
    msub: &Subcat,
    m: &Module,
    n: usize,
    budget: &Budget,
) -> Result<CheckReport> {
    let check = "wakamatsu_check";
    let scope = "single module against the generators of X".to_string();
    if in_add(m, msub, budget)?.is_none() {
        return Ok(CheckReport::new(
            check,
            Verdict::NotApplicable,
            scope,
            json!({"reason": "the module lies outside add(Msub), where the statement lives"}),
        ));
    }
    let taut = right_approx(x, m);
    let cover = match right_minimalize(&taut, budget) {
        Ok(f) => f,
        Err(Error::MinimalityInconclusive(_)) => taut,
        Err(e) => return Err(e),
    };
    if !cover.is_surjective() {
        return Ok(CheckReport::new(
            check,
            Verdict::NotApplicable,
            scope,
            json!({"reason": "no surjective approximation from add(X) exists"}),
        ));
    }
    let seq = n_kernel_in(msub, &cover, n, budget, true)?;
    let tail = tail_of(&seq);
    let inner = is_in_x_exact_n(x, &tail, n)?;
    if inner.is_pass() {
        Ok(CheckReport::new(
            check,
            Verdict::Pass,
            scope,
            json!({
                "cover_source_dim_vector": dims(&cover.source),
                "sequence_dim_vectors": seq.modules.iter().map(|m| m.dim_vector.clone()).collect::<Vec<_>>(),
            }),
        ))
    } else {
        Ok(CheckReport::fail(
            check,
            scope,
            json!({"soundness_alarm": "cover tail is not X-exact — this contradicts the \
                   cover-to-exactness theorem and indicates a bug",
                   "detail": inner.counterexample}),
        ))
    }
}

// ---------------------------------------------------------------------------
// Wide subcategories
// ---------------------------------------------------------------------------

/// Is W a wide subcategory of add(Msub)? (i) every morphism between
/// generators admits an n-kernel and n-cokernel with all terms in add(W)
/// — computed with approximations preferring add(W) and falling back to
/// add(Msub); (ii) every degree-n Ext class with ends in W is represented
/// by a sequence with all terms in add(W). A failure of the W-restricted
/// construction in (ii) is Inconclusive, not a refutation, because the
/// definition quantifies existentially over equivalent sequences.
pub fn is_wide(w: &Subcat, msub: &Subcat, n: usize, budget: &Budget) -> Result<CheckReport> {
    let check = "is_wide";
    let scope = "all morphisms and Ext classes between generator pairs".to_string();
    let mut morphisms_checked = 0usize;
    let mut inconclusive: Option<Value> = None;
    for (ai, a) in w.generators.iter().enumerate() {
        for (bi, b) in w.generators.iter().enumerate() {
            let basis = hom_basis(a, b);
            let d = basis.len();
            let p = a.field().modulus();
            if d > 0 && !budget.can_enumerate(p, d) {
                return Err(Error::EnumerationTooLarge(format!(
                    "Hom space of dimension {d} over GF({p}) exceeds the enumeration cap"
                )));
            }
            let coeff_sets: Vec<Vec<u64>> = if d == 0 {
                vec![vec![]]
            } else {
                enumerate_vectors(p, d).collect()
            };
            for coeffs in coeff_sets {
                morphisms_checked += 1;
                let f = combo_map(&basis, &coeffs, a, b);
                let kseq = match n_kernel_in(w, &f, n, budget, false) {
                    Ok(s) => s,
                    Err(Error::ApproxNotSurjective(_)) => {
                        n_kernel_in(msub, &f, n, budget, false)?
                    }
                    Err(e) => return Err(e),
                };
                for (ti, term) in kseq.modules[..n].iter().enumerate() {
                    if !term.is_zero() && in_add(term, w, budget)?.is_none() {
                        return Ok(CheckReport::fail(
                            check,
                            scope,
                            json!({"pair": [ai, bi], "morphism": coeffs, "kernel_term": ti,
                                   "dim_vector": dims(term)}),
                        ));
                    }
                }
                let cseq = match n_cokernel_in(w, &f, n, budget, false) {
                    Ok(s) => s,
                    Err(Error::ApproxNotSurjective(_)) => {
                        n_cokernel_in(msub, &f, n, budget, false)?
                    }
                    Err(e) => return Err(e),
                };
                for (ti, term) in cseq.modules[2..].iter().enumerate() {
                    if !term.is_zero() && in_add(term, w, budget)?.is_none() {
                        return Ok(CheckReport::fail(
                            check,
                            scope,
                            json!({"pair": [ai, bi], "morphism": coeffs, "cokernel_term": ti,
                                   "dim_vector": dims(term)}),
                        ));
                    }
                }
            }
            // (ii) representatives with all terms in add(W)
            let res = min_projective_resolution(a, n + 1)?;
            let es = ExtSpace::new(&res, b, n)?;
            let ed = es.dim();
            if ed == 0 {
                continue;
            }
            if !budget.can_enumerate(p, ed) {
                return Err(Error::EnumerationTooLarge(format!(
                    "Ext space of dimension {ed} over GF({p}) exceeds the enumeration cap"
                )));
            }
            for class in enumerate_vectors(p, ed) {
                match ext_class_representative(w, a, b, &class, &es, n, budget) {
                    Ok(_) => {}
                    Err(e) if construction_failed(&e) => {
                        inconclusive.get_or_insert(json!({
                            "pair": [ai, bi], "class": class,
                            "reason": format!("W-restricted representative construction failed: {e}"),
                        }));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    if let Some(diag) = inconclusive {
        return Ok(CheckReport::new(check, Verdict::Inconclusive, scope, diag));
    }
    Ok(CheckReport::new(
        check,
        Verdict::Pass,
        scope,
        json!({"morphisms_checked": morphisms_checked}),
    ))
}

/// Experimental confirmation that a wide subcategory containing the
/// projectives is an n-cotorsion class: for every universe member inside
/// add(Msub), the right-minimal W-approximation is surjective (covering)
/// and its n-kernel tail is W-exact.
pub fn wide_implies_cotorsion_experiment(
    w: &Subcat,
    msub: &Subcat,
    u: &Universe,
    n: usize,
    budget: &Budget,
) -> Result<CheckReport> {
    let check = "wide_implies_cotorsion_experiment";
    let alg = match msub.generators.first() {
        Some(g) => g.algebra.clone(),
        None => {
            return Ok(CheckReport::new(check, Verdict::Pass, u.scope(), json!({"empty": true})))
        }
    };
    for (pi, p) in projective_modules(&alg).iter().enumerate() {
        if in_add(p, w, budget)?.is_none() {
            return Ok(CheckReport::fail(
                check,
                u.scope(),
                json!({"projective": pi, "dim_vector": dims(p),
                       "reason": "precondition: W must contain the projectives"}),
            ));
        }
    }
    let mut covered = 0usize;
    for (ui, um) in u.indecomposables.iter().enumerate() {
        if in_add(um, msub, budget)?.is_none() {
            continue;
        }
        covered += 1;
        let taut = right_approx(w, um);
        let cover = match right_minimalize(&taut, budget) {
            Ok(f) => f,
            Err(Error::MinimalityInconclusive(_)) => taut,
            Err(e) => return Err(e),
        };
        if !cover.is_surjective() {
            return Ok(CheckReport::fail(
                check,
                u.scope(),
                json!({"module": ui, "dim_vector": dims(um), "reason": "not covering"}),
            ));
        }
        let seq = n_kernel_in(msub, &cover, n, budget, true)?;
        let tail = tail_of(&seq);
        for (gi, g) in w.generators.iter().enumerate() {
            if !ext_ladder_exact(g, &tail, n)? {
                return Ok(CheckReport::fail(
                    check,
                    u.scope(),
                    json!({"module": ui, "w_generator": gi, "reason": "cover tail not W-exact"}),
                ));
            }
        }
    }
    Ok(CheckReport::new(
        check,
        u.pass_verdict(),
        u.scope(),
        json!({"members_covered": covered,
               "conclusion": "n-special precovering, hence an n-cotorsion class"}),
    ))
}

// ---------------------------------------------------------------------------
// Restriction of scalars
// ---------------------------------------------------------------------------

/// Inflation along a quotient Λ → Λ′ by extra admissible relations over
/// the same quiver: the vertex spaces and arrow matrices are unchanged,
/// re-validated against Λ's relation set.
pub fn restrict_scalars(lam: &Arc<Algebra>, m: &Module) -> Result<Module> {
    if lam.quiver != m.algebra.quiver {
        return Err(Error::InvalidInput("restriction of scalars needs the same quiver".into()));
    }
    if lam.field.modulus() != m.algebra.field.modulus() {
        return Err(Error::InvalidInput("restriction of scalars needs the same field".into()));
    }
    Module::new(lam.clone(), m.dim_vector.clone(), m.arrow_mats.clone())
}

/// Dimension-level comparison of Ext^k over the quotient algebra and over
/// the big algebra after inflation. This is an explicitly partial proxy:
/// equal dimensions do not certify that the induced comparison map is
/// bijective, but unequal dimensions refute it.
pub fn ext_compare(
    lam: &Arc<Algebra>,
    m1: &Module,
    m2: &Module,
    k: usize,
) -> Result<CheckReport> {
    let check = "ext_compare";
    let scope = "single module pair (dimension-level proxy)".to_string();
    let native = ext_dim(m1, m2, k)?;
    let r1 = restrict_scalars(lam, m1)?;
    let r2 = restrict_scalars(lam, m2)?;
    let inflated = ext_dim(&r1, &r2, k)?;
    let cert = json!({
        "ext_degree": k,
        "dim_over_quotient": native,
        "dim_over_big_algebra": inflated,
        "proxy": "dimension-level only: equality does not certify the comparison map is bijective",
    });
    if native == inflated {
        Ok(CheckReport::new(check, Verdict::PassRelative, scope, cert))
    } else {
        Ok(CheckReport {
            check: check.into(),
            verdict: Verdict::Fail,
            scope,
            certificate: cert.clone(),
            counterexample: cert,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::contractible_padding;
    use crate::linalg::PrimeField;
    use crate::quiver::{build_algebra, Path, Quiver, Relation};

    fn a3_rad2(p: u64) -> Arc<Algebra> {
        let rel = Relation::monomial(Path { source: 0, arrows: vec![0, 1] });
        build_algebra(Quiver::linear(3), vec![rel], 3, PrimeField::new(p).unwrap()).unwrap()
    }

    fn dual_numbers(p: u64) -> Arc<Algebra> {
        let q = Quiver::new(1, vec![(0, 0)]).unwrap();
        let rel = Relation::monomial(Path { source: 0, arrows: vec![0, 0] });
        build_algebra(q, vec![rel], 2, PrimeField::new(p).unwrap()).unwrap()
    }

    /// The five indecomposables of the linear three-vertex algebra with
    /// radical square zero: S0, S1, S2, P0, P1 (P2 = S2).
    fn five_indecomposables(alg: &Arc<Algebra>) -> Vec<Module> {
        let ps = projective_modules(alg);
        vec![
            Module::simple(alg.clone(), 0),
            Module::simple(alg.clone(), 1),
            Module::simple(alg.clone(), 2),
            ps[0].clone(),
            ps[1].clone(),
        ]
    }

    fn universe(alg: &Arc<Algebra>) -> Universe {
        Universe {
            algebra: alg.clone(),
            indecomposables: five_indecomposables(alg),
            completeness: Completeness::Complete,
        }
    }

    /// add(S0 ⊕ S2 ⊕ P0 ⊕ P1): the 2-cluster tilting subcategory.
    fn two_ct(alg: &Arc<Algebra>) -> Subcat {
        let inds = five_indecomposables(alg);
        Subcat::from_indecomposables_unchecked(vec![
            inds[0].clone(),
            inds[2].clone(),
            inds[3].clone(),
            inds[4].clone(),
        ])
    }

    fn prj(alg: &Arc<Algebra>) -> Subcat {
        Subcat::from_indecomposables_unchecked(projective_modules(alg))
    }

    #[test]
    fn two_cluster_tilting_passes() {
        let alg = a3_rad2(2);
        let u = universe(&alg);
        let rep = is_n_cluster_tilting(&u, &two_ct(&alg), 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn projectives_are_not_two_cluster_tilting() {
        let alg = a3_rad2(2);
        let u = universe(&alg);
        let rep = is_n_cluster_tilting(&u, &prj(&alg), 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        // the witness is S0: perpendicular on both sides but not a member
        assert_eq!(rep.counterexample["module"], 0);
    }

    #[test]
    fn semisimple_all_simples_cluster_tilt() {
        let q = Quiver::new(2, vec![]).unwrap();
        let alg = build_algebra(q, vec![], 2, PrimeField::new(3).unwrap()).unwrap();
        let simples = vec![Module::simple(alg.clone(), 0), Module::simple(alg.clone(), 1)];
        let u = Universe {
            algebra: alg.clone(),
            indecomposables: simples.clone(),
            completeness: Completeness::Complete,
        };
        let cat = Subcat::from_indecomposables_unchecked(simples);
        for n in 1..=3 {
            let rep = is_n_cluster_tilting(&u, &cat, n, &Budget::default()).unwrap();
            assert_eq!(rep.verdict, Verdict::Pass);
        }
    }

    #[test]
    fn declared_universe_downgrades_to_pass_relative() {
        let alg = a3_rad2(2);
        let mut u = universe(&alg);
        u.completeness = Completeness::Declared;
        let rep = is_n_cluster_tilting(&u, &two_ct(&alg), 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::PassRelative);
    }

    #[test]
    fn nz_closure_of_the_pair() {
        let alg = a3_rad2(2);
        let rep = is_nz(&two_ct(&alg), 2, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        // projectives: syzygies vanish
        let rep = is_nz(&prj(&alg), 2, 3, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn nz_holds_for_simple_over_dual_numbers_but_not_cluster_tilting() {
        let alg = dual_numbers(2);
        let s = Module::simple(alg.clone(), 0);
        let cat = Subcat::from_indecomposables_unchecked(vec![s.clone()]);
        let rep = is_nz(&cat, 2, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let u = Universe {
            algebra: alg.clone(),
            indecomposables: vec![s, projective_modules(&alg).pop().unwrap()],
            completeness: Completeness::Complete,
        };
        let rep = is_n_cluster_tilting(&u, &cat, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
    }

    #[test]
    fn special_precover_of_the_deep_simple() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let s0 = Module::simple(alg.clone(), 0);
        let (seq, rep) =
            n_special_precover(&prj(&alg), &cat, &s0, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        // 0 → S2 → P1 → P0 → S0 → 0
        let dv: Vec<Vec<usize>> = seq.modules.iter().map(|m| m.dim_vector.clone()).collect();
        assert_eq!(dv, vec![
            vec![0, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 0],
            vec![1, 0, 0],
        ]);
    }

    #[test]
    fn precover_fails_without_surjection() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let s0 = Module::simple(alg.clone(), 0);
        let s2 = Module::simple(alg.clone(), 2);
        let x = Subcat::from_indecomposables_unchecked(vec![s0]);
        let err = n_special_precover(&x, &cat, &s2, 2, &Budget::default()).unwrap_err();
        assert!(matches!(err, Error::ApproxNotSurjective(_)));
    }

    #[test]
    fn member_of_x_gets_split_precover() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let ps = projective_modules(&alg);
        let (seq, rep) =
            n_special_precover(&prj(&alg), &cat, &ps[0], 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(seq.modules[..2].iter().all(Module::is_zero));
    }

    #[test]
    fn exactness_ladder_detects_nonvanishing_ext() {
        let alg = a3_rad2(2);
        let s0 = Module::simple(alg.clone(), 0);
        let s2 = Module::simple(alg.clone(), 2);
        let x = Subcat::from_indecomposables_unchecked(vec![s0]);
        // tail S2 → 0 at n = 2: Ext²(S0, S2) = 1 cannot inject into 0
        let z = Module::zero(alg.clone());
        let tail = Tail {
            modules: vec![s2.clone(), z.clone()],
            maps: vec![ModuleMap::zero(&s2, &z)],
        };
        let rep = is_in_x_exact_n(&x, &tail, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        // against the projectives every ladder is zero, hence exact
        let rep = is_in_x_exact_n(&prj(&alg), &tail, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn left_perp_excludes_the_obstructed_generator() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let s0 = Module::simple(alg.clone(), 0);
        let (seq, _) = n_special_precover(&prj(&alg), &cat, &s0, 2, &Budget::default()).unwrap();
        let tail = tail_of(&seq); // S2 → P1
        let perp = left_perp_of_family(&cat, &[tail], 2).unwrap();
        assert_eq!(perp.generators.len(), 3);
        assert!(perp.generators.iter().all(|g| g.dim_vector != vec![1, 0, 0]));
        // the empty family keeps everything
        let all = left_perp_of_family(&cat, &[], 2).unwrap();
        assert_eq!(all.generators.len(), 4);
    }

    #[test]
    fn perp_monotone_under_family_growth() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let s0 = Module::simple(alg.clone(), 0);
        let (seq, _) = n_special_precover(&prj(&alg), &cat, &s0, 2, &Budget::default()).unwrap();
        let t1 = tail_of(&seq);
        let pad = contractible_padding(&cat.generators[1], &cat.generators[0], 2);
        let t2 = tail_of(&pad);
        let small = left_perp_of_family(&cat, &[t1.clone()], 2).unwrap();
        let big = left_perp_of_family(&cat, &[t1, t2], 2).unwrap();
        assert!(big.generators.len() <= small.generators.len());
    }

    #[test]
    fn projectives_are_n_cotorsion_by_theorem() {
        let alg = a3_rad2(2);
        let u = universe(&alg);
        let rep = is_n_cotorsion(
            &prj(&alg),
            &two_ct(&alg),
            &u,
            2,
            CotorsionStrategy::Theorem,
            &[],
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn whole_subcategory_is_n_cotorsion() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let u = universe(&alg);
        let rep = is_n_cotorsion(
            &cat,
            &cat,
            &u,
            2,
            CotorsionStrategy::Theorem,
            &[],
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let rep = is_n_cotorsion(
            &cat,
            &cat,
            &u,
            2,
            CotorsionStrategy::Relative,
            &[],
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(rep.verdict, Verdict::PassRelative);
    }

    #[test]
    fn relative_strategy_on_non_precovering_class() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let u = universe(&alg);
        let s0 = Module::simple(alg.clone(), 0);
        let x = Subcat::from_indecomposables_unchecked(vec![s0]);
        let rep = is_n_cotorsion(
            &x,
            &cat,
            &u,
            2,
            CotorsionStrategy::Relative,
            &[],
            &Budget::default(),
        )
        .unwrap();
        // the only certifiable tails are trivial, so ⊥F is everything and
        // add(S0) sits strictly inside it
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn theorem_pass_means_relative_never_fails() {
        // never-fire alarm: whenever the theorem strategy certifies X, the
        // relative strategy must not refute it
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let u = universe(&alg);
        for x in [prj(&alg), cat.clone()] {
            let thm = is_n_cotorsion(
                &x, &cat, &u, 2, CotorsionStrategy::Theorem, &[], &Budget::default(),
            )
            .unwrap();
            if thm.is_pass() {
                let rel = is_n_cotorsion(
                    &x, &cat, &u, 2, CotorsionStrategy::Relative, &[], &Budget::default(),
                )
                .unwrap();
                assert_ne!(rel.verdict, Verdict::Fail);
            }
        }
    }

    #[test]
    fn audit_catches_missing_projective() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let ps = projective_modules(&alg);
        let rep = basic_properties_audit(&prj(&alg), &cat, 2, 2, true, &Budget::default())
            .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let x = Subcat::from_indecomposables_unchecked(vec![ps[0].clone(), ps[1].clone()]);
        let rep = basic_properties_audit(&x, &cat, 2, 1, true, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.counterexample["dim_vector"], json!([0, 0, 1]));
    }

    #[test]
    fn ext_vanishing_route_for_projectives() {
        let alg = a3_rad2(2);
        let u = universe(&alg);
        let rep =
            ext_vanishing_path(&prj(&alg), &two_ct(&alg), &u, 2, true, &Budget::default())
                .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn ext_vanishing_route_fails_on_self_extension() {
        let alg = dual_numbers(2);
        let s = Module::simple(alg.clone(), 0);
        let u = Universe {
            algebra: alg.clone(),
            indecomposables: vec![s.clone(), projective_modules(&alg).pop().unwrap()],
            completeness: Completeness::Complete,
        };
        let x = Subcat::from_indecomposables_unchecked(vec![s.clone()]);
        let m = Subcat::from_indecomposables_unchecked(vec![s]);
        let rep = ext_vanishing_path(&x, &m, &u, 2, false, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.counterexample["ext_dim"], 1);
    }

    #[test]
    fn left_closure_for_projectives_and_whole_subcategory() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let rep =
            is_left_closed_under_n_extensions(&prj(&alg), &cat, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass); // vacuous: Ext² between projectives is 0
        assert_eq!(rep.certificate["classes_checked"], 0);
        let rep = is_left_closed_under_n_extensions(&cat, &cat, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.certificate["classes_checked"].as_u64().unwrap() > 0);
    }

    #[test]
    fn cover_experiment_on_the_deep_simple() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let s0 = Module::simple(alg.clone(), 0);
        let rep = wakamatsu_check(&prj(&alg), &cat, &s0, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.certificate["cover_source_dim_vector"], json!([1, 1, 0]));
    }

    #[test]
    fn cover_experiment_not_applicable_without_surjection() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let s0 = Module::simple(alg.clone(), 0);
        let s2 = Module::simple(alg.clone(), 2);
        let x = Subcat::from_indecomposables_unchecked(vec![s0]);
        let rep = wakamatsu_check(&x, &cat, &s2, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn cover_experiment_never_fails_across_the_universe() {
        // never-fire alarm: under the verified hypotheses the cover tail
        // is always X-exact
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let u = universe(&alg);
        for x in [prj(&alg), cat.clone()] {
            for m in &u.indecomposables {
                let rep = wakamatsu_check(&x, &cat, m, 2, &Budget::default()).unwrap();
                assert_ne!(rep.verdict, Verdict::Fail);
            }
        }
    }

    #[test]
    fn wide_check_on_whole_subcategory_and_projectives() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let rep = is_wide(&cat, &cat, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        // the projectives are NOT wide here: the 2-cokernel of the radical
        // map P1 → P0 necessarily passes through S0, which escapes add(prj)
        let rep = is_wide(&prj(&alg), &cat, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.counterexample["dim_vector"], json!([1, 0, 0]));
        // the empty subcategory is vacuously wide
        let empty = Subcat::from_indecomposables_unchecked(vec![]);
        let rep = is_wide(&empty, &cat, 2, &Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn wide_cover_experiment_matches_the_projective_remark() {
        let alg = a3_rad2(2);
        let cat = two_ct(&alg);
        let u = universe(&alg);
        let rep =
            wide_implies_cotorsion_experiment(&prj(&alg), &cat, &u, 2, &Budget::default())
                .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let rep = wide_implies_cotorsion_experiment(&cat, &cat, &u, 2, &Budget::default())
            .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        // missing projective: precondition failure with witness
        let ps = projective_modules(&alg);
        let x = Subcat::from_indecomposables_unchecked(vec![ps[0].clone(), ps[1].clone()]);
        let rep = wide_implies_cotorsion_experiment(&x, &cat, &u, 2, &Budget::default())
            .unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
    }

    #[test]
    fn restriction_of_scalars_inflates_and_compares_ext() {
        let p = PrimeField::new(2).unwrap();
        let big = build_algebra(Quiver::linear(3), vec![], 3, p).unwrap();
        let small = a3_rad2(2);
        let s0 = Module::simple(small.clone(), 0);
        let s2 = Module::simple(small.clone(), 2);
        let inflated = restrict_scalars(&big, &s0).unwrap();
        assert_eq!(inflated.dim_vector, s0.dim_vector);
        // Ext²(S0, S2) = 1 over the radical-square-zero quotient but 0 over
        // the hereditary algebra: the dimension proxy refutes bijectivity
        let rep = ext_compare(&big, &s0, &s2, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.certificate["dim_over_quotient"], 1);
        assert_eq!(rep.certificate["dim_over_big_algebra"], 0);
        // identity quotient: dimensions agree, flagged as a proxy
        let rep = ext_compare(&small, &s0, &s2, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::PassRelative);
        assert!(rep.certificate["proxy"].as_str().unwrap().contains("dimension-level"));
    }

    #[test]
    fn report_json_shape_is_stable() {
        let alg = a3_rad2(2);
        let rep = is_nz(&prj(&alg), 2, 1, &Budget::default()).unwrap();
        let v = rep.to_json(42, 0);
        for key in ["check", "verdict", "scope", "certificate", "counterexample", "seed", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "missing key {key}");
        }
        assert_eq!(v["verdict"], "Pass");
        assert_eq!(v["seed"], 42);
    }
}
