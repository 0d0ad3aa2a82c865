//! Seeded randomized generators for fuzz-style property tests: random
//! invertible basis changes, random members of add(C), term-wise direct
//! sums of sequences, and random Ext-class realizations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::NSequence;
use crate::error::Result;
use crate::linalg::{inverse, Mat};
use crate::module::{direct_sum, Module, ModuleMap};

/// Deterministic RNG for a given seed.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random invertible d×d matrix (rejection sampling).
pub fn random_invertible(d: usize, field: crate::linalg::PrimeField, rng: &mut ChaCha8Rng) -> Mat {
    let p = field.modulus();
    loop {
        let mut m = Mat::zero(d, d, field);
        for r in 0..d {
            for c in 0..d {
                m.set(r, c, rng.gen_range(0..p));
            }
        }
        if inverse(&m).is_some() {
            return m;
        }
    }
}

/// Conjugate a module by random basis changes at every vertex; returns the
/// shuffled module together with the isomorphism original → shuffled.
pub fn shuffle_basis(m: &Module, rng: &mut ChaCha8Rng) -> (Module, ModuleMap) {
    let fld = m.field();
    let ts: Vec<Mat> = m.dim_vector.iter().map(|&d| random_invertible(d, fld, rng)).collect();
    let tinvs: Vec<Mat> = ts.iter().map(|t| inverse(t).expect("invertible")).collect();
    let q = &m.algebra.quiver;
    let arrow_mats: Vec<Mat> = q
        .arrows
        .iter()
        .zip(&m.arrow_mats)
        .map(|(a, mat)| ts[a.target].mul(mat).mul(&tinvs[a.source]))
        .collect();
    let shuffled = Module {
        algebra: m.algebra.clone(),
        dim_vector: m.dim_vector.clone(),
        arrow_mats,
    };
    let iso = ModuleMap { source: m.clone(), target: shuffled.clone(), vertex_mats: ts };
    debug_assert!(iso.validate().is_ok());
    (shuffled, iso)
}

/// A random multiset of generators (with multiplicity), its direct sum,
/// and the chosen index multiset (sorted).
pub fn random_add_member(
    generators: &[Module],
    max_summands: usize,
    rng: &mut ChaCha8Rng,
) -> (Module, Vec<usize>) {
    let count = rng.gen_range(1..=max_summands);
    let mut picks: Vec<usize> = (0..count).map(|_| rng.gen_range(0..generators.len())).collect();
    picks.sort_unstable();
    let parts: Vec<Module> = picks.iter().map(|&i| generators[i].clone()).collect();
    (direct_sum(&parts).0, picks)
}

/// Term-wise direct sum of two equal-length sequences.
pub fn sum_sequences(a: &NSequence, b: &NSequence) -> Result<NSequence> {
    assert_eq!(a.modules.len(), b.modules.len());
    let mut modules = Vec::new();
    let mut incls = Vec::new();
    for (ma, mb) in a.modules.iter().zip(&b.modules) {
        let (sum, maps) = direct_sum(&[ma.clone(), mb.clone()]);
        modules.push(sum);
        incls.push(maps);
    }
    let mut maps = Vec::new();
    for i in 0..a.maps.len() {
        let (ia, ib) = (&incls[i], &incls[i + 1]);
        let f = ia[0].1.then(&a.maps[i]).then(&ib[0].0).add(&ia[1].1.then(&b.maps[i]).then(&ib[1].0));
        maps.push(f);
    }
    Ok(NSequence { modules, maps })
}

/// A random linear combination of a hom basis.
pub fn random_hom(
    basis: &[ModuleMap],
    src: &Module,
    tgt: &Module,
    rng: &mut ChaCha8Rng,
) -> ModuleMap {
    let p = src.field().modulus();
    let mut acc = ModuleMap::zero(src, tgt);
    for b in basis {
        let c = rng.gen_range(0..p);
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}
