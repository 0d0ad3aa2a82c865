//! JSON file formats: algebra descriptions, module descriptions, and
//! (n+2)-term sequences. All matrices are written as row lists over GF(p);
//! serialization is deterministic (sorted keys, stable ordering).

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path as FsPath;
use std::sync::Arc;

use crate::approx::NSequence;
use crate::error::{Error, Result};
use crate::linalg::{Mat, PrimeField};
use crate::module::{Module, ModuleMap};
use crate::quiver::{build_algebra, Algebra, Path, Quiver, Relation};

/// Algebra description: `{"p", "L", "vertices", "arrows": [[id, src, tgt]...],
/// "relations": [[[coeff, [arrow ids]]...]...]}` with arrow-id lists in
/// application order (innermost first).
#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub p: u64,
    #[serde(rename = "L")]
    pub l: usize,
    pub vertices: usize,
    pub arrows: Vec<(u64, usize, usize)>,
    #[serde(default)]
    pub relations: Vec<Vec<(u64, Vec<u64>)>>,
}

/// Module description: `{"dim_vector": [..], "arrows": {"<arrow id>":
/// [[row]...]}}`. Arrows whose matrix is zero (or empty) may be omitted.
#[derive(Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dim_vector: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<u64>>>,
}

/// Sequence description: the ordered module list (left to right) and one
/// map per adjacent pair, each map a list of per-vertex row-list matrices.
#[derive(Debug, Serialize, Deserialize)]
pub struct SequenceFile {
    pub modules: Vec<ModuleFile>,
    pub maps: Vec<Vec<Vec<Vec<u64>>>>,
}

pub fn algebra_to_file(alg: &Algebra) -> AlgebraFile {
    AlgebraFile {
        p: alg.field.modulus(),
        l: alg.nilpotency_bound,
        vertices: alg.quiver.vertex_count,
        arrows: alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (i as u64, a.source, a.target))
            .collect(),
        relations: alg
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, path)| (*c, path.arrows.iter().map(|&a| a as u64).collect()))
                    .collect()
            })
            .collect(),
    }
}

pub fn algebra_from_file(file: &AlgebraFile) -> Result<Arc<Algebra>> {
    let field = PrimeField::new(file.p)?;
    // external arrow ids map to positions in the file's arrow list
    let mut id_to_index = BTreeMap::new();
    for (idx, &(id, _, _)) in file.arrows.iter().enumerate() {
        if id_to_index.insert(id, idx).is_some() {
            return Err(Error::InvalidInput(format!("duplicate arrow id {id}")));
        }
    }
    let quiver = Quiver::new(
        file.vertices,
        file.arrows.iter().map(|&(_, s, t)| (s, t)).collect(),
    )?;
    let mut relations = Vec::new();
    for (ri, rel) in file.relations.iter().enumerate() {
        let mut terms = Vec::new();
        for (coeff, ids) in rel {
            let arrows: Vec<usize> = ids
                .iter()
                .map(|id| {
                    id_to_index.get(id).copied().ok_or_else(|| {
                        Error::InvalidInput(format!("relation {ri}: unknown arrow id {id}"))
                    })
                })
                .collect::<Result<_>>()?;
            let source = arrows
                .first()
                .map(|&a| quiver.arrows[a].source)
                .ok_or_else(|| Error::InvalidInput(format!("relation {ri}: empty path")))?;
            terms.push((*coeff, Path { source, arrows }));
        }
        relations.push(Relation { terms });
    }
    build_algebra(quiver, relations, file.l, field)
}

pub fn module_to_file(m: &Module) -> ModuleFile {
    let mut arrows = BTreeMap::new();
    for (i, mat) in m.arrow_mats.iter().enumerate() {
        if mat.is_zero() {
            continue;
        }
        let rows: Vec<Vec<u64>> =
            (0..mat.rows).map(|r| (0..mat.cols).map(|c| mat.at(r, c)).collect()).collect();
        arrows.insert(i.to_string(), rows);
    }
    ModuleFile { dim_vector: m.dim_vector.clone(), arrows }
}

fn mat_from_rows(rows: &[Vec<u64>], expect_rows: usize, expect_cols: usize, field: PrimeField) -> Result<Mat> {
    if rows.is_empty() {
        return Ok(Mat::zero(expect_rows, expect_cols, field));
    }
    if rows.len() != expect_rows || rows.iter().any(|r| r.len() != expect_cols) {
        return Err(Error::InvalidInput(format!(
            "matrix shape mismatch: expected {expect_rows}x{expect_cols}"
        )));
    }
    Ok(Mat::from_rows(rows, field))
}

pub fn module_from_file(file: &ModuleFile, alg: &Arc<Algebra>) -> Result<Module> {
    let q = &alg.quiver;
    if file.dim_vector.len() != q.vertex_count {
        return Err(Error::InvalidInput(format!(
            "dim_vector has {} entries, quiver has {} vertices",
            file.dim_vector.len(),
            q.vertex_count
        )));
    }
    let mut mats = Vec::new();
    for (i, a) in q.arrows.iter().enumerate() {
        let rows = file.dim_vector[a.target];
        let cols = file.dim_vector[a.source];
        let mat = match file.arrows.get(&i.to_string()) {
            Some(rowdata) => mat_from_rows(rowdata, rows, cols, alg.field)?,
            None => Mat::zero(rows, cols, alg.field),
        };
        mats.push(mat);
    }
    Module::new(alg.clone(), file.dim_vector.clone(), mats)
}

fn map_to_rows(f: &ModuleMap) -> Vec<Vec<Vec<u64>>> {
    f.vertex_mats
        .iter()
        .map(|m| (0..m.rows).map(|r| (0..m.cols).map(|c| m.at(r, c)).collect()).collect())
        .collect()
}

pub fn sequence_to_file(seq: &NSequence) -> SequenceFile {
    SequenceFile {
        modules: seq.modules.iter().map(module_to_file).collect(),
        maps: seq.maps.iter().map(map_to_rows).collect(),
    }
}

pub fn sequence_from_file(file: &SequenceFile, alg: &Arc<Algebra>) -> Result<NSequence> {
    let modules: Vec<Module> = file
        .modules
        .iter()
        .map(|m| module_from_file(m, alg))
        .collect::<Result<_>>()?;
    if file.maps.len() + 1 != modules.len() || modules.len() < 3 {
        return Err(Error::InvalidInput("sequence shape mismatch".into()));
    }
    let mut maps = Vec::new();
    for (i, vm) in file.maps.iter().enumerate() {
        let (src, tgt) = (&modules[i], &modules[i + 1]);
        if vm.len() != src.dim_vector.len() {
            return Err(Error::InvalidInput(format!("map {i}: wrong vertex count")));
        }
        let mut vertex_mats = Vec::new();
        for (v, rows) in vm.iter().enumerate() {
            vertex_mats.push(mat_from_rows(rows, tgt.dim_vector[v], src.dim_vector[v], alg.field)?);
        }
        maps.push(ModuleMap::new(src.clone(), tgt.clone(), vertex_mats)?);
    }
    let seq = NSequence { modules, maps };
    seq.validate()?;
    Ok(seq)
}

// --- path-level helpers ----------------------------------------------------

pub fn load_algebra(path: &FsPath) -> Result<Arc<Algebra>> {
    let text = std::fs::read_to_string(path)?;
    let file: AlgebraFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    algebra_from_file(&file)
}

pub fn load_module(path: &FsPath, alg: &Arc<Algebra>) -> Result<Module> {
    let text = std::fs::read_to_string(path)?;
    let file: ModuleFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    module_from_file(&file, alg)
}

pub fn save_sequence(path: &FsPath, seq: &NSequence) -> Result<()> {
    let text = serde_json::to_string_pretty(&sequence_to_file(seq))?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_sequence(path: &FsPath, alg: &Arc<Algebra>) -> Result<NSequence> {
    let text = std::fs::read_to_string(path)?;
    let file: SequenceFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    sequence_from_file(&file, alg)
}
