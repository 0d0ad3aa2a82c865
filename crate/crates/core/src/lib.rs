//! Exact workbench for higher homological algebra over bound quiver
//! algebras: n-cluster tilting subcategories, n-exact sequences,
//! n-cotorsion classes, n-special precovers and wide subcategories,
//! all decided by finite linear algebra over GF(p) with reproducible
//! certificates.

pub mod approx;
pub mod catalog;
pub mod checks;
pub mod config;
pub mod decompose;
pub mod error;
pub mod gfpoly;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod sampling;

pub use approx::{
    ext_class_representative, is_contractible, is_n_exact, minimal_left_approx,
    minimal_right_approx, n_cokernel_in, n_kernel_in, n_pushout, NSequence,
};
pub use catalog::{
    brute_force_nct_search, interval_module, nakayama_universe, semisimple_universe, NakayamaSpec,
};
pub use checks::{
    basic_properties_audit, ext_compare, ext_vanishing_path, is_left_closed_under_n_extensions,
    is_n_cluster_tilting, is_n_cotorsion, is_nz, is_wide, n_special_precover, restrict_scalars,
    wakamatsu_check, wide_implies_cotorsion_experiment, CheckReport, Completeness,
    CotorsionStrategy, Tail, Universe, Verdict,
};
pub use config::Budget;
pub use decompose::{decompose, in_add, is_isomorphic, Decomposition, Subcat};
pub use error::{Error, Result};
pub use homology::{ext_dim, min_projective_resolution, projective_cover, ExtSpace, Resolution};
pub use linalg::{Mat, PrimeField};
pub use module::{Module, ModuleMap};
pub use quiver::{build_algebra, Algebra, Path, Quiver, Relation};
