//! Batch front door: load algebras (catalog names or JSON files), modules
//! and subcategories, run any check, and emit deterministic reports.
//!
//! Exit codes: 0 = Pass/PassRelative, 1 = Fail, 2 = Inconclusive or
//! NotApplicable, 3 = input error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use nhom_core::checks::{CheckReport, Completeness, CotorsionStrategy, Universe, Verdict};
use nhom_core::decompose::{decompose, is_isomorphic, Subcat};
use nhom_core::error::Error;
use nhom_core::quiver::Algebra;
use nhom_core::{Budget, Module};

#[derive(Parser)]
#[command(
    name = "nhom",
    about = "Exact workbench for higher homological checks over bound quiver algebras"
)]
struct Cli {
    /// Random seed recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration cap for exhaustive searches (env: NHOM_ENUMERATION_CAP).
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings (off by default so reports are
    /// byte-identical across runs).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Theorem,
    Relative,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a subcategory is n-cluster tilting over the universe.
    CheckNct {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        n: usize,
    },
    /// Check closure under n-syzygies up to a depth.
    CheckNz {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Print the Ext dimension table of the universe up to a degree.
    ExtTable {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Minimal right approximation of a module by a subcategory.
    Precover {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        module: String,
    },
    /// n-kernel of the minimal surjective approximation, inside add(Msub).
    NKernel {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        msub: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: usize,
        /// Write the resulting sequence to a JSON file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct and certify an n-special precover.
    NSpecialPrecover {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        msub: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify an n-cotorsion class.
    CheckNcotorsion {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        msub: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Strategy::Theorem)]
        strategy: Strategy,
    },
    /// Check left-closure under n-extensions.
    CheckLeftClosed {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        msub: String,
        #[arg(long)]
        n: usize,
    },
    /// Cover-to-exactness check for one module.
    Wakamatsu {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        msub: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: usize,
    },
    /// Decide wideness of a subcategory.
    CheckWide {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        msub: String,
        #[arg(long)]
        n: usize,
    },
    /// Restrict scalars along a quotient and compare Ext dimensions.
    Restrict {
        /// The big algebra Λ (quotient target of the inflation).
        #[arg(long)]
        algebra: String,
        /// The quotient algebra Λ′ the modules live over.
        #[arg(long)]
        quotient: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        module2: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Brute-force search for all n-cluster tilting subcategories.
    OracleSearch {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        n: usize,
    },
}

fn parse_kv(spec: &str) -> Result<std::collections::BTreeMap<String, u64>, Error> {
    let mut out = std::collections::BTreeMap::new();
    for part in spec.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("expected key=value, got '{part}'")))?;
        let v = v
            .parse::<u64>()
            .map_err(|_| Error::InvalidInput(format!("'{v}' is not an integer")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

/// Resolve "nakayama:m=3,l=2,p=2", "semisimple:v=2,p=3", or a JSON file
/// path. Catalog algebras come with complete universes; file algebras get
/// none (checks then run over a declared universe built from the inputs).
fn resolve_algebra(spec: &str) -> Result<(Arc<Algebra>, Option<Universe>), Error> {
    if let Some(rest) = spec.strip_prefix("nakayama:") {
        let kv = parse_kv(rest)?;
        let get = |k: &str| {
            kv.get(k)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("nakayama spec needs {k}=")))
        };
        let (alg, u) = nhom_core::catalog::nakayama_universe(nhom_core::catalog::NakayamaSpec {
            m: get("m")? as usize,
            l: get("l")? as usize,
            p: get("p")?,
        })?;
        return Ok((alg, Some(u)));
    }
    if let Some(rest) = spec.strip_prefix("semisimple:") {
        let kv = parse_kv(rest)?;
        let get = |k: &str| {
            kv.get(k)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("semisimple spec needs {k}=")))
        };
        let (alg, u) = nhom_core::catalog::semisimple_universe(get("v")? as usize, get("p")?)?;
        return Ok((alg, Some(u)));
    }
    let alg = nhom_core::io::load_algebra(std::path::Path::new(spec))?;
    Ok((alg, None))
}

/// Resolve one module name: S<i>, P<i>, I<i> (1-indexed), M[i,j]
/// (1-indexed interval over a linear quiver), or a JSON file path.
fn resolve_module(name: &str, alg: &Arc<Algebra>) -> Result<Module, Error> {
    let name = name.trim();
    let index = |s: &str, kind: &str, count: usize| -> Result<usize, Error> {
        let i = s
            .parse::<usize>()
            .map_err(|_| Error::InvalidInput(format!("bad {kind} index '{s}'")))?;
        if i == 0 || i > count {
            return Err(Error::InvalidInput(format!("{kind}{i} out of range 1..={count}")));
        }
        Ok(i - 1)
    };
    let v = alg.vertex_count();
    if let Some(rest) = name.strip_prefix('S') {
        if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
            return Ok(Module::simple(alg.clone(), index(rest, "S", v)?));
        }
    }
    if let Some(rest) = name.strip_prefix('P') {
        if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
            let ps = nhom_core::module::projective_modules(alg);
            return Ok(ps[index(rest, "P", v)?].clone());
        }
    }
    if let Some(rest) = name.strip_prefix('I') {
        if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
            let is = nhom_core::module::injective_modules(alg);
            return Ok(is[index(rest, "I", v)?].clone());
        }
    }
    if let Some(body) = name.strip_prefix("M[").and_then(|s| s.strip_suffix(']')) {
        if let Some((i, j)) = body.split_once(',') {
            let i = index(i.trim(), "interval start ", v)?;
            let j = index(j.trim(), "interval end ", v)?;
            if j < i {
                return Err(Error::InvalidInput(format!("empty interval M[{},{}]", i + 1, j + 1)));
            }
            return Ok(nhom_core::catalog::interval_module(alg, i, j));
        }
    }
    nhom_core::io::load_module(std::path::Path::new(name), alg)
}

/// Parse a comma-separated generator list and canonicalize it: decompose
/// every module, keep one copy of each indecomposable up to isomorphism.
fn resolve_subcat(
    spec: &str,
    alg: &Arc<Algebra>,
    budget: &Budget,
) -> Result<(Subcat, Value), Error> {
    let mut gens: Vec<Module> = Vec::new();
    let mut input_count = 0usize;
    for name in spec.split(',').filter(|s| !s.trim().is_empty()) {
        input_count += 1;
        let m = resolve_module(name, alg)?;
        let dec = decompose(&m, budget)?;
        for s in dec.summands {
            let mut known = false;
            for g in &gens {
                if is_isomorphic(g, &s.module, budget)?.is_some() {
                    known = true;
                    break;
                }
            }
            if !known {
                gens.push(s.module);
            }
        }
    }
    let note = json!({
        "inputs": input_count,
        "canonical_generators": gens.iter().map(|g| g.dim_vector.clone()).collect::<Vec<_>>(),
    });
    Ok((Subcat::from_indecomposables_unchecked(gens), note))
}

/// The universe a check quantifies over: the catalog one when available,
/// otherwise a declared universe assembled from the supplied subcategories.
fn universe_for(
    catalog: Option<Universe>,
    alg: &Arc<Algebra>,
    cats: &[&Subcat],
    budget: &Budget,
) -> Result<Universe, Error> {
    if let Some(u) = catalog {
        return Ok(u);
    }
    let mut inds: Vec<Module> = Vec::new();
    for c in cats {
        for g in &c.generators {
            let mut known = false;
            for m in &inds {
                if is_isomorphic(m, g, budget)?.is_some() {
                    known = true;
                    break;
                }
            }
            if !known {
                inds.push(g.clone());
            }
        }
    }
    Ok(Universe { algebra: alg.clone(), indecomposables: inds, completeness: Completeness::Declared })
}

fn seq_json(seq: &nhom_core::approx::NSequence) -> Value {
    json!({
        "dim_vectors": seq.modules.iter().map(|m| m.dim_vector.clone()).collect::<Vec<_>>(),
        "n": seq.n(),
    })
}

fn run(cli: &Cli) -> Result<CheckReport, Error> {
    let cap = cli
        .cap
        .or_else(|| std::env::var("NHOM_ENUMERATION_CAP").ok().and_then(|s| s.parse().ok()));
    let mut budget = Budget::with_seed(cli.seed);
    if let Some(c) = cap {
        budget.enumeration_cap = c;
    }
    let b = &budget;
    match &cli.cmd {
        Cmd::CheckNct { algebra, subcat, n } => {
            let (alg, cu) = resolve_algebra(algebra)?;
            let (cat, note) = resolve_subcat(subcat, &alg, b)?;
            let u = universe_for(cu, &alg, &[&cat], b)?;
            let mut rep = nhom_core::checks::is_n_cluster_tilting(&u, &cat, *n, b)?;
            rep.certificate["canonicalization"] = note;
            Ok(rep)
        }
        Cmd::CheckNz { algebra, subcat, n, depth } => {
            let (alg, _) = resolve_algebra(algebra)?;
            let (cat, note) = resolve_subcat(subcat, &alg, b)?;
            let mut rep = nhom_core::checks::is_nz(&cat, *n, *depth, b)?;
            rep.certificate["canonicalization"] = note;
            Ok(rep)
        }
        Cmd::ExtTable { algebra, max_degree } => {
            let (alg, cu) = resolve_algebra(algebra)?;
            let u = universe_for(cu, &alg, &[], b)?;
            let mut entries = Vec::new();
            for (i, a) in u.indecomposables.iter().enumerate() {
                for (j, c) in u.indecomposables.iter().enumerate() {
                    for d in 0..=*max_degree {
                        let dim = nhom_core::homology::ext_dim(a, c, d)?;
                        if dim > 0 {
                            entries.push(json!({"from": i, "to": j, "degree": d, "dim": dim}));
                        }
                    }
                }
            }
            Ok(CheckReport::new(
                "ext_table",
                Verdict::Pass,
                format!("all pairs of {} universe members", u.indecomposables.len()),
                json!({
                    "max_degree": max_degree,
                    "members": u.indecomposables.iter().map(|m| m.dim_vector.clone()).collect::<Vec<_>>(),
                    "nonzero_entries": entries,
                }),
            ))
        }
        Cmd::Precover { algebra, subcat, module } => {
            let (alg, _) = resolve_algebra(algebra)?;
            let (cat, note) = resolve_subcat(subcat, &alg, b)?;
            let m = resolve_module(module, &alg)?;
            let f = nhom_core::approx::minimal_right_approx(&cat, &m, b)?;
            Ok(CheckReport::new(
                "precover",
                Verdict::Pass,
                "single module".into(),
                json!({
                    "source_dim_vector": f.source.dim_vector,
                    "target_dim_vector": f.target.dim_vector,
                    "surjective": f.is_surjective(),
                    "minimal": true,
                    "canonicalization": note,
                }),
            ))
        }
        Cmd::NKernel { algebra, subcat, msub, module, n, out } => {
            let (alg, _) = resolve_algebra(algebra)?;
            let (x, _) = resolve_subcat(subcat, &alg, b)?;
            let (m_cat, _) = resolve_subcat(msub, &alg, b)?;
            let m = resolve_module(module, &alg)?;
            let f = nhom_core::approx::minimal_right_approx(&x, &m, b)?;
            if !f.is_surjective() {
                return Err(Error::ApproxNotSurjective(
                    "minimal approximation is not surjective".into(),
                ));
            }
            let seq = nhom_core::approx::n_kernel_in(&m_cat, &f, *n, b, true)?;
            if let Some(path) = out {
                nhom_core::io::save_sequence(path, &seq)?;
            }
            Ok(CheckReport::new("n_kernel", Verdict::Pass, "single module".into(), seq_json(&seq)))
        }
        Cmd::NSpecialPrecover { algebra, subcat, msub, module, n, out } => {
            let (alg, _) = resolve_algebra(algebra)?;
            let (x, note) = resolve_subcat(subcat, &alg, b)?;
            let (m_cat, _) = resolve_subcat(msub, &alg, b)?;
            let m = resolve_module(module, &alg)?;
            let (seq, mut rep) = nhom_core::checks::n_special_precover(&x, &m_cat, &m, *n, b)?;
            if let Some(path) = out {
                nhom_core::io::save_sequence(path, &seq)?;
            }
            if rep.certificate.is_object() {
                rep.certificate["canonicalization"] = note;
            }
            Ok(rep)
        }
        Cmd::CheckNcotorsion { algebra, subcat, msub, n, strategy } => {
            let (alg, cu) = resolve_algebra(algebra)?;
            let (x, note) = resolve_subcat(subcat, &alg, b)?;
            let (m_cat, _) = resolve_subcat(msub, &alg, b)?;
            let u = universe_for(cu, &alg, &[&x, &m_cat], b)?;
            let strat = match strategy {
                Strategy::Theorem => CotorsionStrategy::Theorem,
                Strategy::Relative => CotorsionStrategy::Relative,
            };
            let mut rep = nhom_core::checks::is_n_cotorsion(&x, &m_cat, &u, *n, strat, &[], b)?;
            if rep.certificate.is_object() {
                rep.certificate["canonicalization"] = note;
            }
            Ok(rep)
        }
        Cmd::CheckLeftClosed { algebra, subcat, msub, n } => {
            let (alg, _) = resolve_algebra(algebra)?;
            let (x, _) = resolve_subcat(subcat, &alg, b)?;
            let (m_cat, _) = resolve_subcat(msub, &alg, b)?;
            nhom_core::checks::is_left_closed_under_n_extensions(&x, &m_cat, *n, b)
        }
        Cmd::Wakamatsu { algebra, subcat, msub, module, n } => {
            let (alg, _) = resolve_algebra(algebra)?;
            let (x, _) = resolve_subcat(subcat, &alg, b)?;
            let (m_cat, _) = resolve_subcat(msub, &alg, b)?;
            let m = resolve_module(module, &alg)?;
            nhom_core::checks::wakamatsu_check(&x, &m_cat, &m, *n, b)
        }
        Cmd::CheckWide { algebra, subcat, msub, n } => {
            let (alg, _) = resolve_algebra(algebra)?;
            let (w, _) = resolve_subcat(subcat, &alg, b)?;
            let (m_cat, _) = resolve_subcat(msub, &alg, b)?;
            nhom_core::checks::is_wide(&w, &m_cat, *n, b)
        }
        Cmd::Restrict { algebra, quotient, module, module2, n } => {
            let (big, _) = resolve_algebra(algebra)?;
            let (small, _) = resolve_algebra(quotient)?;
            let m1 = resolve_module(module, &small)?;
            let inflated = nhom_core::checks::restrict_scalars(&big, &m1)?;
            match module2 {
                Some(m2name) => {
                    let m2 = resolve_module(m2name, &small)?;
                    nhom_core::checks::ext_compare(&big, &m1, &m2, *n)
                }
                None => Ok(CheckReport::new(
                    "restrict_scalars",
                    Verdict::Pass,
                    "single module".into(),
                    json!({"dim_vector": inflated.dim_vector,
                           "note": "inflation validated against the big algebra's relations"}),
                )),
            }
        }
        Cmd::OracleSearch { algebra, n } => {
            let (alg, cu) = resolve_algebra(algebra)?;
            let u = cu.ok_or_else(|| {
                Error::InvalidInput("oracle-search needs a catalog algebra with a complete universe".into())
            })?;
            let _ = alg;
            let hits = nhom_core::catalog::brute_force_nct_search(&u, *n, b)?;
            Ok(CheckReport::new(
                "oracle_search",
                Verdict::Pass,
                format!("all subsets of {} indecomposables containing prj and inj", u.indecomposables.len()),
                json!({
                    "hits": hits.iter().map(|h| {
                        h.generators.iter().map(|g| g.dim_vector.clone()).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                }),
            ))
        }
    }
}

fn exit_code(v: Verdict) -> ExitCode {
    match v {
        Verdict::Pass | Verdict::PassRelative => ExitCode::from(0),
        Verdict::Fail => ExitCode::from(1),
        Verdict::Inconclusive | Verdict::NotApplicable => ExitCode::from(2),
    }
}

fn print_report(rep: &CheckReport, cli: &Cli, elapsed_ms: u64) {
    use std::io::Write;
    let out = std::io::stdout();
    let mut out = out.lock();
    // ignore write errors so a closed pipe (e.g. `| head`) is not a panic
    let _ = match cli.format {
        Format::Json => {
            let v = rep.to_json(cli.seed, if cli.timings { elapsed_ms } else { 0 });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable report"))
        }
        Format::Text => (|| {
            writeln!(out, "check:   {}", rep.check)?;
            writeln!(out, "verdict: {:?}", rep.verdict)?;
            writeln!(out, "scope:   {}", rep.scope)?;
            if !rep.certificate.is_null() {
                writeln!(out, "certificate: {}", rep.certificate)?;
            }
            if !rep.counterexample.is_null() {
                writeln!(out, "counterexample: {}", rep.counterexample)?;
            }
            Ok(())
        })(),
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    match run(&cli) {
        Ok(rep) => {
            print_report(&rep, &cli, start.elapsed().as_millis() as u64);
            exit_code(rep.verdict)
        }
        Err(e) => {
            // construction diagnostics are verdicts, not input errors
            let verdict = if matches!(
                e,
                Error::ApproxNotSurjective(_)
                    | Error::NKernelEscapesM(_)
                    | Error::RepresentativeEscapesM(_)
                    | Error::NotApplicable(_)
            ) {
                Some(Verdict::NotApplicable)
            } else if e.is_inconclusive() {
                Some(Verdict::Inconclusive)
            } else {
                None
            };
            match verdict {
                Some(v) => {
                    let rep = CheckReport::new(
                        "error",
                        v,
                        "construction diagnostic".into(),
                        json!({"reason": e.to_string()}),
                    );
                    print_report(&rep, &cli, start.elapsed().as_millis() as u64);
                    exit_code(v)
                }
                None => {
                    eprintln!("error: {e}");
                    ExitCode::from(3)
                }
            }
        }
    }
}
