//! The formula space at a fixed degree as an exact kernel, with a disk cache.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{EngineError, Formula, Provenance};
use crate::based::DegenerateDiagram;
use crate::boundary::boundary_d;
use crate::diagram::ArrowDiagram;
use crate::enumerate::enumerate_diagrams;
use crate::format;
use crate::linalg::{kernel, DiagramIndexedMatrix, SparseRow};
use crate::lincomb::LinComb;
use crate::relations::{arrow_instances_through, has_r1_arrow, has_r2_pair, Family, MarkingWindow};
use crate::templates;

pub const CACHE_ENV: &str = "ARROWFORM_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Root of the basis cache; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
    /// Refuse to build systems whose column estimate exceeds this.
    pub max_columns: u128,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from), max_columns: 400_000 }
    }
}

impl SolverOptions {
    pub fn uncached() -> Self {
        SolverOptions { cache_dir: None, ..Self::default() }
    }
}

/// Upper bound on the number of arrow diagrams of degree `n` over the window:
/// matchings times orientations times markings, before quotienting by rotation.
pub fn estimate_columns(n: usize, window: &MarkingWindow) -> u128 {
    let w = window.values().len() as u128;
    let mut est: u128 = 1;
    for i in 0..n {
        est = est.saturating_mul((2 * i + 1) as u128).saturating_mul(2).saturating_mul(w);
    }
    est
}

fn guard(n: usize, window: &MarkingWindow, opts: &SolverOptions) -> Result<(), EngineError> {
    if window.values().is_empty() {
        return Err(EngineError::EmptyWindow);
    }
    let estimate = estimate_columns(n, window);
    if estimate > opts.max_columns {
        return Err(EngineError::TooLarge { estimate, limit: opts.max_columns });
    }
    Ok(())
}

pub fn cache_key(n: usize, window: &MarkingWindow) -> String {
    let mut h = Sha256::new();
    h.update(format!("degree={n};K={};window={:?};", window.k(), window.values()));
    h.update(templates::table_digest_source());
    hex::encode(h.finalize())
}

pub fn cache_path(root: &Path, n: usize, window: &MarkingWindow) -> PathBuf {
    root.join(window.k().to_string()).join(n.to_string()).join(format!("{}.basis", cache_key(n, window)))
}

fn arrow_columns(n: usize, window: &MarkingWindow) -> DiagramIndexedMatrix<ArrowDiagram> {
    let cols = enumerate_diagrams::<()>(n, &window.values(), window.k());
    DiagramIndexedMatrix::new(cols).expect("enumeration is duplicate free")
}

/// The `AP1`, `AP2` and `A6T` constraints meeting the window, restricted to it.
pub fn constraint_rows(n: usize, window: &MarkingWindow) -> DiagramIndexedMatrix<ArrowDiagram> {
    let mut m = arrow_columns(n, window);
    let rows: BTreeSet<LinComb<ArrowDiagram>> = m
        .columns()
        .par_iter()
        .flat_map_iter(|d| {
            [Family::AP1, Family::AP2, Family::A6T]
                .into_iter()
                .flat_map(move |f| arrow_instances_through(f, d))
                .map(|v| window.restrict(&v).normalized())
                .filter(|v| !v.is_zero())
                .collect::<Vec<_>>()
        })
        .collect();
    for r in &rows {
        m.push_constraint(r).expect("restricted to the columns");
    }
    m
}

fn to_formulas(k: i64, basis: Vec<LinComb<ArrowDiagram>>) -> Vec<Formula> {
    basis.into_iter().map(|vector| Formula { k, vector, provenance: Provenance::Solver }).collect()
}

/// Basis of the degree-`n` formulas over the window: the kernel of the
/// stacked `AP1`, `AP2` and `A6T` constraints.
pub fn solve_formula_space(n: usize, window: &MarkingWindow, opts: &SolverOptions) -> Result<Vec<Formula>, EngineError> {
    guard(n, window, opts)?;
    let path = opts.cache_dir.as_ref().map(|root| cache_path(root, n, window));
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        let text = fs::read_to_string(p)?;
        let parsed = format::parse_basis_text(&text)?;
        log::info!("loaded {} basis vectors from {}", parsed.len(), p.display());
        return Ok(to_formulas(window.k(), parsed.into_iter().map(|(_, v)| v).collect()));
    }
    let m = constraint_rows(n, window);
    log::info!("degree {n}: {} columns, {} constraint rows", m.columns().len(), m.rows().len());
    let basis = m.kernel();
    if let Some(p) = path {
        let written = p
            .parent()
            .map(fs::create_dir_all)
            .unwrap_or(Ok(()))
            .and_then(|_| fs::write(&p, format::write_basis_text(window.k(), &basis)));
        if let Err(e) = written {
            log::warn!("could not write cache {}: {e}", p.display());
        }
    }
    Ok(to_formulas(window.k(), basis))
}

/// Kernel of `AP1`, `AP2` and `d = 0` on the degree-`n` diagrams of the window.
/// The boundary is taken in the monotonic basis without restricting markings.
pub fn d_kernel(n: usize, window: &MarkingWindow, opts: &SolverOptions) -> Result<Vec<LinComb<ArrowDiagram>>, EngineError> {
    boundary_kernel(n, window, opts, true)
}

/// Kernel of `d = 0` and `AP1`, plus `AP2` when `with_ap2` is set.
pub fn boundary_kernel(
    n: usize,
    window: &MarkingWindow,
    opts: &SolverOptions,
    with_ap2: bool,
) -> Result<Vec<LinComb<ArrowDiagram>>, EngineError> {
    guard(n, window, opts)?;
    let m = arrow_columns(n, window);
    let images: Vec<LinComb<DegenerateDiagram>> =
        m.columns().par_iter().map(|d| boundary_d(&LinComb::single(d.clone()))).collect();
    let mut by_target: BTreeMap<&DegenerateDiagram, BTreeMap<usize, crate::lincomb::Rational>> = BTreeMap::new();
    for (i, img) in images.iter().enumerate() {
        for (g, c) in img.iter() {
            by_target.entry(g).or_default().insert(i, c.clone());
        }
    }
    let mut rows: Vec<SparseRow> = by_target.values().map(crate::linalg::integer_row).collect();
    for (i, d) in m.columns().iter().enumerate() {
        if has_r1_arrow(d) || (with_ap2 && has_r2_pair(d)) {
            rows.push(SparseRow::from([(i, BigInt::from(1))]));
        }
    }
    Ok(kernel(&rows, m.columns().len()).iter().map(|v| m.combination(v)).collect())
}
