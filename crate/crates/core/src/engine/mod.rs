//! Pipelines: the formula-space solver, the formula checker, the planar chain
//! construction, evaluation on Gauss diagrams and randomized move checks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::boundary::BoundaryError;
use crate::diagram::{ArrowDiagram, GaussDiagram};
use crate::format::{self, ParseError};
use crate::lincomb::{LinComb, Rational};
use crate::pairing::{project_pi, subsets_of_size};

pub mod check;
pub mod gv;
pub mod search;
pub mod solver;
pub mod walk;

pub use check::{check_formula, CheckReport, FamilyCheck};
pub use gv::{enumerate_un, gv_formula, phi_gamma, ChainPresentation};
pub use solver::{d_kernel, solve_formula_space, SolverOptions};
pub use walk::{verify_invariance, WalkConfig, WalkReport};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("formula has K={formula} but the diagram has K={diagram}")]
    KMismatch { formula: i64, diagram: i64 },
    #[error("the marking window is empty")]
    EmptyWindow,
    #[error("about {estimate} basis diagrams exceed the limit of {limit}")]
    TooLarge { estimate: u128, limit: u128 },
    #[error("invalid gamma collection: {0}")]
    Gamma(String),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Solver,
    Gv,
    File,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Solver => "solver",
            Provenance::Gv => "gv",
            Provenance::File => "file",
        })
    }
}

/// An arrow diagram formula: a combination of arrow diagrams sharing the global marking `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub k: i64,
    pub vector: LinComb<ArrowDiagram>,
    pub provenance: Provenance,
}

impl Formula {
    pub fn new(k: i64, vector: LinComb<ArrowDiagram>, provenance: Provenance) -> Result<Self, EngineError> {
        if let Some(d) = vector.keys().find(|d| d.k() != k) {
            return Err(EngineError::KMismatch { formula: k, diagram: d.k() });
        }
        Ok(Formula { k, vector, provenance })
    }

    /// The degrees carrying a nonzero term.
    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.vector.keys().map(|d| d.degree()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn to_text(&self) -> String {
        format::write_formula_text(self.k, &self.vector)
    }

    pub fn from_text(text: &str) -> Result<Self, EngineError> {
        let (k, vector) = format::parse_formula_text(text)?;
        Formula::new(k, vector, Provenance::File)
    }
}

/// Splits a formula into its homogeneous parts, lowest degree first.
pub fn homogeneous_components(f: &Formula) -> Vec<Formula> {
    f.degrees()
        .into_iter()
        .map(|n| Formula { k: f.k, vector: project_pi(&f.vector, n), provenance: f.provenance })
        .collect()
}

/// `Σ_A f_A |Aut(A)| ((A, g))`, one subset scan per degree of `f`.
pub fn evaluate(f: &Formula, g: &GaussDiagram) -> Result<Rational, EngineError> {
    if f.k != g.k() {
        return Err(EngineError::KMismatch { formula: f.k, diagram: g.k() });
    }
    let mut by_degree: BTreeMap<usize, Vec<(&ArrowDiagram, &Rational)>> = BTreeMap::new();
    for (a, c) in f.vector.iter() {
        by_degree.entry(a.degree()).or_default().push((a, c));
    }
    let mut total = Rational::zero();
    for (&m, terms) in &by_degree {
        if m > g.degree() {
            continue;
        }
        let lookup: BTreeMap<&ArrowDiagram, Rational> =
            terms.iter().map(|&(a, c)| (a, c * Rational::from_integer(BigInt::from(a.aut_order())))).collect();
        for subset in subsets_of_size(g.degree(), m) {
            let sub = g.subdiagram(&subset);
            if let Some(c) = lookup.get(&sub.forget_signs()) {
                if sub.sign_product() > 0 {
                    total += c;
                } else {
                    total -= c;
                }
            }
        }
    }
    Ok(total)
}
