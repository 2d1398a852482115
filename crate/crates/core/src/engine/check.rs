//! Independent verification of a candidate formula.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{EngineError, Formula};
use crate::based::{base_expand, DegenerateDiagram};
use crate::boundary::{based_six_term, d_based, normalize_triangle, normalize_triangle_within};
use crate::diagram::ArrowDiagram;
use crate::lincomb::{LinComb, Rational};
use crate::pairing::{pair_norm, pair_ortho};
use crate::relations::{arrow_instances_through, Family, MarkingWindow};

#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub family: Family,
    pub instances: usize,
    pub max_abs: Rational,
    /// The first instance (in a deterministic order) pairing nonzero with the formula.
    pub first_failure: Option<LinComb<ArrowDiagram>>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.max_abs.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub families: Vec<FamilyCheck>,
    /// `d(f)` in the monotonic basis.
    pub boundary: LinComb<DegenerateDiagram>,
    /// Number of monotonic diagrams whose based six-term relation pairs nonzero with `•(f)`.
    pub based_violations: usize,
    pub based_checked: usize,
}

impl CheckReport {
    pub fn family(&self, f: Family) -> &FamilyCheck {
        self.families.iter().find(|c| c.family == f).expect("all families are checked")
    }

    pub fn boundary_zero(&self) -> bool {
        self.boundary.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyCheck::passed) && self.boundary_zero()
    }

    /// Once the first two move families hold, the six-term verdict, the
    /// boundary verdict and the based six-term verdict must agree.
    pub fn consistent(&self) -> bool {
        if !(self.family(Family::AP1).passed() && self.family(Family::AP2).passed()) {
            return true;
        }
        let a6t = self.family(Family::A6T).passed();
        a6t == self.boundary_zero() && a6t == (self.based_violations == 0)
    }
}

/// Pairs the formula with every `AP1`, `AP2` and `A6T` instance meeting its
/// support, computes `d(f)`, and recomputes `d(f) = 0` through the based
/// six-term relations. With a window, the triangle rewrite must stay inside it.
pub fn check_formula(f: &Formula, window: Option<&MarkingWindow>) -> Result<CheckReport, EngineError> {
    let support: Vec<&ArrowDiagram> = f.vector.keys().collect();
    let mut families = Vec::new();
    for family in [Family::AP1, Family::AP2, Family::A6T] {
        let instances: BTreeSet<LinComb<ArrowDiagram>> = support
            .par_iter()
            .flat_map_iter(|d| arrow_instances_through(family, d).into_iter().map(|v| v.normalized()))
            .collect();
        let mut max_abs = Rational::zero();
        let mut first_failure = None;
        for r in &instances {
            let v = pair_norm(&f.vector, r).abs();
            if !v.is_zero() && first_failure.is_none() {
                first_failure = Some(r.clone());
            }
            if v > max_abs {
                max_abs = v;
            }
        }
        families.push(FamilyCheck { family, instances: instances.len(), max_abs, first_failure });
    }
    let based = base_expand(&f.vector);
    let raw = based.map_linear(d_based);
    let boundary = match window {
        Some(w) => normalize_triangle_within(&raw, w)?,
        None => normalize_triangle(&raw),
    };
    // dual route: (•f, A6T•(D)) for every monotonic D reached by some basing
    let targets: BTreeSet<DegenerateDiagram> =
        based.keys().flat_map(|b| normalize_triangle(&d_based(b)).keys().cloned().collect::<Vec<_>>()).collect();
    let based_violations = targets.par_iter().filter(|dd| !pair_ortho(&based, &based_six_term(dd)).is_zero()).count();
    Ok(CheckReport { families, boundary, based_violations, based_checked: targets.len() })
}
