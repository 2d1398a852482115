//! Searches for short formulas and for boundary-closed combinations that are
//! not invariants.

use std::collections::BTreeSet;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::solver::{boundary_kernel, solve_formula_space, SolverOptions};
use super::{check_formula, EngineError, Formula, Provenance};
use crate::diagram::{Arrow, ArrowDiagram};
use crate::linalg::{integer_row, Echelon};
use crate::lincomb::LinComb;
use crate::relations::{has_r2_pair, MarkingWindow};

/// Short vectors in the span of `basis`, up to scaling: the reduced echelon
/// rows of the basis for the natural column order and `tries` random ones.
pub fn sparse_vectors<T: Ord + Clone + Hash>(
    basis: &[LinComb<T>],
    max_terms: usize,
    tries: usize,
    seed: u64,
) -> BTreeSet<LinComb<T>> {
    let mut cols: Vec<T> = basis.iter().flat_map(|v| v.keys().cloned()).collect();
    cols.sort();
    cols.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeSet::new();
    let mut order: Vec<usize> = (0..cols.len()).collect();
    for t in 0..=tries {
        if t > 0 {
            order.shuffle(&mut rng);
        }
        // position of each column in the current order
        let mut rank_of = vec![0; cols.len()];
        for (r, &c) in order.iter().enumerate() {
            rank_of[c] = r;
        }
        let mut e = Echelon::new();
        for v in basis {
            let row: std::collections::BTreeMap<usize, crate::lincomb::Rational> = v
                .iter()
                .map(|(k, c)| (rank_of[cols.binary_search(k).expect("listed")], c.clone()))
                .collect();
            e.insert(&integer_row(&row));
        }
        for row in e.reduced_rows().values() {
            if row.len() <= max_terms {
                let v: LinComb<T> = row
                    .iter()
                    .map(|(&r, c)| (cols[order[r]].clone(), crate::lincomb::Rational::from_integer(c.clone())))
                    .collect();
                out.insert(v.normalized());
            }
        }
    }
    out
}

/// Markings `α a + β K` used to read a formula as a family in the parameter `a`.
pub const MARK_DICTIONARY: [(i64, i64); 10] = [(0, 0), (1, 0), (-1, 1), (0, 1), (2, 0), (-2, 1), (1, 1), (-1, 0), (1, -1), (-1, 2)];

fn dictionary_values(a: i64, k: i64) -> Vec<i64> {
    MARK_DICTIONARY.iter().map(|&(x, y)| x * a + y * k).collect()
}

/// The markings of the dictionary at `(a, K)`, if they are pairwise distinct.
pub fn generic_window(a: i64, k: i64) -> Option<MarkingWindow> {
    let vals = dictionary_values(a, k);
    let distinct: BTreeSet<i64> = vals.iter().copied().collect();
    (distinct.len() == vals.len()).then(|| MarkingWindow::new(vals, k))
}

/// Rewrites markings as dictionary indices; `None` if a marking is not in
/// the dictionary at `(a, K)` or the dictionary is degenerate there.
pub fn symbolize(v: &LinComb<ArrowDiagram>, a: i64, k: i64) -> Option<LinComb<ArrowDiagram>> {
    generic_window(a, k)?;
    let vals = dictionary_values(a, k);
    let mut out = LinComb::zero();
    for (d, c) in v.iter() {
        let arrows = d
            .arrows()
            .iter()
            .map(|x| vals.iter().position(|&m| m == x.mark).map(|i| Arrow { mark: i as i64, ..*x }))
            .collect::<Option<Vec<_>>>()?;
        out.add_term(ArrowDiagram::new(0, arrows).expect("same word"), c.clone());
    }
    Some(out)
}

/// Evaluates a symbolic family at `(a, K)`; coinciding terms merge.
pub fn instantiate(t: &LinComb<ArrowDiagram>, a: i64, k: i64) -> LinComb<ArrowDiagram> {
    let vals = dictionary_values(a, k);
    let mut out = LinComb::zero();
    for (d, c) in t.iter() {
        let arrows = d.arrows().iter().map(|x| Arrow { mark: vals[x.mark as usize], ..*x }).collect();
        out.add_term(ArrowDiagram::new(k, arrows).expect("same word"), c.clone());
    }
    out
}

/// Symbolic families with exactly `terms` terms lying in the degree-`n`
/// formula space at every probe value of `a`.
pub fn parametric_families(
    n: usize,
    k: i64,
    probes: &[i64],
    terms: usize,
    tries: usize,
    seed: u64,
) -> Result<Vec<LinComb<ArrowDiagram>>, EngineError> {
    let mut common: Option<BTreeSet<LinComb<ArrowDiagram>>> = None;
    for &a in probes {
        let w = generic_window(a, k).ok_or_else(|| EngineError::Gamma(format!("a={a} is not generic for K={k}")))?;
        let basis: Vec<_> = solve_formula_space(n, &w, &SolverOptions::uncached())?.into_iter().map(|f| f.vector).collect();
        let found: BTreeSet<_> = sparse_vectors(&basis, terms, tries, seed)
            .into_iter()
            .filter(|v| v.len() == terms)
            .filter_map(|v| symbolize(&v, a, k))
            .map(|v| v.normalized())
            .collect();
        common = Some(match common {
            None => found,
            Some(c) => c.intersection(&found).cloned().collect(),
        });
    }
    Ok(common.unwrap_or_default().into_iter().collect())
}

/// Symbolic degree-2 families with five terms at generic `a` that pass
/// `check_formula` at `a = 1`, `a = 2` and `a = K`, and shrink to three terms
/// at `a = K`. Sorted.
pub fn length5_families(k: i64, probes: &[i64], tries: usize, seed: u64) -> Result<Vec<LinComb<ArrowDiagram>>, EngineError> {
    let mut out = Vec::new();
    for t in parametric_families(2, k, probes, 5, tries, seed)? {
        let mut ok = instantiate(&t, k, k).len() == 3;
        for a in [1, 2, k] {
            if !ok {
                break;
            }
            let v = instantiate(&t, a, k);
            ok = (a == k || v.len() == 5) && check_formula(&Formula::new(k, v, Provenance::Solver)?, None)?.passed();
        }
        if ok {
            out.push(t);
        }
    }
    Ok(out)
}

/// A combination with `d = 0` satisfying the first-move constraints but
/// pairing nonzero with some second-move instance; the shortest one found.
pub fn boundary_counterexample(
    n: usize,
    window: &MarkingWindow,
    tries: usize,
    seed: u64,
) -> Result<Option<LinComb<ArrowDiagram>>, EngineError> {
    let basis = boundary_kernel(n, window, &SolverOptions::uncached(), false)?;
    let fails_ap2 = |v: &LinComb<ArrowDiagram>| v.keys().any(has_r2_pair);
    let mut candidates: Vec<_> = sparse_vectors(&basis, usize::MAX, tries, seed).into_iter().filter(fails_ap2).collect();
    candidates.sort_by_key(|v| v.len());
    Ok(candidates.into_iter().next())
}
