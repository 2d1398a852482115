//! Exact sparse linear algebra over the rationals.
//!
//! Rows are kept as sparse integer vectors and eliminated fraction-free: a row
//! is reduced by `lead(p) * row - row[c] * pivot`, then divided by the gcd of
//! its entries.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lincomb::{LinComb, Rational};
use crate::pairing::Symmetric;

pub type SparseRow = BTreeMap<usize, BigInt>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("row {row} has support outside the column list")]
    UnknownColumn { row: usize },
    #[error("duplicate column")]
    DuplicateColumn,
}

/// Clears denominators and divides out the content; the result has gcd 1.
pub fn integer_row(v: &BTreeMap<usize, Rational>) -> SparseRow {
    let mut den = BigInt::one();
    for c in v.values() {
        den = den.lcm(c.denom());
    }
    let mut row: SparseRow =
        v.iter().filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (i, (c * Rational::from_integer(den.clone())).to_integer())).collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for c in row.values() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for c in row.values_mut() {
            *c /= &g;
        }
    }
}

/// `a * x - b * y` on sparse rows.
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = SparseRow::new();
    for (&i, c) in x {
        out.insert(i, a * c);
    }
    for (&i, c) in y {
        let e = out.entry(i).or_insert_with(BigInt::zero);
        *e -= b * c;
        if e.is_zero() {
            out.remove(&i);
        }
    }
    out
}

/// Row echelon form built incrementally. Each stored row has a distinct
/// leading column (its least column index).
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the stored rows, eliminating pivot columns in increasing order.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut v = v.clone();
        let mut from = 0usize;
        loop {
            let next = v.range(from..).map(|(&c, _)| c).find(|c| self.pivots.contains_key(c));
            let Some(c) = next else { break };
            let p = &self.pivots[&c];
            let lead = &p[&c];
            let vc = v[&c].clone();
            let g = lead.gcd(&vc);
            v = combine(&(lead / &g), &v, &(&vc / &g), p);
            make_primitive(&mut v);
            from = c + 1;
        }
        v
    }

    /// Adds a row; returns whether it was independent of the stored ones.
    pub fn insert(&mut self, v: &SparseRow) -> bool {
        let r = self.reduce(v);
        match r.keys().next().copied() {
            None => false,
            Some(c) => {
                let mut r = r;
                if r[&c].is_negative() {
                    for x in r.values_mut() {
                        *x = -x.clone();
                    }
                }
                self.pivots.insert(c, r);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    /// The stored rows in reduced echelon form: every pivot column is zero in
    /// all other rows. Keyed by pivot column, each with a positive pivot.
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseRow> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: BTreeMap<usize, SparseRow> = self.pivots.clone();
        for &c in cols.iter().rev() {
            let p = rows[&c].clone();
            let lead = p[&c].clone();
            for &other in cols.iter().filter(|&&o| o < c) {
                let r = &rows[&other];
                if let Some(rc) = r.get(&c) {
                    let g = lead.gcd(rc);
                    let mut nr = combine(&(&lead / &g), r, &(rc / &g), &p);
                    make_primitive(&mut nr);
                    if nr[&other].is_negative() {
                        for x in nr.values_mut() {
                            *x = -x.clone();
                        }
                    }
                    rows.insert(other, nr);
                }
            }
        }
        rows
    }

    /// Basis of `{x : row · x = 0 for every stored row}` in `ncols` columns.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseRow> {
        let rows = self.reduced_rows();
        let mut basis = Vec::new();
        for f in (0..ncols).filter(|f| !rows.contains_key(f)) {
            let mut v: BTreeMap<usize, Rational> = BTreeMap::new();
            v.insert(f, Rational::one());
            for (&c, r) in &rows {
                if let Some(x) = r.get(&f) {
                    v.insert(c, -Rational::new(x.clone(), r[&c].clone()));
                }
            }
            let mut row = integer_row(&v);
            if row.values().next().map(|x| x.is_negative()).unwrap_or(false) {
                for x in row.values_mut() {
                    *x = -x.clone();
                }
            }
            basis.push(row);
        }
        basis
    }
}

pub fn rank(rows: &[SparseRow]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn in_span(v: &SparseRow, rows: &[SparseRow]) -> bool {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.contains(v)
}

pub fn kernel(rows: &[SparseRow], ncols: usize) -> Vec<SparseRow> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.kernel(ncols)
}

/// A matrix whose columns are indexed by canonical diagrams.
#[derive(Clone, Debug)]
pub struct DiagramIndexedMatrix<T: Ord + Clone + Hash> {
    columns: Vec<T>,
    index: HashMap<T, usize>,
    rows: Vec<SparseRow>,
}

impl<T: Ord + Clone + Hash> DiagramIndexedMatrix<T> {
    pub fn new(columns: Vec<T>) -> Result<Self, LinalgError> {
        let mut index = HashMap::with_capacity(columns.len());
        for (i, c) in columns.iter().enumerate() {
            if index.insert(c.clone(), i).is_some() {
                return Err(LinalgError::DuplicateColumn);
            }
        }
        Ok(DiagramIndexedMatrix { columns, index, rows: Vec::new() })
    }

    pub fn columns(&self) -> &[T] {
        &self.columns
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn column_of(&self, t: &T) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinates of a combination; fails if it has support outside the columns.
    pub fn coordinates(&self, x: &LinComb<T>) -> Option<SparseRow> {
        let mut v = BTreeMap::new();
        for (t, c) in x.iter() {
            v.insert(*self.index.get(t)?, c.clone());
        }
        Some(integer_row(&v))
    }

    /// Appends a row with entries `x_t`.
    pub fn push(&mut self, x: &LinComb<T>) -> Result<(), LinalgError> {
        let row = self.coordinates(x).ok_or(LinalgError::UnknownColumn { row: self.rows.len() })?;
        self.rows.push(row);
        Ok(())
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    /// Kernel vectors as combinations of the columns.
    pub fn kernel(&self) -> Vec<LinComb<T>> {
        kernel(&self.rows, self.columns.len()).iter().map(|v| self.combination(v)).collect()
    }

    pub fn combination(&self, v: &SparseRow) -> LinComb<T> {
        v.iter().map(|(&i, c)| (self.columns[i].clone(), Rational::from_integer(c.clone()))).collect()
    }
}

impl<T: Symmetric + Hash> DiagramIndexedMatrix<T> {
    /// Appends the constraint `⟨a, r⟩ = 0`: entries `r_t · |Aut(t)|`.
    pub fn push_constraint(&mut self, r: &LinComb<T>) -> Result<(), LinalgError> {
        let scaled: LinComb<T> =
            r.iter().map(|(t, c)| (t.clone(), c * Rational::from_integer(BigInt::from(t.aut())))).collect();
        self.push(&scaled)
    }
}

/// `x ∈ Span(rows)` for combinations.
pub fn in_span_lin<T: Ord + Clone + Hash>(x: &LinComb<T>, rows: &[LinComb<T>]) -> bool {
    let mut cols: Vec<T> = x.keys().cloned().collect();
    for r in rows {
        cols.extend(r.keys().cloned());
    }
    cols.sort();
    cols.dedup();
    let mut m = DiagramIndexedMatrix::new(cols).expect("deduplicated");
    for r in rows {
        m.push(r).expect("support listed");
    }
    let v = m.coordinates(x).expect("support listed");
    in_span(&v, &m.rows)
}

/// Do two families of combinations span the same space?
pub fn same_span<T: Ord + Clone + Hash>(a: &[LinComb<T>], b: &[LinComb<T>]) -> bool {
    a.iter().all(|x| in_span_lin(x, b)) && b.iter().all(|x| in_span_lin(x, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().filter(|(_, c)| *c != 0).map(|&(i, c)| (i, BigInt::from(c))).collect()
    }

    fn dot(a: &SparseRow, b: &SparseRow) -> BigInt {
        a.iter().filter_map(|(i, x)| b.get(i).map(|y| x * y)).sum()
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let k = kernel(&[], 3);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let rows: Vec<SparseRow> = (0..4).map(|i| row(&[(i, 1)])).collect();
        assert!(kernel(&rows, 4).is_empty());
        assert_eq!(rank(&rows), 4);
    }

    #[test]
    fn kernel_vectors_are_primitive_and_annihilated() {
        let rows = vec![row(&[(0, 2), (1, 4), (3, 6)]), row(&[(1, 3), (2, -9)]), row(&[(0, 2), (1, 7), (2, -9), (3, 6)])];
        assert_eq!(rank(&rows), 2);
        let k = kernel(&rows, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                assert!(dot(v, r).is_zero());
            }
            assert!(v.values().next().unwrap().is_positive());
            let g = v.values().fold(BigInt::zero(), |g, x| g.gcd(x));
            assert!(g.is_one());
        }
    }

    #[test]
    fn membership() {
        let rows = vec![row(&[(0, 1), (1, 1)]), row(&[(1, 1), (2, 1)])];
        assert!(in_span(&row(&[(0, 1), (1, 2), (2, 1)]), &rows));
        assert!(in_span(&rows[0], &rows));
        assert!(!in_span(&row(&[(0, 1), (1, -1), (2, 1)]), &rows));
    }
}
