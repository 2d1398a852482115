//! Finite formal linear combinations with exact rational coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Map from basis element to nonzero coefficient. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinComb<T: Ord> {
    terms: BTreeMap<T, Rational>,
}

impl<T: Ord> Default for LinComb<T> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> LinComb<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(t: T) -> Self {
        Self::term(t, Rational::one())
    }

    pub fn term(t: T, c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(t, c);
        x
    }

    pub fn add_term(&mut self, t: T, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_int(&mut self, t: T, c: i64) {
        self.add_term(t, rat(c))
    }

    pub fn coeff(&self, t: &T) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &T> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Linear extension of `f`, merging coefficients on equal images.
    pub fn map_linear<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> LinComb<U>) -> LinComb<U> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            for (u, d) in f(k).terms {
                out.add_term(u, d * c);
            }
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&T) -> bool) -> Self {
        LinComb {
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Rescales so that the first (least) key has coefficient 1.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            None => Self::zero(),
            Some(lead) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
        }
    }

    /// Rescales by a positive factor to integer coefficients with gcd 1.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = BigInt::one();
        for v in self.terms.values() {
            den = den.lcm(v.denom());
        }
        let mut g = BigInt::zero();
        for v in self.terms.values() {
            let n = (v * Rational::from_integer(den.clone())).to_integer();
            g = g.gcd(&n);
        }
        self.scale(&Rational::new(den, g.abs()))
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms.values().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl<T: Ord + Clone> FromIterator<(T, Rational)> for LinComb<T> {
    fn from_iter<I: IntoIterator<Item = (T, Rational)>>(iter: I) -> Self {
        let mut x = LinComb::zero();
        for (t, c) in iter {
            x.add_term(t, c);
        }
        x
    }
}

impl<T: Ord + Clone> IntoIterator for LinComb<T> {
    type Item = (T, Rational);
    type IntoIter = btree_map::IntoIter<T, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<T: Ord + Clone> AddAssign<&LinComb<T>> for LinComb<T> {
    fn add_assign(&mut self, rhs: &LinComb<T>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<T: Ord + Clone> Add for &LinComb<T> {
    type Output = LinComb<T>;
    fn add(self, rhs: &LinComb<T>) -> LinComb<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Ord + Clone> Sub for &LinComb<T> {
    type Output = LinComb<T>;
    fn sub(self, rhs: &LinComb<T>) -> LinComb<T> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl<T: Ord + Clone> Neg for &LinComb<T> {
    type Output = LinComb<T>;
    fn neg(self) -> LinComb<T> {
        self.scale(&-Rational::one())
    }
}

impl<T: Ord + Clone> Mul<&Rational> for &LinComb<T> {
    type Output = LinComb<T>;
    fn mul(self, rhs: &Rational) -> LinComb<T> {
        self.scale(rhs)
    }
}
