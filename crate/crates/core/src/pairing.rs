//! Structural maps `S` and `I`, degree projections and the four pairings.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::based::{BasedDiagram, DegenerateDiagram};
use crate::diagram::{ArrowDiagram, Decoration, Diagram, GaussDiagram, Sign};
use crate::lincomb::{rat, LinComb, Rational};

pub trait Graded {
    fn degree(&self) -> usize;
}

impl<D: Decoration> Graded for Diagram<D> {
    fn degree(&self) -> usize {
        Diagram::degree(self)
    }
}

impl<D: Decoration> Graded for BasedDiagram<D> {
    fn degree(&self) -> usize {
        BasedDiagram::degree(self)
    }
}

impl Graded for DegenerateDiagram {
    fn degree(&self) -> usize {
        DegenerateDiagram::degree(self)
    }
}

/// Basis elements with a rotation symmetry count.
pub trait Symmetric: Ord + Clone {
    fn aut(&self) -> usize;
}

impl<D: Decoration> Symmetric for Diagram<D> {
    fn aut(&self) -> usize {
        self.aut_order()
    }
}

impl<D: Decoration> Symmetric for BasedDiagram<D> {
    fn aut(&self) -> usize {
        1
    }
}

pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).combinations(k)
}

/// `S(A) = Σ_σ sign(σ) A^σ`, extended linearly.
pub fn sign_expand_s(a: &LinComb<ArrowDiagram>) -> LinComb<GaussDiagram> {
    a.map_linear(|d| {
        let n = d.degree();
        let mut out = LinComb::zero();
        for m in 0u64..(1u64 << n) {
            let signs: Vec<Sign> = (0..n).map(|i| if m >> i & 1 == 1 { Sign::Neg } else { Sign::Pos }).collect();
            let s = if m.count_ones() % 2 == 0 { 1 } else { -1 };
            out.add_int(d.with_signs(&signs), s);
        }
        out
    })
}

/// `I(G)`: the sum of all subdiagrams (including the empty one marked `K`).
pub fn subdiagram_expand_i<D: Decoration>(g: &LinComb<Diagram<D>>) -> LinComb<Diagram<D>> {
    g.map_linear(|d| {
        let n = d.degree();
        let mut out = LinComb::zero();
        for m in 0u64..(1u64 << n) {
            let subset: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
            out.add_int(d.subdiagram(&subset), 1);
        }
        out
    })
}

pub fn project_pi<T: Graded + Ord + Clone>(x: &LinComb<T>, n: usize) -> LinComb<T> {
    x.filter(|t| t.degree() == n)
}

pub fn principal_part<T: Graded + Ord + Clone>(x: &LinComb<T>) -> LinComb<T> {
    match x.keys().map(Graded::degree).max() {
        Some(n) => project_pi(x, n),
        None => LinComb::zero(),
    }
}

/// Orthonormal pairing `(x, y)`.
pub fn pair_ortho<T: Ord + Clone>(x: &LinComb<T>, y: &LinComb<T>) -> Rational {
    let (small, big) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut acc = Rational::zero();
    for (k, c) in small.iter() {
        let d = big.coeff(k);
        if !d.is_zero() {
            acc += c * d;
        }
    }
    acc
}

/// Normalized pairing `⟨x, y⟩ = Σ |Aut(d)| x_d y_d`.
pub fn pair_norm<T: Symmetric>(x: &LinComb<T>, y: &LinComb<T>) -> Rational {
    let (small, big) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut acc = Rational::zero();
    for (k, c) in small.iter() {
        let d = big.coeff(k);
        if !d.is_zero() {
            acc += c * d * rat(k.aut() as i64);
        }
    }
    acc
}

/// `((A, G))`: signed count of arrow subsets of `g` that become `a` once signs are forgotten.
pub fn double_paren(a: &ArrowDiagram, g: &GaussDiagram) -> i64 {
    if a.k() != g.k() || a.degree() > g.degree() {
        return 0;
    }
    let mut total = 0;
    for subset in subsets_of_size(g.degree(), a.degree()) {
        let sub = g.subdiagram(&subset);
        if sub.forget_signs() == *a {
            total += sub.sign_product();
        }
    }
    total
}

/// `⟨⟨A, G⟩⟩ = |Aut(A)| ((A, G))`.
pub fn double_angle(a: &ArrowDiagram, g: &GaussDiagram) -> i64 {
    a.aut_order() as i64 * double_paren(a, g)
}

/// Bilinear extension of [`double_angle`].
pub fn double_angle_lin(a: &LinComb<ArrowDiagram>, g: &LinComb<GaussDiagram>) -> Rational {
    let mut acc = Rational::zero();
    for (ad, ac) in a.iter() {
        for (gd, gc) in g.iter() {
            let v = double_angle(ad, gd);
            if v != 0 {
                acc += ac * gc * Rational::from_integer(BigInt::from(v));
            }
        }
    }
    acc
}

/// Arrow combination `Σ (G, A^+) A` reconstructed from a Gauss combination.
pub fn reconstruct_from_positive(g: &LinComb<GaussDiagram>) -> LinComb<ArrowDiagram> {
    let mut out = LinComb::zero();
    for (d, c) in g.iter() {
        if d.arrows().iter().all(|a| a.deco == Sign::Pos) {
            out.add_term(d.forget_signs(), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Arrow;

    fn ad(k: i64, spec: &[(usize, usize, i64)]) -> ArrowDiagram {
        ArrowDiagram::new(k, spec.iter().map(|&(tail, head, mark)| Arrow { tail, head, mark, deco: () }).collect())
            .unwrap()
    }

    fn gd(k: i64, spec: &[(usize, usize, i64, Sign)]) -> GaussDiagram {
        GaussDiagram::new(k, spec.iter().map(|&(tail, head, mark, deco)| Arrow { tail, head, mark, deco }).collect())
            .unwrap()
    }

    #[test]
    fn s_of_single_arrow() {
        let a = ad(0, &[(0, 1, 2)]);
        let s = sign_expand_s(&LinComb::single(a));
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&gd(0, &[(0, 1, 2, Sign::Pos)])), rat(1));
        assert_eq!(s.coeff(&gd(0, &[(0, 1, 2, Sign::Neg)])), rat(-1));
    }

    #[test]
    fn s_of_symmetric_pair_merges_orbit() {
        let a = ad(0, &[(0, 1, 4), (2, 3, 4)]);
        let s = sign_expand_s(&LinComb::single(a));
        let mixed = gd(0, &[(0, 1, 4, Sign::Pos), (2, 3, 4, Sign::Neg)]);
        assert_eq!(s.coeff(&mixed), rat(-2));
        assert_eq!(s.len(), 3);
        for (g, _) in s.iter() {
            assert_eq!(g.forget_signs(), ad(0, &[(0, 1, 4), (2, 3, 4)]));
        }
    }

    #[test]
    fn s_of_empty() {
        let s = sign_expand_s(&LinComb::single(ArrowDiagram::empty(3)));
        assert_eq!(s, LinComb::single(GaussDiagram::empty(3)));
    }

    #[test]
    fn i_of_small_diagrams() {
        let g = gd(5, &[(0, 1, 2, Sign::Pos)]);
        let i = subdiagram_expand_i(&LinComb::single(g.clone()));
        assert_eq!(i.len(), 2);
        assert_eq!(i.coeff(&GaussDiagram::empty(5)), rat(1));
        assert_eq!(project_pi(&i, 1), LinComb::single(g.clone()));
        assert_eq!(project_pi(&i, 0), LinComb::single(GaussDiagram::empty(5)));

        let two = gd(5, &[(0, 2, 1, Sign::Pos), (1, 3, 2, Sign::Neg)]);
        assert_eq!(subdiagram_expand_i(&LinComb::single(two)).len(), 4);

        // both single-arrow subdiagrams coincide
        let same = gd(5, &[(0, 1, 3, Sign::Pos), (2, 3, 3, Sign::Pos)]);
        let i = subdiagram_expand_i(&LinComb::single(same));
        assert_eq!(i.coeff(&gd(5, &[(0, 1, 3, Sign::Pos)])), rat(2));
        assert_eq!(i.len(), 3);
    }

    #[test]
    fn pairings() {
        let g = gd(0, &[(0, 1, 2, Sign::Pos)]);
        let h = gd(0, &[(0, 1, 3, Sign::Pos)]);
        let x = LinComb::single(g.clone());
        let y = LinComb::single(h.clone());
        assert_eq!(pair_ortho(&x, &x), rat(1));
        assert_eq!(pair_ortho(&x, &y), rat(0));
        let mut z = x.scale(&rat(2));
        z.add_int(h, 3);
        assert_eq!(pair_ortho(&z, &y), rat(3));

        let sym = LinComb::single(ad(0, &[(0, 1, 4), (2, 3, 4)]));
        assert_eq!(pair_norm(&sym, &sym), rat(2));
    }

    #[test]
    fn brackets_on_single_arrows() {
        let a = ad(0, &[(0, 1, 2)]);
        let gp = gd(0, &[(0, 1, 2, Sign::Pos)]);
        let gn = gd(0, &[(0, 1, 2, Sign::Neg)]);
        let other = gd(0, &[(0, 1, 7, Sign::Neg)]);
        assert_eq!(double_paren(&a, &gp), 1);
        assert_eq!(double_paren(&a, &gn), -1);
        assert_eq!(double_paren(&a, &other), 0);
        assert_eq!(double_angle(&a, &gn), -1);
        let big = ad(0, &[(0, 1, 2), (2, 3, 2)]);
        assert_eq!(double_paren(&big, &gp), 0);
    }

    #[test]
    fn symmetric_double_angle_doubles() {
        let a = ad(0, &[(0, 1, 4), (2, 3, 4)]);
        let g = gd(0, &[(0, 1, 4, Sign::Pos), (2, 3, 4, Sign::Neg)]);
        assert_eq!(double_paren(&a, &g), -1);
        assert_eq!(double_angle(&a, &g), -2);
    }
}
