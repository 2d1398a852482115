//! Based diagrams (a distinguished arc) and degenerate diagrams (an arc shrunk to a point).

use crate::diagram::{ArrowDiagram, Chord, Decoration, Diagram, End, Word};
use crate::lincomb::LinComb;

/// A diagram with a base arc. Stored read from the endpoint right after the
/// base, so the base sits between the last and the first position. Rotations
/// cannot move the base, so the representation is unique and the
/// automorphism group is trivial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasedDiagram<D> {
    k: i64,
    ends: Vec<End>,
    chords: Vec<Chord<D>>,
}

pub type BasedArrowDiagram = BasedDiagram<()>;

impl<D: Decoration> BasedDiagram<D> {
    /// Based diagram with base arc between positions `arc` and `arc + 1` of `w`.
    pub fn from_word(w: &Word<D>, arc: usize) -> Self {
        let len = w.ends.len();
        let start = if len == 0 { 0 } else { (arc + 1) % len };
        let r = w.rotated(start);
        BasedDiagram { k: r.k, ends: r.ends, chords: r.chords }
    }

    pub fn word(&self) -> Word<D> {
        Word { k: self.k, ends: self.ends.clone(), chords: self.chords.clone() }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.chords.len()
    }

    pub fn ends(&self) -> &[End] {
        &self.ends
    }

    pub fn chords(&self) -> &[Chord<D>] {
        &self.chords
    }

    pub fn unbase(&self) -> Diagram<D> {
        self.word().canonical()
    }

    pub fn aut_order(&self) -> usize {
        1
    }

    /// The two endpoints bounding the base: (just before, just after).
    pub fn boundary(&self) -> Option<(End, End)> {
        let len = self.ends.len();
        if len == 0 {
            None
        } else {
            Some((self.ends[len - 1], self.ends[0]))
        }
    }

    /// Same diagram with the two endpoints bounding the base exchanged.
    pub fn swap_boundary(&self) -> Self {
        let mut w = self.word();
        let len = w.ends.len();
        if len >= 2 {
            w.ends.swap(0, len - 1);
        }
        BasedDiagram::from_word(&w, len.saturating_sub(1))
    }
}

impl<D: Decoration> Diagram<D> {
    /// All `2n` basings, one per arc (arc `i` lies between positions `i` and `i+1`).
    pub fn basings(&self) -> Vec<BasedDiagram<D>> {
        let w = self.word();
        (0..w.ends.len()).map(|arc| BasedDiagram::from_word(&w, arc)).collect()
    }
}

/// `•(A)`: the sum of all basings of each diagram. The empty diagram has no arcs and maps to 0.
pub fn base_expand<D: Decoration>(a: &LinComb<Diagram<D>>) -> LinComb<BasedDiagram<D>> {
    a.map_linear(|d| {
        let mut out = LinComb::zero();
        for b in d.basings() {
            out.add_int(b, 1);
        }
        out
    })
}

/// A diagram with one arc shrunk to a point (the fused point).
///
/// Stored through one resolution: a based arrow diagram whose base is the
/// shrunk arc, so the fused endpoints are the last and first positions. When
/// the fused endpoints belong to two different arrows the two resolutions give
/// the same degenerate diagram, and the smaller one is stored. When they
/// belong to the same arrow, the resolution records which endpoint came first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DegenerateDiagram {
    resolution: BasedArrowDiagram,
}

impl DegenerateDiagram {
    pub fn from_based(b: &BasedArrowDiagram) -> Self {
        let resolution = match b.boundary() {
            Some((x, y)) if x.arrow != y.arrow => {
                let other = b.swap_boundary();
                if other < *b {
                    other
                } else {
                    b.clone()
                }
            }
            _ => b.clone(),
        };
        DegenerateDiagram { resolution }
    }

    /// The canonical resolution; shrinking its base gives back `self`.
    pub fn resolution(&self) -> &BasedArrowDiagram {
        &self.resolution
    }

    /// Both resolutions (one when the fused endpoints belong to a single arrow).
    pub fn resolutions(&self) -> Vec<BasedArrowDiagram> {
        if self.same_arrow() {
            vec![self.resolution.clone()]
        } else {
            vec![self.resolution.clone(), self.resolution.swap_boundary()]
        }
    }

    /// The fused endpoints, in the order of the stored resolution.
    pub fn fused(&self) -> (End, End) {
        self.resolution.boundary().expect("degenerate diagrams have at least one arrow")
    }

    pub fn same_arrow(&self) -> bool {
        let (x, y) = self.fused();
        x.arrow == y.arrow
    }

    /// An arrowhead and an arrowtail of two different arrows meet at the fused point.
    pub fn is_monotonic(&self) -> bool {
        let (x, y) = self.fused();
        x.arrow != y.arrow && x.head != y.head
    }

    pub fn k(&self) -> i64 {
        self.resolution.k()
    }

    pub fn degree(&self) -> usize {
        self.resolution.degree()
    }

    pub fn underlying(&self) -> ArrowDiagram {
        self.resolution.unbase()
    }
}

pub fn based_to_degenerate(b: &BasedArrowDiagram) -> DegenerateDiagram {
    DegenerateDiagram::from_based(b)
}

pub fn degenerate_to_based(d: &DegenerateDiagram) -> BasedArrowDiagram {
    d.resolution().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Arrow;
    use crate::lincomb::rat;

    fn arrows(spec: &[(usize, usize, i64)]) -> ArrowDiagram {
        ArrowDiagram::new(
            0,
            spec.iter().map(|&(tail, head, mark)| Arrow { tail, head, mark, deco: () }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_arrow_has_two_basings() {
        let a = arrows(&[(0, 1, 3)]);
        let bs = base_expand(&LinComb::single(a));
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|(_, c)| *c == rat(1)));
    }

    #[test]
    fn empty_diagram_has_no_basing() {
        let e = ArrowDiagram::empty(2);
        assert!(base_expand(&LinComb::single(e)).is_zero());
    }

    #[test]
    fn symmetric_pair_collapses() {
        let a = arrows(&[(0, 1, 4), (2, 3, 4)]);
        let bs = base_expand(&LinComb::single(a));
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|(_, c)| *c == rat(2)));
        let total: i64 = bs.iter().map(|(_, c)| c.to_integer().try_into().unwrap_or(0i64)).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn same_arrow_degenerate_keeps_order() {
        let a = arrows(&[(0, 1, 3)]);
        let bs = a.basings();
        let d0 = based_to_degenerate(&bs[0]);
        let d1 = based_to_degenerate(&bs[1]);
        assert_ne!(d0, d1);
        assert!(d0.same_arrow() && !d0.is_monotonic());
        assert_eq!(degenerate_to_based(&d0), bs[0]);
    }

    #[test]
    fn two_resolutions_give_one_degenerate_diagram() {
        // t1 t2 h1 h2, base between t1 and t2
        let a = arrows(&[(0, 2, 1), (1, 3, 2)]);
        let b = BasedDiagram::from_word(&a.word(), 0);
        let d = based_to_degenerate(&b);
        assert_eq!(based_to_degenerate(&b.swap_boundary()), d);
        assert!(!d.is_monotonic());
        assert_eq!(d.resolutions().len(), 2);
    }
}
