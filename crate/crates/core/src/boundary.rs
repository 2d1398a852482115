//! The map `d`: nice basings, the sign `ε`, shrinking the base, and the
//! triangle rewrite onto monotonic degenerate diagrams.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::based::{base_expand, BasedArrowDiagram, BasedDiagram, DegenerateDiagram};
use crate::diagram::{interleave, ArrowDiagram, Chord, End, Word};
use crate::enumerate::enumerate_diagrams;
use crate::lincomb::{rat, LinComb};
use crate::relations::{insert_arrow, swap_slots, triple_site, Marked, MarkingWindow};
use crate::templates::{self, Role, Slot};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("triangle rewrite of {diagram} needs marking {mark}, outside the window")]
    OutsideWindow { diagram: String, mark: i64 },
}

/// The endpoints bounding the base belong to two different arrows.
pub fn is_nice(b: &BasedArrowDiagram) -> bool {
    match b.boundary() {
        Some((x, y)) => x.arrow != y.arrow,
        None => false,
    }
}

fn boundary_arrows(b: &BasedArrowDiagram) -> (usize, usize) {
    let (x, y) = b.boundary().expect("based diagram has arrows");
    (x.arrow, y.arrow)
}

/// `+1` when the two arrows bounding the base cross, `-1` otherwise.
pub fn eta(b: &BasedArrowDiagram) -> i64 {
    debug_assert!(is_nice(b));
    let pos = b.word().positions();
    let (i, j) = boundary_arrows(b);
    if interleave(pos[i], pos[j]) {
        1
    } else {
        -1
    }
}

/// Number of arrowheads among the two endpoints bounding the base.
pub fn head_count(b: &BasedArrowDiagram) -> usize {
    match b.boundary() {
        Some((x, y)) => x.head as usize + y.head as usize,
        None => 0,
    }
}

pub fn epsilon(b: &BasedArrowDiagram) -> i64 {
    eta(b) * if head_count(b) % 2 == 0 { 1 } else { -1 }
}

/// `d` on one based diagram: zero unless nice, else `ε` times the shrunk diagram.
pub fn d_based(b: &BasedArrowDiagram) -> LinComb<DegenerateDiagram> {
    if !is_nice(b) {
        return LinComb::zero();
    }
    let mut out = LinComb::zero();
    out.add_int(DegenerateDiagram::from_based(b), epsilon(b));
    out
}

/// `d` on based combinations, before the triangle rewrite.
pub fn d_raw(x: &LinComb<BasedArrowDiagram>) -> LinComb<DegenerateDiagram> {
    x.map_linear(d_based)
}

/// A degenerate diagram whose resolution word has the base between `pivot`
/// and the endpoint that follows it.
fn degenerate_from(w: &Word<()>, pivot: usize) -> DegenerateDiagram {
    DegenerateDiagram::from_based(&BasedDiagram::from_word(w, pivot))
}

/// Moves one fused endpoint of a tail-tail or head-head fusion to the other
/// arrow's free end, producing one monotonic term of the triangle rewrite.
fn triangle_term(r: &BasedArrowDiagram, kept: usize, moved: usize, heads: bool) -> DegenerateDiagram {
    let w = r.word();
    let pos = w.positions();
    let k = w.k;
    let mut chords = w.chords.clone();
    let (kept_t, kept_h) = pos[kept];
    let (moved_t, moved_h) = pos[moved];
    let mut ends = Vec::with_capacity(w.ends.len());
    let mut pivot = 0;
    if !heads {
        // tails fused: the tail of `moved` goes right after the head of `kept`
        chords[moved].mark = templates::triangle_mark_tails(chords[kept].mark, chords[moved].mark, k, kept_h < moved_h);
        for (p, e) in w.ends.iter().enumerate() {
            if p == moved_t {
                continue;
            }
            ends.push(*e);
            if p == kept_h {
                pivot = ends.len() - 1;
                ends.push(End::tail(moved));
            }
        }
    } else {
        // heads fused: the head of `moved` goes right before the tail of `kept`
        chords[moved].mark = templates::triangle_mark_heads(chords[kept].mark, chords[moved].mark, k, moved_t < kept_t);
        for (p, e) in w.ends.iter().enumerate() {
            if p == moved_h {
                continue;
            }
            if p == kept_t {
                ends.push(End::head(moved));
                pivot = ends.len() - 1;
            }
            ends.push(*e);
        }
    }
    degenerate_from(&Word { k, ends, chords }, pivot)
}

/// Image of one degenerate diagram in the monotonic basis: itself when
/// monotonic, the two triangle terms for a tail-tail or head-head fusion of two
/// arrows, and zero when both fused endpoints belong to one arrow.
pub fn triangle_rewrite(dd: &DegenerateDiagram) -> LinComb<DegenerateDiagram> {
    if dd.is_monotonic() {
        return LinComb::single(dd.clone());
    }
    if dd.same_arrow() {
        return LinComb::zero();
    }
    let (x, y) = dd.fused();
    let r = dd.resolution();
    let mut out = LinComb::zero();
    out.add_int(triangle_term(r, x.arrow, y.arrow, x.head), 1);
    out.add_int(triangle_term(r, y.arrow, x.arrow, x.head), 1);
    out
}

/// The triangle relation containing the non-monotonic diagram `dd` (fused
/// endpoints from two different arrows); `None` otherwise.
pub fn triangle_relation(dd: &DegenerateDiagram) -> Option<LinComb<DegenerateDiagram>> {
    if dd.is_monotonic() || dd.same_arrow() {
        return None;
    }
    let mut v = LinComb::single(dd.clone());
    v += &(-&triangle_rewrite(dd));
    Some(v)
}

/// Rewrites every non-monotonic key into monotonic ones.
pub fn normalize_triangle(x: &LinComb<DegenerateDiagram>) -> LinComb<DegenerateDiagram> {
    x.map_linear(triangle_rewrite)
}

/// As [`normalize_triangle`], refusing rewrites that leave the window.
pub fn normalize_triangle_within(
    x: &LinComb<DegenerateDiagram>,
    window: &MarkingWindow,
) -> Result<LinComb<DegenerateDiagram>, BoundaryError> {
    let out = normalize_triangle(x);
    for (d, _) in out.iter() {
        if let Some(&mark) = d.mark_list().iter().find(|&&m| !window.contains(m)) {
            return Err(BoundaryError::OutsideWindow { diagram: format!("{:?}", d.resolution()), mark });
        }
    }
    Ok(out)
}

/// `d(A)` in the monotonic basis.
pub fn boundary_d(a: &LinComb<ArrowDiagram>) -> LinComb<DegenerateDiagram> {
    normalize_triangle(&d_raw(&base_expand(a)))
}

/// All degenerate diagrams of degree `n` over the given markings.
pub fn enumerate_degenerate(n: usize, marks: &[i64], k: i64) -> Vec<DegenerateDiagram> {
    let mut out = BTreeSet::new();
    for d in enumerate_diagrams::<()>(n, marks, k) {
        for b in d.basings() {
            out.insert(DegenerateDiagram::from_based(&b));
        }
    }
    out.into_iter().collect()
}

/// Based diagram on the word `w` with the base between the endpoints `e1` and `e2`.
fn based_between(w: &Word<()>, e1: End, e2: End) -> BasedArrowDiagram {
    let len = w.ends.len();
    let p = w.ends.iter().position(|x| *x == e1).expect("endpoint present");
    let q = w.ends.iter().position(|x| *x == e2).expect("endpoint present");
    if (p + 1) % len == q {
        BasedDiagram::from_word(w, p)
    } else {
        debug_assert_eq!((q + 1) % len, p);
        BasedDiagram::from_word(w, q)
    }
}

/// The based six-term relation attached to a monotonic degenerate diagram,
/// built from the third-move picture: the fused point is the middle slot, and
/// an arrow `TB` is added from the tail of `TM` to the head of `MB`.
pub fn based_six_term(dd: &DegenerateDiagram) -> LinComb<BasedArrowDiagram> {
    assert!(dd.is_monotonic(), "based six-term relation needs a monotonic diagram");
    let r = dd.resolution();
    let w = r.word();
    let (x, y) = dd.fused();
    let (tm, mb) = if x.head { (x.arrow, y.arrow) } else { (y.arrow, x.arrow) };
    let pos = w.positions();
    let (tm_t, _) = pos[tm];
    let (_, mb_h) = pos[mb];
    let cyc_tmb = mb_h < tm_t;
    let mark = templates::r3_mark_tb(w.chords[tm].mark, w.chords[mb].mark, w.k, cyc_tmb);
    let full = insert_arrow(&w, Chord { mark, deco: () }, (tm_t, true), (mb_h, true));
    let tb = full.chords.len() - 1;
    let site = triple_site(&full, [tm, tb, mb]).expect("inserted arrow completes a triple");
    debug_assert_eq!(site.cyc_tmb, cyc_tmb);
    let sigma = templates::r3_signs(site.orders);
    let swapped = swap_slots(&full, &site);
    let mut out = LinComb::zero();
    for third in Role::ALL {
        let s: i64 = Role::ALL.iter().filter(|&&q| q != third).map(|q| sigma[q.index()].value()).product();
        let slot = Slot::of_pair_without(third);
        let [(r1, h1), (r2, h2)] = slot.members();
        let e1 = End { arrow: site.arrow(r1), head: h1 };
        let e2 = End { arrow: site.arrow(r2), head: h2 };
        let gone = site.arrow(third);
        let reindex = |e: End| End { arrow: if e.arrow > gone { e.arrow - 1 } else { e.arrow }, head: e.head };
        for (word, c) in [(&full, s), (&swapped, -s)] {
            let pair = word.retain_arrows(|i| i != gone);
            out.add_int(based_between(&pair, reindex(e1), reindex(e2)), c);
        }
    }
    // global sign: the resolution of `dd` itself (middle slot, original order) carries ε
    let s_m = sigma[Role::TM.index()].value() * sigma[Role::MB.index()].value();
    out.scale(&rat(epsilon(r) * s_m))
}

/// `(d(B), D) = (B, A6T•(D))` for a based diagram and a monotonic degenerate diagram.
pub fn based_6t_pairing_check(b: &BasedArrowDiagram, dd: &DegenerateDiagram) -> bool {
    let lhs = normalize_triangle(&d_based(b)).coeff(dd);
    let rhs = based_six_term(dd).coeff(b);
    lhs == rhs
}
