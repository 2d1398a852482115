//! Independent re-derivations of tables and counts the library relies on.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use arrowform_core::diagram::interleave;
use arrowform_core::engine::gv::{enumerate_un, phi_gamma, ChainPresentation};
use arrowform_core::engine::gv_formula;
use arrowform_core::enumerate::enumerate_diagrams;
use arrowform_core::relations::{gen_family, RelationVector};
use arrowform_core::templates::{r3_signs, SlotOrders};
use arrowform_core::{rat, Arrow, ArrowDiagram, Diagram, Family, GaussDiagram, LinComb, MarkingWindow, WindowMode};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::naive_key;

type V2 = (f64, f64);

fn cross(a: V2, b: V2) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

/// Parameter along line `(p, d)` of its intersection with line `(q, e)`.
fn meet(p: V2, d: V2, q: V2, e: V2) -> f64 {
    cross((q.0 - p.0, q.1 - p.1), e) / cross(d, e)
}

/// Third-move triangles drawn with three straight strands: orders along each
/// strand and crossing signs `[TM, TB, MB]` normalized so that `TM` is positive.
fn geometric_table() -> BTreeMap<(bool, bool, bool), [i64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut table = BTreeMap::new();
    for _ in 0..2000 {
        let lines: Vec<(V2, V2)> = (0..3)
            .map(|_| {
                let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                ((rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), (t.cos(), t.sin()))
            })
            .collect();
        let [(pt, dt), (pm, dm), (pb, db)] = [lines[0], lines[1], lines[2]];
        if [cross(dt, dm), cross(dt, db), cross(dm, db)].iter().any(|c| c.abs() < 1e-3) {
            continue;
        }
        let t = meet(pt, dt, pm, dm) < meet(pt, dt, pb, db);
        let m = meet(pm, dm, pt, dt) < meet(pm, dm, pb, db);
        let b = meet(pb, db, pt, dt) < meet(pb, db, pm, dm);
        let s = [cross(dt, dm), cross(dt, db), cross(dm, db)].map(|c| c.signum() as i64);
        let s = s.map(|x| x * s[0]);
        if let Some(old) = table.insert((t, m, b), s) {
            assert_eq!(old, s, "straight strands disagree with themselves");
        }
    }
    table
}

#[test]
fn third_move_table_matches_straight_strands() {
    let table = geometric_table();
    assert_eq!(table.len(), 8);
    for ((t, m, b), s) in table {
        let lib = r3_signs(SlotOrders { t, m, b }).map(|x| x.value());
        assert_eq!(lib, s, "orders t={t} m={m} b={b}");
    }
}

fn remove_arrow(k: i64, arrows: &[(usize, usize, i64)], gone: usize) -> ArrowDiagram {
    let mut pos: Vec<usize> = arrows.iter().enumerate().filter(|&(i, _)| i != gone).flat_map(|(_, a)| [a.0, a.1]).collect();
    pos.sort_unstable();
    let rank = |p: usize| pos.binary_search(&p).unwrap();
    let kept = arrows
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != gone)
        .map(|(_, &(t, h, m))| Arrow { tail: rank(t), head: rank(h), mark: m, deco: () })
        .collect();
    Diagram::new(k, kept).unwrap()
}

/// Degree-2 six-term instances rebuilt from every degree-3 word with a
/// third-move triple, and the raw six terms of each.
fn naive_six_term(window: &MarkingWindow) -> (BTreeSet<LinComb<ArrowDiagram>>, Vec<Vec<ArrowDiagram>>) {
    let table = geometric_table();
    let k = window.k();
    let len = 6;
    let mut words = BTreeSet::new();
    for perm in (0..len).permutations(len) {
        for marks in (0..3).map(|_| window.values()).multi_cartesian_product() {
            let arrows: Vec<(usize, usize, i64)> = (0..3).map(|i| (perm[2 * i], perm[2 * i + 1], marks[i])).collect();
            let d = Diagram::<()>::new(k, arrows.iter().map(|&(tail, head, mark)| Arrow { tail, head, mark, deco: () }).collect()).unwrap();
            words.insert(d);
        }
    }
    let next = |p: usize| (p + 1) % len;
    let adjacent = |p: usize, q: usize| next(p) == q || next(q) == p;
    let mut instances = BTreeSet::new();
    let mut raw = Vec::new();
    for d in &words {
        let arrows: Vec<(usize, usize, i64)> = d.arrows().iter().map(|a| (a.tail, a.head, a.mark)).collect();
        for roles in (0..3).permutations(3) {
            let (tm, tb, mb) = (arrows[roles[0]], arrows[roles[1]], arrows[roles[2]]);
            let slots = [(tm.0, tb.0), (tm.1, mb.0), (tb.1, mb.1)];
            if !slots.iter().all(|&(p, q)| adjacent(p, q)) {
                continue;
            }
            let orders = slots.map(|(p, q)| next(p) == q);
            let start = slots.map(|(p, q)| if next(p) == q { p } else { q });
            let rel = |s: usize| (start[s] + len - start[0]) % len;
            let cyc = rel(1) < rel(2);
            if tb.2 != tm.2 + mb.2 - if cyc { k } else { 0 } {
                continue;
            }
            let sigma = table[&(orders[0], orders[1], orders[2])];
            let mut swapped = arrows.clone();
            for (p, q) in slots {
                for a in swapped.iter_mut() {
                    for e in [&mut a.0, &mut a.1] {
                        if *e == p {
                            *e = q;
                        } else if *e == q {
                            *e = p;
                        }
                    }
                }
            }
            let mut v = LinComb::zero();
            let mut terms = Vec::new();
            for third in 0..3 {
                let c: i64 = (0..3).filter(|&r| r != third).map(|r| sigma[r]).product();
                let a = remove_arrow(k, &arrows, roles[third]);
                let b = remove_arrow(k, &swapped, roles[third]);
                v.add_int(a.clone(), c);
                v.add_int(b.clone(), -c);
                terms.extend([a, b]);
            }
            raw.push(terms);
            if !v.is_zero() {
                instances.insert(v.normalized());
            }
        }
    }
    (instances, raw)
}

#[test]
fn six_term_instances_match_a_direct_construction() {
    let w = MarkingWindow::new([1, 2, 3], 4);
    let (naive, _) = naive_six_term(&w);
    let lib: BTreeSet<LinComb<ArrowDiagram>> = gen_family(Family::A6T, 2, &w, WindowMode::Closed)
        .0
        .into_iter()
        .map(|i| match i.vector {
            RelationVector::Arrow(v) => v.normalized(),
            _ => unreachable!(),
        })
        .collect();
    assert!(!naive.is_empty());
    assert_eq!(lib.len(), naive.len());
    assert_eq!(lib, naive);
}

fn planar<D: arrowform_core::Decoration>(d: &Diagram<D>) -> bool {
    let e: Vec<(usize, usize)> = d.arrows().iter().map(|a| (a.tail, a.head)).collect();
    e.iter().tuple_combinations().all(|(&a, &b)| !interleave(a, b))
}

#[test]
fn six_term_terms_are_planar_three_at_a_time_or_never() {
    let w = MarkingWindow::new([1, 2, 3], 4);
    let (_, raw) = naive_six_term(&w);
    for terms in raw {
        let count = terms.iter().filter(|d| planar(*d)).count();
        assert!(count == 0 || count == 3, "{count} planar terms");
    }
}

fn naive_count<D: arrowform_core::Decoration>(n: usize, marks: &[i64], k: i64) -> usize {
    let signs: Vec<D> = if D::SIGNED {
        vec![D::from_sign(arrowform_core::Sign::Pos), D::from_sign(arrowform_core::Sign::Neg)]
    } else {
        vec![D::from_sign(arrowform_core::Sign::Pos)]
    };
    let mut keys = BTreeSet::new();
    for perm in (0..2 * n).permutations(2 * n) {
        for labels in (0..n).map(|_| marks.iter().cartesian_product(signs.iter())).multi_cartesian_product() {
            let arrows = (0..n)
                .map(|i| Arrow { tail: perm[2 * i], head: perm[2 * i + 1], mark: *labels[i].0, deco: *labels[i].1 })
                .collect();
            keys.insert(naive_key(&Diagram::<D>::new(k, arrows).unwrap()));
        }
    }
    keys.len().max(if n == 0 { 1 } else { 0 })
}

#[test]
fn enumeration_counts_match_a_naive_enumerator() {
    let marks = [1, 2, 3];
    for n in 0..=2 {
        assert_eq!(enumerate_diagrams::<()>(n, &marks, 4).len(), naive_count::<()>(n, &marks, 4), "arrow degree {n}");
        assert_eq!(enumerate_diagrams::<arrowform_core::Sign>(n, &marks, 4).len(), naive_count::<arrowform_core::Sign>(n, &marks, 4));
    }
    assert_eq!(enumerate_diagrams::<()>(3, &[1, 2], 0).len(), naive_count::<()>(3, &[1, 2], 0));
}

#[test]
fn enumerated_diagrams_are_pairwise_distinct_up_to_rotation() {
    let ds: Vec<GaussDiagram> = enumerate_diagrams(2, &[0, 1], 1);
    let keys: BTreeSet<_> = ds.iter().map(naive_key).collect();
    assert_eq!(keys.len(), ds.len());
}

fn reversed(cp: &ChainPresentation) -> ChainPresentation {
    let n = cp.degree();
    ChainPresentation {
        ends: cp.ends.iter().map(|e| arrowform_core::diagram::End { arrow: e.arrow, head: !e.head }).collect(),
        regions: cp.regions.iter().map(|&r| n + 2 - r).collect(),
    }
}

#[test]
fn reversing_a_chain_presentation_reflects_the_markings() {
    let gamma = [3, -1, 2, 5];
    let k: i64 = gamma.iter().sum();
    let back: Vec<i64> = gamma.iter().rev().copied().collect();
    for cp in enumerate_un(3) {
        let r = reversed(&cp);
        assert!(r.is_valid());
        let a = phi_gamma(&cp, &gamma).unwrap();
        let b = phi_gamma(&r, &back).unwrap();
        let expected = Diagram::<()>::new(
            k,
            a.arrows().iter().map(|x| Arrow { tail: x.head, head: x.tail, mark: k - x.mark, deco: () }).collect(),
        )
        .unwrap();
        assert_eq!(b, expected);
    }
}

#[test]
fn repeated_gamma_merges_terms_with_multiplicity() {
    let f = gv_formula(2, &[1, 1, 1]).unwrap();
    let images: Vec<ArrowDiagram> = enumerate_un(2).iter().map(|cp| phi_gamma(cp, &[1, 1, 1]).unwrap()).collect();
    let distinct: BTreeSet<_> = images.iter().cloned().collect();
    assert_eq!(f.vector.len(), distinct.len());
    for d in &distinct {
        assert_eq!(f.vector.coeff(d), rat(images.iter().filter(|x| *x == d).count() as i64));
    }
    let total: i64 = f.vector.iter().map(|(_, c)| c.to_integer().try_into().unwrap_or(0i64)).sum();
    assert_eq!(total, 3);
}

#[test]
fn generic_two_arrow_chain_formula() {
    // Γ = (a, b - a, K - b): the three terms carry markings a and b
    let (a, b, k) = (2, 5, 9);
    let f = gv_formula(2, &[a, b - a, k - b]).unwrap();
    assert_eq!(f.k, k);
    assert_eq!(f.vector.len(), 3);
    let marks: BTreeSet<i64> = f.vector.keys().flat_map(|d| d.marks().collect::<Vec<_>>()).collect();
    assert!(marks.contains(&a) && marks.contains(&b));
}
