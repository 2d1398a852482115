//! Brute-force enumeration of canonical diagrams.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::diagram::{Arrow, Decoration, Diagram, Sign};

/// All perfect matchings of `0..2n`, each pair listed as `(smaller, larger)`.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = free.remove(0);
        for i in 0..free.len() {
            let other = free.remove(i);
            cur.push((first, other));
            go(free, cur, out);
            cur.pop();
            free.insert(i, other);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    go(&mut (0..2 * n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Every canonical diagram of degree `n` whose markings lie in `marks`.
pub fn enumerate_diagrams<D: Decoration>(n: usize, marks: &[i64], k: i64) -> Vec<Diagram<D>> {
    if n == 0 {
        return vec![Diagram::empty(k)];
    }
    let marks: Vec<i64> = marks.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let decos: Vec<D> = if D::SIGNED {
        vec![D::from_sign(Sign::Pos), D::from_sign(Sign::Neg)]
    } else {
        vec![D::from_sign(Sign::Pos)]
    };
    let shapes: Vec<Vec<(usize, usize)>> = perfect_matchings(n)
        .into_iter()
        .flat_map(|m| {
            (0..1u32 << n).map(move |o| {
                m.iter()
                    .enumerate()
                    .map(|(i, &(a, b))| if o >> i & 1 == 1 { (b, a) } else { (a, b) })
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let found: BTreeSet<Diagram<D>> = shapes
        .par_iter()
        .flat_map_iter(|shape| {
            let labels: Vec<(i64, D)> = marks.iter().copied().cartesian_product(decos.iter().copied()).collect();
            let mut local = BTreeSet::new();
            for choice in (0..n).map(|_| labels.iter()).multi_cartesian_product() {
                let arrows = shape
                    .iter()
                    .zip(choice)
                    .map(|(&(tail, head), &(mark, deco))| Arrow { tail, head, mark, deco })
                    .collect();
                local.insert(Diagram::new(k, arrows).expect("matching is valid"));
            }
            local
        })
        .collect();
    found.into_iter().collect()
}
