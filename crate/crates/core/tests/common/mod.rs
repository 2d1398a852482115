#![allow(dead_code)]

use arrowform_core::{Arrow, Decoration, Diagram, Sign};
use rand::seq::SliceRandom;
use rand::Rng;

/// A diagram with `n` arrows placed by a uniformly random endpoint permutation.
pub fn random_diagram<D: Decoration, R: Rng>(rng: &mut R, n: usize, marks: &[i64], k: i64) -> Diagram<D> {
    let mut pos: Vec<usize> = (0..2 * n).collect();
    pos.shuffle(rng);
    let arrows = (0..n)
        .map(|i| Arrow {
            tail: pos[2 * i],
            head: pos[2 * i + 1],
            mark: *marks.choose(rng).unwrap(),
            deco: D::from_sign(if rng.gen() { Sign::Pos } else { Sign::Neg }),
        })
        .collect();
    Diagram::new(k, arrows).unwrap()
}

/// Endpoint positions `(tail, head)` of every arrow.
pub fn ends<D: Decoration>(d: &Diagram<D>) -> Vec<(usize, usize)> {
    d.arrows().iter().map(|a| (a.tail, a.head)).collect()
}

/// Arrows given as `(tail, head, mark)`.
pub fn arrow_diagram(k: i64, spec: &[(usize, usize, i64)]) -> Diagram<()> {
    Diagram::new(k, spec.iter().map(|&(tail, head, mark)| Arrow { tail, head, mark, deco: () }).collect()).unwrap()
}

/// Same diagram read from position `r`.
pub fn rotate<D: Decoration>(d: &Diagram<D>, r: usize) -> Diagram<D> {
    let len = 2 * d.degree();
    if len == 0 {
        return d.clone();
    }
    let arrows = d
        .arrows()
        .iter()
        .map(|a| Arrow { tail: (a.tail + len - r % len) % len, head: (a.head + len - r % len) % len, ..*a })
        .collect();
    Diagram::new(d.k(), arrows).unwrap()
}

/// Key of a diagram that ignores where the circle is cut: the least rotation
/// of the sequence `(is head, mark, sign, distance to partner)`.
pub fn naive_key<D: Decoration>(d: &Diagram<D>) -> Vec<(bool, i64, i64, usize)> {
    let len = 2 * d.degree();
    let mut seq = vec![(false, 0, 0, 0); len];
    for a in d.arrows() {
        let s = if D::SIGNED { d_sign(a.deco) } else { 0 };
        seq[a.tail] = (false, a.mark, s, (a.head + len - a.tail) % len);
        seq[a.head] = (true, a.mark, s, (a.tail + len - a.head) % len);
    }
    (0..len.max(1)).map(|r| [&seq[r.min(len)..], &seq[..r.min(len)]].concat()).min().unwrap()
}

fn d_sign<D: Decoration>(d: D) -> i64 {
    d.sign().value()
}
