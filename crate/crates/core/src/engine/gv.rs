//! Planar chain presentations and the formulas `Φ_Γ` built from them.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{EngineError, Formula, Provenance};
use crate::diagram::{Arrow, ArrowDiagram, End};
use crate::enumerate::perfect_matchings;
use crate::lincomb::LinComb;

/// A planar oriented chord diagram with its `n + 1` regions numbered `1..=n+1`.
///
/// `ends[p]` is the endpoint at position `p`; `regions[p]` is the number of the
/// region containing the arc from position `p` to `p + 1`. Arrows are labelled
/// by first occurrence, and the rotation with the least token stream is kept.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainPresentation {
    pub ends: Vec<End>,
    pub regions: Vec<usize>,
}

impl ChainPresentation {
    pub fn degree(&self) -> usize {
        self.ends.len() / 2
    }

    /// `(tail, head)` positions per arrow.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); self.degree()];
        for (p, e) in self.ends.iter().enumerate() {
            if e.head {
                pos[e.arrow].1 = p;
            } else {
                pos[e.arrow].0 = p;
            }
        }
        pos
    }

    /// Region numbers on the left and on the right of each arrow.
    pub fn sides(&self) -> Vec<(usize, usize)> {
        self.positions().iter().map(|&(t, h)| (self.regions[h], self.regions[t])).collect()
    }

    /// Numbers of the regions lying to the left of arrow `i`.
    pub fn left_regions(&self, i: usize) -> BTreeSet<usize> {
        let (t, h) = self.positions()[i];
        let len = self.ends.len();
        let mut out = BTreeSet::new();
        let mut p = h;
        while p != t {
            out.insert(self.regions[p]);
            p = (p + 1) % len;
        }
        out
    }

    /// Checks the increase rule and that the numbering is a bijection.
    pub fn is_valid(&self) -> bool {
        let n = self.degree();
        let used: BTreeSet<usize> = self.regions.iter().copied().collect();
        used == (1..=n + 1).collect() && self.sides().iter().all(|&(l, r)| l < r)
    }

    fn rotated(&self, r: usize) -> ChainPresentation {
        let len = self.ends.len();
        let mut relabel = vec![usize::MAX; self.degree()];
        let mut next = 0;
        let mut ends = Vec::with_capacity(len);
        let mut regions = Vec::with_capacity(len);
        for i in 0..len {
            let e = self.ends[(i + r) % len];
            if relabel[e.arrow] == usize::MAX {
                relabel[e.arrow] = next;
                next += 1;
            }
            ends.push(End { arrow: relabel[e.arrow], head: e.head });
            regions.push(self.regions[(i + r) % len]);
        }
        ChainPresentation { ends, regions }
    }

    pub fn canonical(&self) -> ChainPresentation {
        if self.ends.is_empty() {
            return self.clone();
        }
        (0..self.ends.len()).map(|r| self.rotated(r)).min().expect("nonempty")
    }
}

fn noncrossing(m: &[(usize, usize)]) -> bool {
    m.iter().tuple_combinations().all(|(a, b)| !crate::diagram::interleave(*a, *b))
}

/// Region index (component) of every arc of a planar word.
fn arc_components(ends: &[End]) -> (Vec<usize>, usize) {
    let len = ends.len();
    let mut partner = vec![0; len];
    for p in 0..len {
        for q in 0..len {
            if p != q && ends[p].arrow == ends[q].arrow {
                partner[p] = q;
            }
        }
    }
    let mut comp = vec![usize::MAX; len];
    let mut count = 0;
    for start in 0..len {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut a = start;
        while comp[a] == usize::MAX {
            comp[a] = count;
            a = partner[(a + 1) % len];
        }
        count += 1;
    }
    (comp, count)
}

/// All chain presentations of degree `n`, up to rotation.
pub fn enumerate_un(n: usize) -> Vec<ChainPresentation> {
    if n == 0 {
        return vec![ChainPresentation { ends: Vec::new(), regions: vec![1] }];
    }
    let mut found = BTreeSet::new();
    for m in perfect_matchings(n).into_iter().filter(|m| noncrossing(m)) {
        for o in 0..1u32 << n {
            let mut ends = vec![End::tail(0); 2 * n];
            for (i, &(a, b)) in m.iter().enumerate() {
                let (t, h) = if o >> i & 1 == 1 { (b, a) } else { (a, b) };
                ends[t] = End::tail(i);
                ends[h] = End::head(i);
            }
            let (comp, count) = arc_components(&ends);
            debug_assert_eq!(count, n + 1);
            for numbering in (1..=n + 1).permutations(n + 1) {
                let cp = ChainPresentation { ends: ends.clone(), regions: comp.iter().map(|&c| numbering[c]).collect() };
                if cp.is_valid() {
                    found.insert(cp.canonical());
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Marks each arrow with the sum of `γ_i` over the regions `i` on its left;
/// the circle gets `Σ γ_i`.
pub fn phi_gamma(cp: &ChainPresentation, gamma: &[i64]) -> Result<ArrowDiagram, EngineError> {
    let n = cp.degree();
    if gamma.len() != n + 1 {
        return Err(EngineError::Gamma(format!("expected {} values, got {}", n + 1, gamma.len())));
    }
    if gamma.contains(&0) {
        return Err(EngineError::Gamma("every value must be nonzero".into()));
    }
    let k = gamma.iter().sum();
    let arrows = cp
        .positions()
        .iter()
        .enumerate()
        .map(|(i, &(tail, head))| Arrow { tail, head, mark: cp.left_regions(i).iter().map(|&r| gamma[r - 1]).sum(), deco: () })
        .collect();
    Ok(ArrowDiagram::new(k, arrows).expect("presentation is a valid word"))
}

/// `Φ_Γ = Σ_{U_n} φ_Γ`, coinciding terms merged with their multiplicity.
pub fn gv_formula(n: usize, gamma: &[i64]) -> Result<Formula, EngineError> {
    let mut v = LinComb::zero();
    for cp in enumerate_un(n) {
        v.add_int(phi_gamma(&cp, gamma)?, 1);
    }
    Formula::new(gamma.iter().sum(), v, Provenance::Gv)
}
