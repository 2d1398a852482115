//! Reidemeister moves on decorated Gauss diagrams.
//!
//! Sites refer to the canonical word of the diagram: arrow indices are those
//! of [`Diagram::arrows`], arc `i` lies between positions `i` and `i + 1`
//! (the empty diagram has the single arc `0`).

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::diagram::{Chord, Diagram, End, GaussDiagram, Sign, Word};
use crate::relations::{find_triples, insert_on_arc, r1_arrows, r2_pairs, swap_slots, triple_signs_ok};
use crate::templates;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RMove {
    /// Adds a kink on `arc`; its marking is forced by the order of the endpoints.
    R1Add { arc: usize, tail_first: bool, sign: Sign },
    R1Remove { arrow: usize },
    /// Adds a bigon: a `+` and a `-` arrow with marking `mark`, tails on
    /// `tail_arc`, heads on `head_arc`. On a shared arc `tails_first` decides
    /// which cluster comes first.
    R2Add { tail_arc: usize, head_arc: usize, positive_tail_first: bool, positive_head_first: bool, tails_first: bool, mark: i64 },
    R2Remove { first: usize, second: usize },
    R3 { arrows: [usize; 3] },
}

impl RMove {
    pub fn kind(&self) -> &'static str {
        match self {
            RMove::R1Add { .. } => "R1+",
            RMove::R1Remove { .. } => "R1-",
            RMove::R2Add { .. } => "R2+",
            RMove::R2Remove { .. } => "R2-",
            RMove::R3 { .. } => "R3",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("invalid site: {0}")]
    InvalidSite(String),
}

fn arc_count(w: &Word<Sign>) -> usize {
    w.ends.len().max(1)
}

pub fn apply_r_move(g: &GaussDiagram, mv: &RMove) -> Result<GaussDiagram, MoveError> {
    let w = g.word();
    let n = w.chords.len();
    let bad = |s: String| Err(MoveError::InvalidSite(s));
    match *mv {
        RMove::R1Add { arc, tail_first, sign } => {
            if arc >= arc_count(&w) {
                return bad(format!("arc {arc} out of range"));
            }
            let mark = templates::r1_mark(tail_first, w.k);
            let seq = if tail_first { [End::tail(n), End::head(n)] } else { [End::head(n), End::tail(n)] };
            Ok(insert_on_arc(&w, arc, &seq, &[Chord { mark, deco: sign }]).canonical())
        }
        RMove::R1Remove { arrow } => {
            if !r1_arrows(&w).contains(&arrow) {
                return bad(format!("arrow {arrow} is not a removable kink"));
            }
            Ok(w.retain_arrows(|i| i != arrow).canonical())
        }
        RMove::R2Add { tail_arc, head_arc, positive_tail_first, positive_head_first, tails_first, mark } => {
            let arcs = arc_count(&w);
            if tail_arc >= arcs || head_arc >= arcs {
                return bad(format!("arc out of range ({tail_arc}, {head_arc})"));
            }
            let (p, q) = (n, n + 1);
            let chords = [Chord { mark, deco: Sign::Pos }, Chord { mark, deco: Sign::Neg }];
            let tails = if positive_tail_first { [End::tail(p), End::tail(q)] } else { [End::tail(q), End::tail(p)] };
            let heads = if positive_head_first { [End::head(p), End::head(q)] } else { [End::head(q), End::head(p)] };
            let out = if tail_arc == head_arc {
                let seq: Vec<End> = if tails_first {
                    tails.iter().chain(heads.iter()).copied().collect()
                } else {
                    heads.iter().chain(tails.iter()).copied().collect()
                };
                insert_on_arc(&w, tail_arc, &seq, &chords)
            } else {
                let w1 = insert_on_arc(&w, tail_arc, &tails, &chords);
                let shifted = if head_arc > tail_arc && !w.ends.is_empty() { head_arc + 2 } else { head_arc };
                insert_on_arc(&w1, shifted, &heads, &[])
            };
            Ok(out.canonical())
        }
        RMove::R2Remove { first, second } => {
            let pair = (first.min(second), first.max(second));
            if !r2_pairs(&w).contains(&pair) {
                return bad(format!("arrows {first}, {second} do not form a bigon"));
            }
            Ok(w.retain_arrows(|i| i != first && i != second).canonical())
        }
        RMove::R3 { arrows } => {
            let site = find_triples(&w)
                .into_iter()
                .find(|s| s.arrows == arrows)
                .ok_or_else(|| MoveError::InvalidSite(format!("arrows {arrows:?} do not form a triangle")))?;
            if !triple_signs_ok(&w, &site) {
                return bad(format!("signs of {arrows:?} do not match a third move"));
            }
            Ok(swap_slots(&w, &site).canonical())
        }
    }
}

pub fn r1_removals(g: &GaussDiagram) -> Vec<RMove> {
    r1_arrows(&g.word()).into_iter().map(|arrow| RMove::R1Remove { arrow }).collect()
}

pub fn r2_removals(g: &GaussDiagram) -> Vec<RMove> {
    r2_pairs(&g.word()).into_iter().map(|(first, second)| RMove::R2Remove { first, second }).collect()
}

pub fn r3_sites(g: &GaussDiagram) -> Vec<RMove> {
    let w = g.word();
    find_triples(&w).into_iter().filter(|s| triple_signs_ok(&w, s)).map(|s| RMove::R3 { arrows: s.arrows }).collect()
}

/// A uniformly chosen move kind among the applicable ones, then a uniform site.
/// Bigon markings are drawn from `marks`; additions stop at `max_degree`.
pub fn random_move<R: Rng>(g: &GaussDiagram, rng: &mut R, marks: &[i64], max_degree: usize) -> Option<RMove> {
    let n = g.degree();
    let arcs = (2 * n).max(1);
    let removals1 = r1_removals(g);
    let removals2 = r2_removals(g);
    let thirds = r3_sites(g);
    let mut kinds: Vec<u8> = Vec::new();
    if n < max_degree {
        kinds.push(0);
    }
    if n + 2 <= max_degree && !marks.is_empty() {
        kinds.push(1);
    }
    if !removals1.is_empty() {
        kinds.push(2);
    }
    if !removals2.is_empty() {
        kinds.push(3);
    }
    if !thirds.is_empty() {
        kinds.push(4);
    }
    let kind = *kinds.choose(rng)?;
    Some(match kind {
        0 => RMove::R1Add {
            arc: rng.gen_range(0..arcs),
            tail_first: rng.gen(),
            sign: if rng.gen() { Sign::Pos } else { Sign::Neg },
        },
        1 => RMove::R2Add {
            tail_arc: rng.gen_range(0..arcs),
            head_arc: rng.gen_range(0..arcs),
            positive_tail_first: rng.gen(),
            positive_head_first: rng.gen(),
            tails_first: rng.gen(),
            mark: *marks.choose(rng).expect("nonempty"),
        },
        2 => removals1.choose(rng)?.clone(),
        3 => removals2.choose(rng)?.clone(),
        _ => thirds.choose(rng)?.clone(),
    })
}

/// A random Gauss diagram containing `triangles` third-move triples and
/// `extra` further arrows, with markings drawn from `marks`. Later
/// triangles may split the slots of earlier ones.
pub fn random_start<R: Rng>(rng: &mut R, k: i64, marks: &[i64], triangles: usize, extra: usize) -> GaussDiagram {
    let mut w: Word<Sign> = Word { k, ends: Vec::new(), chords: Vec::new() };
    for _ in 0..extra {
        let id = w.chords.len();
        let mark = *marks.choose(rng).expect("nonempty");
        let sign = if rng.gen() { Sign::Pos } else { Sign::Neg };
        let arcs = w.ends.len().max(1);
        let w1 = insert_on_arc(&w, rng.gen_range(0..arcs), &[End::tail(id)], &[Chord { mark, deco: sign }]);
        let arcs = w1.ends.len();
        w = insert_on_arc(&w1, rng.gen_range(0..arcs), &[End::head(id)], &[]);
    }
    for _ in 0..triangles {
        let (row_orders, _) = templates::R3_TABLE[rng.gen_range(0..templates::R3_TABLE.len())];
        let cyc_tmb: bool = rng.gen();
        let nu = if rng.gen() { Sign::Pos } else { Sign::Neg };
        let sigma = templates::r3_signs(row_orders);
        let m_tm = *marks.choose(rng).expect("nonempty");
        let m_mb = *marks.choose(rng).expect("nonempty");
        let m_tb = templates::r3_mark_tb(m_tm, m_mb, k, cyc_tmb);
        let base = w.chords.len();
        let (tm, tb, mb) = (base, base + 1, base + 2);
        let order = |first: bool, a: End, b: End| if first { [a, b] } else { [b, a] };
        let t_slot = order(row_orders.t, End::tail(tm), End::tail(tb));
        let m_slot = order(row_orders.m, End::head(tm), End::tail(mb));
        let b_slot = order(row_orders.b, End::head(tb), End::head(mb));
        let seq: Vec<End> = if cyc_tmb {
            [t_slot, m_slot, b_slot].concat()
        } else {
            [t_slot, b_slot, m_slot].concat()
        };
        let chords = [
            Chord { mark: m_tm, deco: nu * sigma[0] },
            Chord { mark: m_tb, deco: nu * sigma[1] },
            Chord { mark: m_mb, deco: nu * sigma[2] },
        ];
        // three sorted cut points keep the slots in cyclic order
        let len = w.ends.len();
        let mut cuts = [rng.gen_range(0..=len), rng.gen_range(0..=len), rng.gen_range(0..=len)];
        cuts.sort_unstable();
        let mut ends = Vec::with_capacity(len + 6);
        ends.extend_from_slice(&w.ends[..cuts[0]]);
        ends.extend_from_slice(&seq[0..2]);
        ends.extend_from_slice(&w.ends[cuts[0]..cuts[1]]);
        ends.extend_from_slice(&seq[2..4]);
        ends.extend_from_slice(&w.ends[cuts[1]..cuts[2]]);
        ends.extend_from_slice(&seq[4..6]);
        ends.extend_from_slice(&w.ends[cuts[2]..]);
        w.chords.extend_from_slice(&chords);
        w.ends = ends;
    }
    Diagram::from_word(&w)
}
