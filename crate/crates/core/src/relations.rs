//! Relation families over a finite marking window.
//!
//! Instances are produced locally, "through" a given diagram: every instance
//! that has the diagram among its terms is found by matching the diagram
//! against each role it can play in the move pictures. Generating a family
//! then amounts to running over all diagrams of the window.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::based::{BasedDiagram, DegenerateDiagram};
use crate::boundary;
use crate::diagram::{ArrowDiagram, Chord, Decoration, Diagram, End, GaussDiagram, Sign, Word};
use crate::enumerate::enumerate_diagrams;
use crate::lincomb::LinComb;
use crate::pairing::subdiagram_expand_i;
use crate::templates::{self, Role, Slot, SlotOrders};

/// Objects carrying arrow markings.
pub trait Marked {
    fn mark_list(&self) -> Vec<i64>;
}

impl<D: Decoration> Marked for Diagram<D> {
    fn mark_list(&self) -> Vec<i64> {
        self.marks().collect()
    }
}

impl<D: Decoration> Marked for BasedDiagram<D> {
    fn mark_list(&self) -> Vec<i64> {
        self.chords().iter().map(|c| c.mark).collect()
    }
}

impl Marked for DegenerateDiagram {
    fn mark_list(&self) -> Vec<i64> {
        self.resolution().mark_list()
    }
}

/// The markings arrows may carry, together with the global marking `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkingWindow {
    allowed: BTreeSet<i64>,
    k: i64,
}

impl MarkingWindow {
    pub fn new(allowed: impl IntoIterator<Item = i64>, k: i64) -> Self {
        MarkingWindow { allowed: allowed.into_iter().collect(), k }
    }

    pub fn range(lo: i64, hi: i64, k: i64) -> Self {
        Self::new(lo..=hi, k)
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn allowed(&self) -> &BTreeSet<i64> {
        &self.allowed
    }

    pub fn values(&self) -> Vec<i64> {
        self.allowed.iter().copied().collect()
    }

    pub fn contains(&self, m: i64) -> bool {
        self.allowed.contains(&m)
    }

    pub fn admits<T: Marked>(&self, t: &T) -> bool {
        t.mark_list().into_iter().all(|m| self.contains(m))
    }

    /// Drops the terms with a marking outside the window.
    pub fn restrict<T: Marked + Ord + Clone>(&self, x: &LinComb<T>) -> LinComb<T> {
        x.filter(|t| self.admits(t))
    }

    pub fn closed_under_reflection(&self) -> bool {
        self.allowed.iter().all(|&m| self.contains(self.k - m))
    }

    pub fn with_marks(&self, extra: impl IntoIterator<Item = i64>) -> Self {
        let mut w = self.clone();
        w.allowed.extend(extra);
        w
    }
}

impl fmt::Display for MarkingWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.allowed.iter().map(|m| m.to_string()).collect();
        write!(f, "K={} markings={{{}}}", self.k, vals.join(","))
    }
}

/// How instances with terms outside the window are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WindowMode {
    /// Keep every instance with a term in the window, dropping the outside terms.
    /// Exact for combinations supported in the window.
    #[default]
    Restrict,
    /// Keep only the instances whose terms all lie in the window; the others are counted as skipped.
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    P1,
    P2,
    P2h1,
    P2h2,
    P3,
    G6T,
    G2T,
    AP1,
    AP2,
    A6T,
    A2T,
    Triangle,
    Based6T,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::P1,
        Family::P2,
        Family::P2h1,
        Family::P2h2,
        Family::P3,
        Family::G6T,
        Family::G2T,
        Family::AP1,
        Family::AP2,
        Family::A6T,
        Family::A2T,
        Family::Triangle,
        Family::Based6T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::P1 => "p1",
            Family::P2 => "p2",
            Family::P2h1 => "p2h1",
            Family::P2h2 => "p2h2",
            Family::P3 => "p3",
            Family::G6T => "g6t",
            Family::G2T => "g2t",
            Family::AP1 => "ap1",
            Family::AP2 => "ap2",
            Family::A6T => "a6t",
            Family::A2T => "a2t",
            Family::Triangle => "triangle",
            Family::Based6T => "based6t",
        }
    }

    /// Least degree at which the family has instances.
    pub fn min_degree(self) -> usize {
        match self {
            Family::P1 | Family::AP1 | Family::P2h1 => 1,
            Family::P2 | Family::P2h2 | Family::AP2 | Family::G6T | Family::A6T => 2,
            Family::Triangle | Family::Based6T => 2,
            Family::P3 | Family::G2T | Family::A2T => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = RelationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| RelationError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("unknown relation family `{0}`")]
    UnknownFamily(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationVector {
    Gauss(LinComb<GaussDiagram>),
    Arrow(LinComb<ArrowDiagram>),
    Degenerate(LinComb<DegenerateDiagram>),
    Based(LinComb<BasedDiagram<()>>),
}

impl RelationVector {
    pub fn len(&self) -> usize {
        match self {
            RelationVector::Gauss(x) => x.len(),
            RelationVector::Arrow(x) => x.len(),
            RelationVector::Degenerate(x) => x.len(),
            RelationVector::Based(x) => x.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub family: Family,
    pub vector: RelationVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkipReport {
    /// Instances dropped because a term left the window (closed mode only).
    pub skipped: usize,
}

// ---------------------------------------------------------------------------
// word surgery

/// `Some(true)` if `p` is right before `q` on a circle of length `len`, `Some(false)` if right after.
pub(crate) fn adjacency(p: usize, q: usize, len: usize) -> Option<bool> {
    if len < 2 {
        None
    } else if (p + 1) % len == q {
        Some(true)
    } else if (q + 1) % len == p {
        Some(false)
    } else {
        None
    }
}

/// Adds an arrow whose endpoints sit next to existing positions (`(position, after)`).
pub(crate) fn insert_arrow<D: Decoration>(
    w: &Word<D>,
    chord: Chord<D>,
    tail_at: (usize, bool),
    head_at: (usize, bool),
) -> Word<D> {
    let id = w.chords.len();
    let mut ends = Vec::with_capacity(w.ends.len() + 2);
    for (p, e) in w.ends.iter().enumerate() {
        for (at, new) in [(tail_at, End::tail(id)), (head_at, End::head(id))] {
            if at == (p, false) {
                ends.push(new);
            }
        }
        ends.push(*e);
        for (at, new) in [(head_at, End::head(id)), (tail_at, End::tail(id))] {
            if at == (p, true) {
                ends.push(new);
            }
        }
    }
    let mut chords = w.chords.clone();
    chords.push(chord);
    Word { k: w.k, ends, chords }
}

// ---------------------------------------------------------------------------
// triples

/// Three arrows of a word arranged as in the third move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleSite {
    /// Arrow indices for `TM`, `TB`, `MB`.
    pub arrows: [usize; 3],
    pub orders: SlotOrders,
    /// The circle visits the slots in the cyclic order top, middle, bottom.
    pub cyc_tmb: bool,
    /// Positions of the two endpoints of each slot, in circle order.
    pub slots: [(usize, usize); 3],
}

impl TripleSite {
    pub fn arrow(&self, r: Role) -> usize {
        self.arrows[r.index()]
    }

    pub fn slot(&self, s: Slot) -> (usize, usize) {
        self.slots[s as usize]
    }
}

/// Checks that `arrows` (as `TM`, `TB`, `MB`) sit in three slots; markings and signs are not checked.
pub fn triple_site<D: Decoration>(w: &Word<D>, arrows: [usize; 3]) -> Option<TripleSite> {
    let len = w.ends.len();
    let pos = w.positions();
    let at = |r: Role, head: bool| {
        let (t, h) = pos[arrows[r.index()]];
        if head {
            h
        } else {
            t
        }
    };
    let mut orders = [false; 3];
    let mut slots = [(0, 0); 3];
    for s in Slot::ALL {
        let [(r1, h1), (r2, h2)] = s.members();
        let (p, q) = (at(r1, h1), at(r2, h2));
        let first = adjacency(p, q, len)?;
        orders[s as usize] = first;
        slots[s as usize] = if first { (p, q) } else { (q, p) };
    }
    let start = |s: Slot| slots[s as usize].0;
    let rel = |s: Slot| (start(s) + len - start(Slot::T)) % len;
    Some(TripleSite {
        arrows,
        orders: SlotOrders { t: orders[0], m: orders[1], b: orders[2] },
        cyc_tmb: rel(Slot::M) < rel(Slot::B),
        slots,
    })
}

pub fn triple_marks_ok<D>(w: &Word<D>, site: &TripleSite) -> bool {
    let m = |r: Role| w.chords[site.arrow(r)].mark;
    m(Role::TB) == templates::r3_mark_tb(m(Role::TM), m(Role::MB), w.k, site.cyc_tmb)
}

/// For signed words: the signs agree with the table up to a global sign.
pub fn triple_signs_ok<D: Decoration>(w: &Word<D>, site: &TripleSite) -> bool {
    if !D::SIGNED {
        return true;
    }
    let sigma = templates::r3_signs(site.orders);
    let s = |r: Role| w.chords[site.arrow(r)].deco.sign();
    let nu = s(Role::TM) * sigma[0];
    Role::ALL.iter().all(|&r| s(r) == nu * sigma[r.index()])
}

/// All triples of a word with valid adjacency and markings (signs unchecked).
pub fn find_triples<D: Decoration>(w: &Word<D>) -> Vec<TripleSite> {
    let len = w.ends.len();
    let n = w.chords.len();
    if n < 3 {
        return Vec::new();
    }
    let pos = w.positions();
    let neighbours = |p: usize| [(p + len - 1) % len, (p + 1) % len];
    let mut out = Vec::new();
    for tm in 0..n {
        let (tm_t, tm_h) = pos[tm];
        for q in neighbours(tm_t) {
            let e = w.ends[q];
            if e.head || e.arrow == tm {
                continue;
            }
            let tb = e.arrow;
            for r in neighbours(tm_h) {
                let f = w.ends[r];
                if f.head || f.arrow == tm || f.arrow == tb {
                    continue;
                }
                let mb = f.arrow;
                if let Some(site) = triple_site(w, [tm, tb, mb]) {
                    if triple_marks_ok(w, &site) && !out.contains(&site) {
                        out.push(site);
                    }
                }
            }
        }
    }
    out
}

/// The word after the third move: the order inside every slot is reversed.
pub fn swap_slots<D: Clone>(w: &Word<D>, site: &TripleSite) -> Word<D> {
    let mut out = w.clone();
    for (p, q) in site.slots {
        out.ends.swap(p, q);
    }
    out
}

fn without<D: Decoration>(w: &Word<D>, arrow: usize) -> Diagram<D> {
    w.retain_arrows(|i| i != arrow).canonical()
}

/// Third-move pair relation of a full triple word: the six (G6T/A6T) terms.
pub fn six_term_vector<D: Decoration>(w: &Word<D>, site: &TripleSite) -> LinComb<Diagram<D>> {
    let sigma = templates::r3_signs(site.orders);
    let swapped = swap_slots(w, site);
    let mut out = LinComb::zero();
    for third in Role::ALL {
        let c = if D::SIGNED {
            1
        } else {
            Role::ALL
                .iter()
                .filter(|&&r| r != third)
                .map(|r| sigma[r.index()].value())
                .product()
        };
        out.add_int(without(w, site.arrow(third)), c);
        out.add_int(without(&swapped, site.arrow(third)), -c);
    }
    out
}

/// Third-move triple relation of a full triple word: the two (G2T/A2T) terms.
pub fn two_term_vector<D: Decoration>(w: &Word<D>, site: &TripleSite) -> LinComb<Diagram<D>> {
    let sigma = templates::r3_signs(site.orders);
    let c = if D::SIGNED { 1 } else { sigma.iter().map(|s| s.value()).product() };
    let mut out = LinComb::zero();
    out.add_int(w.canonical(), c);
    out.add_int(swap_slots(w, site).canonical(), -c);
    out
}

/// Full triple words obtained from `w` by adding the arrow missing from an
/// adjacent pair. Signs of the added arrow follow the table; pairs whose signs
/// cannot match the table are skipped.
pub fn complete_pairs<D: Decoration>(w: &Word<D>) -> Vec<(Word<D>, TripleSite)> {
    let len = w.ends.len();
    let pos = w.positions();
    let mut out: Vec<(Word<D>, TripleSite)> = Vec::new();
    if w.chords.len() < 2 {
        return out;
    }
    for p in 0..len {
        let (e1, e2) = (w.ends[p], w.ends[(p + 1) % len]);
        if e1.arrow == e2.arrow {
            continue;
        }
        // (roles of the present arrows as (role, arrow), the missing role)
        let mut cases: Vec<([(Role, usize); 2], Role)> = Vec::new();
        match (e1.head, e2.head) {
            (false, false) => {
                cases.push(([(Role::TM, e1.arrow), (Role::TB, e2.arrow)], Role::MB));
                cases.push(([(Role::TM, e2.arrow), (Role::TB, e1.arrow)], Role::MB));
            }
            (true, false) => cases.push(([(Role::TM, e1.arrow), (Role::MB, e2.arrow)], Role::TB)),
            (false, true) => cases.push(([(Role::TM, e2.arrow), (Role::MB, e1.arrow)], Role::TB)),
            (true, true) => {
                cases.push(([(Role::TB, e1.arrow), (Role::MB, e2.arrow)], Role::TM));
                cases.push(([(Role::TB, e2.arrow), (Role::MB, e1.arrow)], Role::TM));
            }
        }
        for (present, missing) in cases {
            let arrow_of = |r: Role| present.iter().find(|(q, _)| *q == r).map(|&(_, a)| a);
            // anchors: (role, head?) of the endpoints next to which the new tail and head go
            let (tail_anchor, head_anchor) = match missing {
                Role::MB => ((Role::TM, true), (Role::TB, true)),
                Role::TB => ((Role::TM, false), (Role::MB, true)),
                Role::TM => ((Role::TB, false), (Role::MB, false)),
            };
            let anchor_pos = |(r, head): (Role, bool)| {
                let (t, h) = pos[arrow_of(r).expect("anchor present")];
                if head {
                    h
                } else {
                    t
                }
            };
            let (ta, ha) = (anchor_pos(tail_anchor), anchor_pos(head_anchor));
            for (ts, hs) in [(false, false), (false, true), (true, false), (true, true)] {
                let filler = Chord { mark: 0, deco: D::from_sign(Sign::Pos) };
                let mut full = insert_arrow(w, filler, (ta, ts), (ha, hs));
                let new_id = full.chords.len() - 1;
                let mut arrows = [0; 3];
                for r in Role::ALL {
                    arrows[r.index()] = if r == missing { new_id } else { arrow_of(r).unwrap() };
                }
                let Some(site) = triple_site(&full, arrows) else { continue };
                let m = |r: Role| full.chords[arrows[r.index()]].mark;
                let k = full.k;
                full.chords[new_id].mark = match missing {
                    Role::TB => templates::r3_mark_tb(m(Role::TM), m(Role::MB), k, site.cyc_tmb),
                    Role::MB => templates::r3_mark_mb(m(Role::TM), m(Role::TB), k, site.cyc_tmb),
                    Role::TM => templates::r3_mark_tm(m(Role::TB), m(Role::MB), k, site.cyc_tmb),
                };
                if D::SIGNED {
                    let sigma = templates::r3_signs(site.orders);
                    let [(r0, a0), (r1, a1)] = present;
                    let nu = full.chords[a0].deco.sign() * sigma[r0.index()];
                    if full.chords[a1].deco.sign() != nu * sigma[r1.index()] {
                        continue;
                    }
                    full.chords[new_id].deco = D::from_sign(nu * sigma[missing.index()]);
                }
                if !out.iter().any(|(x, _)| *x == full) {
                    out.push((full, site));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// first and second move configurations

/// Arrows of `w` drawn as a first-move kink: endpoints adjacent, marking `K` if
/// the tail comes first and `0` if the head comes first.
pub fn r1_arrows<D: Decoration>(w: &Word<D>) -> Vec<usize> {
    let len = w.ends.len();
    w.positions()
        .iter()
        .enumerate()
        .filter(|&(i, &(t, h))| {
            let m = w.chords[i].mark;
            let tail_first = (t + 1) % len == h && m == templates::r1_mark(true, w.k);
            let head_first = (h + 1) % len == t && m == templates::r1_mark(false, w.k);
            tail_first || head_first
        })
        .map(|(i, _)| i)
        .collect()
}

/// Pairs `(i, j)`, `i < j`, drawn as a second-move bigon: equal markings,
/// adjacent tails, adjacent heads, and opposite signs on signed words.
pub fn r2_pairs<D: Decoration>(w: &Word<D>) -> Vec<(usize, usize)> {
    let len = w.ends.len();
    let pos = w.positions();
    let n = w.chords.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (ci, cj) = (&w.chords[i], &w.chords[j]);
            if ci.mark != cj.mark || (D::SIGNED && ci.deco.sign() == cj.deco.sign()) {
                continue;
            }
            if adjacency(pos[i].0, pos[j].0, len).is_some() && adjacency(pos[i].1, pos[j].1, len).is_some() {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn has_r1_arrow<D: Decoration>(d: &Diagram<D>) -> bool {
    !r1_arrows(&d.word()).is_empty()
}

pub fn has_r2_pair<D: Decoration>(d: &Diagram<D>) -> bool {
    !r2_pairs(&d.word()).is_empty()
}

// ---------------------------------------------------------------------------
// instances through a diagram

/// Six-term instances (G6T or A6T) having `d` among their terms.
pub fn six_term_through<D: Decoration>(d: &Diagram<D>) -> Vec<LinComb<Diagram<D>>> {
    complete_pairs(&d.word()).iter().map(|(w, s)| six_term_vector(w, s)).filter(|v| !v.is_zero()).collect()
}

/// Two-term instances (G2T or A2T) having `d` among their terms.
pub fn two_term_through<D: Decoration>(d: &Diagram<D>) -> Vec<LinComb<Diagram<D>>> {
    let w = d.word();
    find_triples(&w)
        .iter()
        .filter(|s| triple_signs_ok(&w, s))
        .map(|s| two_term_vector(&w, s))
        .filter(|v| !v.is_zero())
        .collect()
}

/// Eight-term instances having `d` either as a triple term or as a pair term.
pub fn eight_term_through(d: &GaussDiagram) -> Vec<LinComb<GaussDiagram>> {
    let w = d.word();
    let mut fulls: Vec<(Word<Sign>, TripleSite)> =
        find_triples(&w).into_iter().filter(|s| triple_signs_ok(&w, s)).map(|s| (w.clone(), s)).collect();
    fulls.extend(complete_pairs(&w));
    fulls
        .iter()
        .map(|(w, s)| &six_term_vector(w, s) + &two_term_vector(w, s))
        .filter(|v| !v.is_zero())
        .collect()
}

/// `G + G'` for each arrow, `G'` being `G` with that arrow's sign reversed.
pub fn p2h1_through(d: &GaussDiagram) -> Vec<LinComb<GaussDiagram>> {
    let w = d.word();
    (0..w.chords.len())
        .map(|i| {
            let mut f = w.clone();
            f.chords[i].deco = f.chords[i].deco.flip();
            let mut v = LinComb::single(d.clone());
            v.add_int(f.canonical(), 1);
            v
        })
        .collect()
}

fn p2_full_vector(w: &Word<Sign>, i: usize, j: usize) -> LinComb<GaussDiagram> {
    let mut v = LinComb::single(w.canonical());
    v.add_int(without(w, i), 1);
    v.add_int(without(w, j), 1);
    v
}

/// Full second-move instances having `d` as the bigon term or as a one-arrow-less term.
pub fn p2_full_through(d: &GaussDiagram) -> Vec<LinComb<GaussDiagram>> {
    let w = d.word();
    let mut out: Vec<LinComb<GaussDiagram>> = r2_pairs(&w).into_iter().map(|(i, j)| p2_full_vector(&w, i, j)).collect();
    let pos = w.positions();
    for (a, &(t, h)) in pos.iter().enumerate() {
        let c = &w.chords[a];
        let partner = Chord { mark: c.mark, deco: c.deco.flip() };
        for ts in [false, true] {
            for hs in [false, true] {
                let full = insert_arrow(&w, partner.clone(), (t, ts), (h, hs));
                let b = full.chords.len() - 1;
                if r2_pairs(&full).contains(&(a, b)) {
                    out.push(p2_full_vector(&full, a, b));
                }
            }
        }
    }
    out
}

/// Instances of a diagram-valued family having `d` among their terms (unrestricted).
pub fn gauss_instances_through(family: Family, d: &GaussDiagram) -> Vec<LinComb<GaussDiagram>> {
    match family {
        Family::P1 => single(d, has_r1_arrow(d)),
        Family::P2h2 => single(d, has_r2_pair(d)),
        Family::P2h1 => p2h1_through(d),
        Family::P2 => p2_full_through(d),
        Family::P3 => eight_term_through(d),
        Family::G6T => six_term_through(d),
        Family::G2T => two_term_through(d),
        _ => Vec::new(),
    }
}

pub fn arrow_instances_through(family: Family, d: &ArrowDiagram) -> Vec<LinComb<ArrowDiagram>> {
    match family {
        Family::AP1 => single(d, has_r1_arrow(d)),
        Family::AP2 => single(d, has_r2_pair(d)),
        Family::A6T => six_term_through(d),
        Family::A2T => two_term_through(d),
        _ => Vec::new(),
    }
}

fn single<D: Decoration>(d: &Diagram<D>, cond: bool) -> Vec<LinComb<Diagram<D>>> {
    if cond {
        vec![LinComb::single(d.clone())]
    } else {
        Vec::new()
    }
}

/// Restricts (or filters, in closed mode), normalizes and deduplicates raw instances.
pub(crate) fn collect_instances<T: Marked + Ord + Clone + std::hash::Hash>(
    raw: impl IntoIterator<Item = LinComb<T>>,
    window: &MarkingWindow,
    mode: WindowMode,
    seen: &mut HashSet<LinComb<T>>,
    skips: &mut SkipReport,
) -> Vec<LinComb<T>> {
    let mut out = Vec::new();
    for v in raw {
        let r = window.restrict(&v);
        if mode == WindowMode::Closed && r.len() != v.len() {
            skips.skipped += 1;
            continue;
        }
        if r.is_zero() {
            continue;
        }
        let r = r.normalized();
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out
}

/// Every instance of `family` at degree `n` (the degree of its largest terms)
/// with at least one term in the window. In closed mode only the instances
/// lying entirely in the window are kept.
pub fn gen_family(
    family: Family,
    n: usize,
    window: &MarkingWindow,
    mode: WindowMode,
) -> (Vec<RelationInstance>, SkipReport) {
    let mut skips = SkipReport::default();
    let vals = window.values();
    let k = window.k();
    let wrap_g = |v: LinComb<GaussDiagram>| RelationInstance { family, vector: RelationVector::Gauss(v) };
    let wrap_a = |v: LinComb<ArrowDiagram>| RelationInstance { family, vector: RelationVector::Arrow(v) };
    let mut out: Vec<RelationInstance> = match family {
        Family::P1 | Family::P2 | Family::P2h1 | Family::P2h2 | Family::P3 | Family::G6T | Family::G2T => {
            let mut seen = HashSet::new();
            let mut all = Vec::new();
            for d in enumerate_diagrams::<Sign>(n, &vals, k) {
                let raw: Vec<_> = gauss_instances_through(family, &d)
                    .into_iter()
                    .filter(|v| v.keys().map(|t| t.degree()).max() == Some(n))
                    .collect();
                all.extend(collect_instances(raw, window, mode, &mut seen, &mut skips));
            }
            all.into_iter().map(wrap_g).collect()
        }
        Family::AP1 | Family::AP2 | Family::A6T | Family::A2T => {
            let mut seen = HashSet::new();
            let mut all = Vec::new();
            for d in enumerate_diagrams::<()>(n, &vals, k) {
                let raw = arrow_instances_through(family, &d);
                all.extend(collect_instances(raw, window, mode, &mut seen, &mut skips));
            }
            all.into_iter().map(wrap_a).collect()
        }
        Family::Triangle => {
            let mut seen = HashSet::new();
            let mut all = Vec::new();
            for dd in boundary::enumerate_degenerate(n, &vals, k) {
                if let Some(r) = boundary::triangle_relation(&dd) {
                    all.extend(collect_instances([r], window, mode, &mut seen, &mut skips));
                }
            }
            all.into_iter().map(|v| RelationInstance { family, vector: RelationVector::Degenerate(v) }).collect()
        }
        Family::Based6T => {
            let mut seen = HashSet::new();
            let mut all = Vec::new();
            for dd in boundary::enumerate_degenerate(n, &vals, k) {
                if dd.is_monotonic() {
                    let r = boundary::based_six_term(&dd);
                    all.extend(collect_instances([r], window, mode, &mut seen, &mut skips));
                }
            }
            all.into_iter().map(|v| RelationInstance { family, vector: RelationVector::Based(v) }).collect()
        }
    };
    out.sort_by_key(|i| format!("{:?}", i.vector));
    (out, skips)
}

/// The constraint set whose kernel is the formula space at degree `n`: `AP1`, `AP2` and `A6T`.
pub fn gen_all_constraints(n: usize, window: &MarkingWindow, mode: WindowMode) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for f in [Family::AP1, Family::AP2, Family::A6T] {
        out.extend(gen_family(f, n, window, mode).0);
    }
    out
}

// ---------------------------------------------------------------------------
// Reidemeister relations and the map I

/// Differences of the two sides of a move, as Gauss combinations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveRelation {
    pub kind: &'static str,
    pub vector: LinComb<GaussDiagram>,
}

fn arcs_of(len: usize) -> usize {
    len.max(1)
}

/// Inserts a sequence of endpoints on arc `arc` (between positions `arc` and `arc + 1`).
pub(crate) fn insert_on_arc<D: Clone>(w: &Word<D>, arc: usize, seq: &[End], chords: &[Chord<D>]) -> Word<D> {
    let mut ends = Vec::with_capacity(w.ends.len() + seq.len());
    if w.ends.is_empty() {
        ends.extend_from_slice(seq);
    } else {
        for (p, e) in w.ends.iter().enumerate() {
            ends.push(*e);
            if p == arc {
                ends.extend_from_slice(seq);
            }
        }
    }
    let mut all = w.chords.clone();
    all.extend_from_slice(chords);
    Word { k: w.k, ends, chords: all }
}

/// All move relations whose larger side has degree at most `max_degree` and
/// whose markings lie in the window.
pub fn r_relations(max_degree: usize, window: &MarkingWindow) -> Vec<MoveRelation> {
    let vals = window.values();
    let k = window.k();
    let mut seen: HashSet<LinComb<GaussDiagram>> = HashSet::new();
    let mut out = Vec::new();
    let mut push = |kind: &'static str, v: LinComb<GaussDiagram>, out: &mut Vec<MoveRelation>| {
        if !v.is_zero() {
            let v = v.normalized();
            if seen.insert(v.clone()) {
                out.push(MoveRelation { kind, vector: v });
            }
        }
    };
    for m in 0..max_degree {
        for g in enumerate_diagrams::<Sign>(m, &vals, k) {
            let w = g.word();
            let id = w.chords.len();
            for arc in 0..arcs_of(w.ends.len()) {
                for tail_first in [true, false] {
                    let mark = templates::r1_mark(tail_first, k);
                    if !window.contains(mark) {
                        continue;
                    }
                    for s in [Sign::Pos, Sign::Neg] {
                        let seq = if tail_first { [End::tail(id), End::head(id)] } else { [End::head(id), End::tail(id)] };
                        let big = insert_on_arc(&w, arc, &seq, &[Chord { mark, deco: s }]).canonical();
                        let mut v = LinComb::single(big);
                        v.add_int(g.clone(), -1);
                        push("R1", v, &mut out);
                    }
                }
            }
        }
    }
    for m in 0..max_degree.saturating_sub(1) {
        for g in enumerate_diagrams::<Sign>(m, &vals, k) {
            for big in r2_insertions(&g, &vals) {
                let mut v = LinComb::single(big);
                v.add_int(g.clone(), -1);
                push("R2", v, &mut out);
            }
        }
    }
    if max_degree >= 3 {
        for m in 3..=max_degree {
            for g in enumerate_diagrams::<Sign>(m, &vals, k) {
                let w = g.word();
                for site in find_triples(&w) {
                    if triple_signs_ok(&w, &site) {
                        let mut v = LinComb::single(g.clone());
                        v.add_int(swap_slots(&w, &site).canonical(), -1);
                        push("R3", v, &mut out);
                    }
                }
            }
        }
    }
    out
}

/// Every diagram obtained from `g` by a second move inserting a bigon with a marking from `marks`.
pub fn r2_insertions(g: &GaussDiagram, marks: &[i64]) -> Vec<GaussDiagram> {
    let w = g.word();
    let arcs = arcs_of(w.ends.len());
    let (a, b) = (w.chords.len(), w.chords.len() + 1);
    let mut out = BTreeSet::new();
    for &mark in marks {
        let chords = [Chord { mark, deco: Sign::Pos }, Chord { mark, deco: Sign::Neg }];
        for ta in 0..arcs {
            for ha in 0..arcs {
                for tail_order in [[a, b], [b, a]] {
                    for head_order in [[a, b], [b, a]] {
                        let tails = tail_order.map(End::tail);
                        let heads = head_order.map(End::head);
                        if ta == ha {
                            for tails_first in [true, false] {
                                let seq: Vec<End> = if tails_first {
                                    tails.iter().chain(heads.iter()).copied().collect()
                                } else {
                                    heads.iter().chain(tails.iter()).copied().collect()
                                };
                                out.insert(insert_on_arc(&w, ta, &seq, &chords).canonical());
                            }
                        } else {
                            let w1 = insert_on_arc(&w, ta, &tails, &chords);
                            // the head arc index shifts by two when it lies after the tail arc
                            let ha1 = if ha > ta { ha + 2 } else { ha };
                            out.insert(insert_on_arc(&w1, ha1, &heads, &[]).canonical());
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Outcome of checking that `I` maps move relations into the span of the Polyak relations.
#[derive(Clone, Debug, Default)]
pub struct SpanCompatReport {
    pub checked: usize,
    pub failures: Vec<MoveRelation>,
}

impl SpanCompatReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Polyak relation instances (`P1`, `P2`, `P3`) touching any term of `x`.
pub fn polyak_rows_through(x: &LinComb<GaussDiagram>) -> Vec<LinComb<GaussDiagram>> {
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for d in x.keys() {
        for f in [Family::P1, Family::P2, Family::P3] {
            for v in gauss_instances_through(f, d) {
                let v = v.normalized();
                if seen.insert(v.clone()) {
                    rows.push(v);
                }
            }
        }
    }
    rows
}

pub fn check_i_span_compat(max_degree: usize, window: &MarkingWindow) -> SpanCompatReport {
    let mut report = SpanCompatReport::default();
    for r in r_relations(max_degree, window) {
        let image = subdiagram_expand_i(&r.vector);
        let rows = polyak_rows_through(&image);
        report.checked += 1;
        if !crate::linalg::in_span_lin(&image, &rows) {
            report.failures.push(r);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Arrow;

    fn ad(k: i64, spec: &[(usize, usize, i64)]) -> ArrowDiagram {
        ArrowDiagram::new(k, spec.iter().map(|&(tail, head, mark)| Arrow { tail, head, mark, deco: () }).collect())
            .unwrap()
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("p4".parse::<Family>().is_err());
    }

    #[test]
    fn r1_markings() {
        // t h, marking K
        assert!(has_r1_arrow(&ad(5, &[(0, 1, 5), (2, 4, 1), (3, 5, 1)])));
        assert!(!has_r1_arrow(&ad(5, &[(0, 1, 0), (2, 4, 1), (3, 5, 1)])));
        // h t, marking 0
        assert!(has_r1_arrow(&ad(5, &[(1, 0, 0), (2, 4, 1), (3, 5, 1)])));
        // one arrow: both readings
        assert!(has_r1_arrow(&ad(5, &[(0, 1, 0)])));
        assert!(has_r1_arrow(&ad(5, &[(0, 1, 5)])));
        assert!(!has_r1_arrow(&ad(5, &[(0, 1, 2)])));
    }

    #[test]
    fn r2_configurations() {
        assert!(has_r2_pair(&ad(5, &[(0, 2, 3), (1, 3, 3)])));
        assert!(has_r2_pair(&ad(5, &[(0, 3, 3), (1, 2, 3)])));
        assert!(!has_r2_pair(&ad(5, &[(0, 2, 3), (1, 3, 4)])));
        assert!(!has_r2_pair(&ad(5, &[(0, 3, 3), (1, 5, 3), (2, 4, 1)])));
    }

    #[test]
    fn ap1_at_degree_one() {
        let w = MarkingWindow::new([0, 1, 2], 2);
        let (inst, _) = gen_family(Family::AP1, 1, &w, WindowMode::Restrict);
        let got: BTreeSet<i64> = inst
            .iter()
            .map(|i| match &i.vector {
                RelationVector::Arrow(v) => v.keys().next().unwrap().arrows()[0].mark,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(got, BTreeSet::from([0, 2]));
    }

    #[test]
    fn degree_one_has_no_six_term() {
        let w = MarkingWindow::new([1, 2], 3);
        assert!(gen_family(Family::A6T, 1, &w, WindowMode::Restrict).0.is_empty());
        assert!(gen_family(Family::AP2, 1, &w, WindowMode::Restrict).0.is_empty());
    }

    #[test]
    fn completions_are_valid_triples() {
        let d = ad(4, &[(0, 3, 1), (1, 5, 2), (2, 4, 3)]);
        for (w, site) in complete_pairs(&d.word()) {
            assert!(triple_marks_ok(&w, &site));
            assert!(triple_site(&w, site.arrows).is_some());
        }
    }

    #[test]
    fn six_term_instances_are_nonzero_and_homogeneous() {
        let w = MarkingWindow::new([1, 2, 3], 4);
        let (inst, _) = gen_family(Family::A6T, 2, &w, WindowMode::Restrict);
        assert!(!inst.is_empty());
        for i in inst {
            let RelationVector::Arrow(v) = i.vector else { panic!() };
            assert!(!v.is_zero());
            assert!(v.keys().all(|d| d.degree() == 2 && w.admits(d)));
        }
    }
}
