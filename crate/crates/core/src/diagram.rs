//! Decorated Gauss and arrow diagrams on an oriented circle.
//!
//! A diagram of degree `n` has `2n` endpoint positions `0..2n` read along the
//! circle orientation. Every arrow joins a tail position to a head position and
//! carries an integer marking; Gauss diagrams additionally carry a sign per
//! arrow. The whole circle carries the global marking `K`.
//!
//! Values of [`Diagram`] are always canonical: among the `2n` rotations of the
//! endpoint labels the lexicographically least token stream is kept, so equality
//! of diagrams is equality up to rotation.

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

/// Per-arrow decoration: a sign for Gauss diagrams, nothing for arrow diagrams.
pub trait Decoration: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    /// Header keyword used by the text format.
    const SPECIES: &'static str;
    /// Whether the decoration is a sign.
    const SIGNED: bool;

    fn from_sign(s: Sign) -> Self;

    /// The sign carried, `+` for unsigned decorations.
    fn sign(self) -> Sign;
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn from_value(v: i64) -> Sign {
        if v < 0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

impl Decoration for Sign {
    const SPECIES: &'static str = "gauss";
    const SIGNED: bool = true;

    fn from_sign(s: Sign) -> Self {
        s
    }

    fn sign(self) -> Sign {
        self
    }
}

impl Decoration for () {
    const SPECIES: &'static str = "arrow";
    const SIGNED: bool = false;

    fn from_sign(_: Sign) -> Self {}

    fn sign(self) -> Sign {
        Sign::Pos
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arrow<D> {
    pub tail: usize,
    pub head: usize,
    pub mark: i64,
    pub deco: D,
}

/// One endpoint in a circular word: which arrow it belongs to and whether it is the head.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct End {
    pub arrow: usize,
    pub head: bool,
}

impl End {
    pub fn tail(arrow: usize) -> End {
        End { arrow, head: false }
    }

    pub fn head(arrow: usize) -> End {
        End { arrow, head: true }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Chord<D> {
    pub mark: i64,
    pub deco: D,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("endpoint index {0} is out of range for {1} arrows")]
    OutOfRange(usize, usize),
    #[error("endpoint index {0} is used twice")]
    Duplicate(usize),
    #[error("endpoint index {0} is missing")]
    Missing(usize),
    #[error("arrow {0} has identical tail and head")]
    Loop(usize),
}

/// A circular word of endpoints together with the arrow data.
///
/// This is the working (non-canonical) representation used while splicing
/// templates, applying moves or taking subdiagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word<D> {
    pub k: i64,
    pub ends: Vec<End>,
    pub chords: Vec<Chord<D>>,
}

impl<D: Decoration> Word<D> {
    pub fn new(k: i64, ends: Vec<End>, chords: Vec<Chord<D>>) -> Self {
        debug_assert_eq!(ends.len(), 2 * chords.len());
        Word { k, ends, chords }
    }

    pub fn degree(&self) -> usize {
        self.chords.len()
    }

    /// Rebuilds a word after dropping arrows: arrow ids are compacted in order.
    pub fn retain_arrows(&self, keep: impl Fn(usize) -> bool) -> Word<D> {
        let mut remap = vec![usize::MAX; self.chords.len()];
        let mut chords = Vec::new();
        for (i, c) in self.chords.iter().enumerate() {
            if keep(i) {
                remap[i] = chords.len();
                chords.push(c.clone());
            }
        }
        let ends = self
            .ends
            .iter()
            .filter(|e| remap[e.arrow] != usize::MAX)
            .map(|e| End { arrow: remap[e.arrow], head: e.head })
            .collect();
        Word { k: self.k, ends, chords }
    }

    /// Token stream read from position `start`, arrows renumbered by first occurrence.
    fn tokens_from(&self, start: usize) -> Vec<(usize, bool, i64, D)> {
        let len = self.ends.len();
        let mut order = vec![usize::MAX; self.chords.len()];
        let mut next = 0;
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let e = self.ends[(start + i) % len];
            if order[e.arrow] == usize::MAX {
                order[e.arrow] = next;
                next += 1;
            }
            let c = &self.chords[e.arrow];
            out.push((order[e.arrow], e.head, c.mark, c.deco));
        }
        out
    }

    /// Least token stream over all rotations, and how many rotations realise it.
    fn least_rotation(&self) -> (usize, usize) {
        let len = self.ends.len();
        if len == 0 {
            return (0, 1);
        }
        let mut best = self.tokens_from(0);
        let mut best_r = 0;
        let mut ties = 1;
        for r in 1..len {
            let t = self.tokens_from(r);
            match t.cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = t;
                    best_r = r;
                    ties = 1;
                }
                std::cmp::Ordering::Equal => ties += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        (best_r, ties)
    }

    /// The word read from `start`, with arrows renumbered by first occurrence.
    pub fn rotated(&self, start: usize) -> Word<D> {
        let len = self.ends.len();
        if len == 0 {
            return self.clone();
        }
        let mut order = vec![usize::MAX; self.chords.len()];
        let mut chords = Vec::with_capacity(self.chords.len());
        let mut ends = Vec::with_capacity(len);
        for i in 0..len {
            let e = self.ends[(start + i) % len];
            if order[e.arrow] == usize::MAX {
                order[e.arrow] = chords.len();
                chords.push(self.chords[e.arrow].clone());
            }
            ends.push(End { arrow: order[e.arrow], head: e.head });
        }
        Word { k: self.k, ends, chords }
    }

    pub fn canonical(&self) -> Diagram<D> {
        let (r, _) = self.least_rotation();
        let w = self.rotated(r);
        Diagram::from_normal_word(&w)
    }

    /// Positions `(tail, head)` of every arrow.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); self.chords.len()];
        for (p, e) in self.ends.iter().enumerate() {
            if e.head {
                pos[e.arrow].1 = p;
            } else {
                pos[e.arrow].0 = p;
            }
        }
        pos
    }
}

/// A canonical Gauss diagram (`D = Sign`) or arrow diagram (`D = ()`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Diagram<D> {
    k: i64,
    /// Sorted by first endpoint position.
    arrows: Vec<Arrow<D>>,
}

pub type GaussDiagram = Diagram<Sign>;
pub type ArrowDiagram = Diagram<()>;

impl<D: Decoration> Diagram<D> {
    /// Validates the endpoint permutation and canonicalizes.
    pub fn new(k: i64, arrows: Vec<Arrow<D>>) -> Result<Self, DiagramError> {
        Ok(Self::validated_word(k, &arrows)?.canonical())
    }

    fn validated_word(k: i64, arrows: &[Arrow<D>]) -> Result<Word<D>, DiagramError> {
        let n = arrows.len();
        let mut slots: Vec<Option<End>> = vec![None; 2 * n];
        for (i, a) in arrows.iter().enumerate() {
            if a.tail == a.head {
                return Err(DiagramError::Loop(i));
            }
            for (p, head) in [(a.tail, false), (a.head, true)] {
                if p >= 2 * n {
                    return Err(DiagramError::OutOfRange(p, n));
                }
                if slots[p].is_some() {
                    return Err(DiagramError::Duplicate(p));
                }
                slots[p] = Some(End { arrow: i, head });
            }
        }
        let ends = slots
            .iter()
            .enumerate()
            .map(|(p, s)| s.ok_or(DiagramError::Missing(p)))
            .collect::<Result<Vec<_>, _>>()?;
        let chords = arrows.iter().map(|a| Chord { mark: a.mark, deco: a.deco }).collect();
        Ok(Word { k, ends, chords })
    }

    /// The diagram without arrows, marked `k`.
    pub fn empty(k: i64) -> Self {
        Diagram { k, arrows: Vec::new() }
    }

    pub fn from_word(w: &Word<D>) -> Self {
        w.canonical()
    }

    fn from_normal_word(w: &Word<D>) -> Self {
        let pos = w.positions();
        let mut arrows: Vec<Arrow<D>> = w
            .chords
            .iter()
            .zip(pos)
            .map(|(c, (tail, head))| Arrow { tail, head, mark: c.mark, deco: c.deco })
            .collect();
        arrows.sort_by_key(|a| a.tail.min(a.head));
        Diagram { k: w.k, arrows }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow<D>] {
        &self.arrows
    }

    pub fn word(&self) -> Word<D> {
        let n = self.arrows.len();
        let mut ends = vec![End::tail(0); 2 * n];
        for (i, a) in self.arrows.iter().enumerate() {
            ends[a.tail] = End::tail(i);
            ends[a.head] = End::head(i);
        }
        let chords = self.arrows.iter().map(|a| Chord { mark: a.mark, deco: a.deco }).collect();
        Word { k: self.k, ends, chords }
    }

    /// Relabels endpoints by `p -> p - r (mod 2n)` without canonicalizing.
    pub fn rotated_arrows(&self, r: usize) -> Vec<Arrow<D>> {
        let len = 2 * self.arrows.len();
        if len == 0 {
            return Vec::new();
        }
        let r = r % len;
        self.arrows
            .iter()
            .map(|a| Arrow {
                tail: (a.tail + len - r) % len,
                head: (a.head + len - r) % len,
                mark: a.mark,
                deco: a.deco,
            })
            .collect()
    }

    /// Number of rotations fixing the diagram; 1 for the empty diagram.
    pub fn aut_order(&self) -> usize {
        self.word().least_rotation().1
    }

    /// Subdiagram on the given arrow indices (indices into [`Diagram::arrows`]).
    pub fn subdiagram(&self, subset: &[usize]) -> Diagram<D> {
        let mut keep = vec![false; self.arrows.len()];
        for &i in subset {
            keep[i] = true;
        }
        self.word().retain_arrows(|i| keep[i]).canonical()
    }

    pub fn map_deco<E: Decoration>(&self, f: impl Fn(usize, D) -> E) -> Diagram<E> {
        let w = self.word();
        let chords = w
            .chords
            .iter()
            .enumerate()
            .map(|(i, c)| Chord { mark: c.mark, deco: f(i, c.deco) })
            .collect();
        Word { k: w.k, ends: w.ends, chords }.canonical()
    }

    /// Set of markings carried by the arrows.
    pub fn marks(&self) -> impl Iterator<Item = i64> + '_ {
        self.arrows.iter().map(|a| a.mark)
    }
}

impl GaussDiagram {
    pub fn forget_signs(&self) -> ArrowDiagram {
        self.map_deco(|_, _| ())
    }

    pub fn sign_product(&self) -> i64 {
        self.arrows.iter().map(|a| a.deco.value()).product()
    }
}

impl ArrowDiagram {
    /// `A^σ`: decorate arrow `i` (canonical order) with `signs[i]`.
    pub fn with_signs(&self, signs: &[Sign]) -> GaussDiagram {
        self.map_deco(|i, _| signs[i])
    }

    /// `A^+`: every arrow signed `+`.
    pub fn all_positive(&self) -> GaussDiagram {
        self.map_deco(|_, _| Sign::Pos)
    }
}

/// Do the chords `(a0, a1)` and `(b0, b1)` interleave on the circle?
pub fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let (lo, hi) = if a.0 < a.1 { (a.0, a.1) } else { (a.1, a.0) };
    let inside = |p: usize| lo < p && p < hi;
    inside(b.0) != inside(b.1)
}
