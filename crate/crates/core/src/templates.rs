//! Transcription tables for the local move pictures.
//!
//! Everything that encodes the pictures of the Reidemeister moves on decorated
//! Gauss diagrams lives here, so the relation generators, the move simulator
//! and the boundary map share one source. The digest of this table is part of
//! the solver cache key.
//!
//! Conventions. An arrow points from the overpassing strand to the underpassing
//! one. Its marking is the homology class of the arc of the circle running from
//! its head to its tail along the orientation. The sign of a crossing is the
//! sign of `d_over × d_under`.
//!
//! Third move. The three strands are called top, middle and bottom. The arrows
//! are `TM`, `TB` and `MB`. Each strand carries two endpoints next to each other
//! on the circle (its slot): the tails of `TM` and `TB` on the top strand, the
//! head of `TM` and the tail of `MB` on the middle strand, the heads of `TB` and
//! `MB` on the bottom strand. The move reverses the order inside every slot and
//! keeps signs and markings.

use crate::diagram::Sign;

/// Arrow roles in a third-move triple.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Role {
    TM,
    TB,
    MB,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::TM, Role::TB, Role::MB];

    pub fn index(self) -> usize {
        match self {
            Role::TM => 0,
            Role::TB => 1,
            Role::MB => 2,
        }
    }
}

/// Slots (strands) of a triple, named after the strand.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Slot {
    T,
    M,
    B,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::T, Slot::M, Slot::B];

    /// The two arrows meeting in this slot, with the role of each endpoint (`true` for a head).
    pub fn members(self) -> [(Role, bool); 2] {
        match self {
            Slot::T => [(Role::TM, false), (Role::TB, false)],
            Slot::M => [(Role::TM, true), (Role::MB, false)],
            Slot::B => [(Role::TB, true), (Role::MB, true)],
        }
    }

    /// The slot shared by the two arrows of a pair (the pair missing `third`).
    pub fn of_pair_without(third: Role) -> Slot {
        match third {
            Role::MB => Slot::T,
            Role::TB => Slot::M,
            Role::TM => Slot::B,
        }
    }
}

/// In-slot orders of a triple: `true` when the first member listed by
/// [`Slot::members`] comes first along the circle.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SlotOrders {
    pub t: bool,
    pub m: bool,
    pub b: bool,
}

impl SlotOrders {
    pub fn swapped(self) -> SlotOrders {
        SlotOrders { t: !self.t, m: !self.m, b: !self.b }
    }

    pub fn get(self, s: Slot) -> bool {
        match s {
            Slot::T => self.t,
            Slot::M => self.m,
            Slot::B => self.b,
        }
    }
}

/// Realizable triples: in-slot orders and signs `[TM, TB, MB]`, up to
/// negating all three signs. The table does not depend on the cyclic order
/// in which the circle visits the three strands.
pub const R3_TABLE: [(SlotOrders, [i8; 3]); 8] = [
    (SlotOrders { t: true, m: true, b: true }, [1, 1, 1]),
    (SlotOrders { t: true, m: true, b: false }, [1, -1, -1]),
    (SlotOrders { t: true, m: false, b: true }, [1, -1, 1]),
    (SlotOrders { t: true, m: false, b: false }, [1, 1, -1]),
    (SlotOrders { t: false, m: true, b: true }, [1, 1, -1]),
    (SlotOrders { t: false, m: true, b: false }, [1, -1, 1]),
    (SlotOrders { t: false, m: false, b: true }, [1, -1, -1]),
    (SlotOrders { t: false, m: false, b: false }, [1, 1, 1]),
];

/// Signs `[TM, TB, MB]` of a triple with the given in-slot orders (normalized with `TM = +`).
pub fn r3_signs(o: SlotOrders) -> [Sign; 3] {
    let row = R3_TABLE.iter().find(|(k, _)| *k == o).expect("table covers all orders");
    row.1.map(|s| Sign::from_value(s as i64))
}

/// Marking of `TB` forced by the others. `cyc_tmb` says the circle meets the
/// slots in the cyclic order top, middle, bottom.
pub fn r3_mark_tb(m_tm: i64, m_mb: i64, k: i64, cyc_tmb: bool) -> i64 {
    m_tm + m_mb - if cyc_tmb { k } else { 0 }
}

pub fn r3_mark_mb(m_tm: i64, m_tb: i64, k: i64, cyc_tmb: bool) -> i64 {
    m_tb - m_tm + if cyc_tmb { k } else { 0 }
}

pub fn r3_mark_tm(m_tb: i64, m_mb: i64, k: i64, cyc_tmb: bool) -> i64 {
    m_tb - m_mb + if cyc_tmb { k } else { 0 }
}

/// Marking of a first-move arrow whose endpoints are adjacent: `K` when the
/// tail comes first, `0` when the head comes first. On a one-arrow circle
/// both readings apply.
pub fn r1_mark(tail_first: bool, k: i64) -> i64 {
    if tail_first {
        k
    } else {
        0
    }
}

/// Triangle rewrite of a tail-tail fusion: the tail of `moved` is moved next to
/// the head of `kept`. `kept_head_first` says the head of `kept` comes before
/// the head of `moved` when reading from the fused point.
pub fn triangle_mark_tails(m_kept: i64, m_moved: i64, k: i64, kept_head_first: bool) -> i64 {
    m_moved - m_kept + if kept_head_first { k } else { 0 }
}

/// Triangle rewrite of a head-head fusion: the head of `moved` is moved next to
/// the tail of `kept`. `moved_tail_first` says the tail of `moved` comes before
/// the tail of `kept` when reading from the fused point.
pub fn triangle_mark_heads(m_kept: i64, m_moved: i64, k: i64, moved_tail_first: bool) -> i64 {
    m_moved - m_kept + if moved_tail_first { k } else { 0 }
}

/// Stable text of the tables, hashed into cache keys.
pub fn table_digest_source() -> String {
    let mut s = String::from("r3:");
    for (o, signs) in R3_TABLE.iter() {
        s.push_str(&format!("{}{}{}{:?};", o.t as u8, o.m as u8, o.b as u8, signs));
    }
    s.push_str("r3mark:tm+mb-k[tmb];r1:k-if-tail-first;tri-tt:moved-kept+k[kept-first];tri-hh:moved-kept+k[moved-first];v1");
    s
}
