//! Array layout and value bands.
//!
//! A graph lives in a single word array `A` of `N = n + L + 2` cells:
//! `A[0] = n`, `A[1..=n]` is the offset table `T` (indexed by vertex name),
//! `A[n+1] = L` (the total adjacency length: `m` for directed graphs, `2m`
//! for undirected ones), and `A[n+2..=n+L+1]` holds the adjacency arrays in
//! vertex order, each internally strictly ascending.
//!
//! The in-place traversals tell pointers, names and marks apart purely by
//! value range.  With `w >= ceil(log2(3n + 2L + 4))` the following disjoint
//! bands fit in a word:
//!
//! * names        `[1, n]`
//! * positions    `[n+2, n+L+1]`        (indices into the adjacency region)
//! * sentinel     `n+L+2`               (visited degree-0 marker)
//! * deg0ref      `[n+L+3, 2n+L+2]`     (vertex name x encoded as x+(n+L+2))
//! * done marks   value + (n+L+1), i.e. donePos `[2n+L+3, 2n+2L+2]` and
//!   doneD0 `[2n+2L+4, 3n+2L+3]`

use crate::error::{Error, Result};
use crate::ram::WordArray;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub n: u64,
    pub l: u64,
}

/// Which band a cell value falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    Zero,
    Name,
    /// The unused value `n+1` (never stored by any representation).
    Gap,
    Position,
    Sentinel,
    Deg0Ref,
    DonePos,
    DoneD0,
    OutOfBand,
}

impl Layout {
    /// Reads and checks the header cells of `a`.
    pub fn of(a: &WordArray) -> Result<Layout> {
        if a.len() < 3 {
            return Err(Error::Representation(format!(
                "array of {} cells is too short for a header",
                a.len()
            )));
        }
        let n = a.peek(0)?;
        if n == 0 {
            return Err(Error::Representation("header cell A[0] = n is zero".into()));
        }
        if (n + 1) as usize >= a.len() {
            return Err(Error::Representation(format!(
                "n = {n} does not fit in an array of {} cells",
                a.len()
            )));
        }
        let l = a.peek(n + 1)?;
        let expect = n + l + 2;
        if expect as usize != a.len() {
            return Err(Error::Representation(format!(
                "array has {} cells but n = {n}, L = {l} require {expect}",
                a.len()
            )));
        }
        Ok(Layout { n, l })
    }

    pub fn cells(&self) -> u64 {
        self.n + self.l + 2
    }

    /// First adjacency cell index (`n+2`); only valid when `l > 0`.
    pub fn adj_first(&self) -> u64 {
        self.n + 2
    }

    /// Last adjacency cell index (`n+L+1`).
    pub fn adj_last(&self) -> u64 {
        self.n + self.l + 1
    }

    /// One past the adjacency region; also the visited-degree-0 sentinel.
    pub fn sentinel(&self) -> u64 {
        self.n + self.l + 2
    }

    /// Additive done-mark offset.
    pub fn done_offset(&self) -> u64 {
        self.n + self.l + 1
    }

    /// Minimal word width for the banded traversal on this layout.
    pub fn min_width(&self) -> u32 {
        let top = 3 * self.n + 2 * self.l + 3;
        (64 - top.leading_zeros()).max(8)
    }

    pub fn is_name(&self, v: u64) -> bool {
        (1..=self.n).contains(&v)
    }

    pub fn is_position(&self, v: u64) -> bool {
        self.l > 0 && (self.adj_first()..=self.adj_last()).contains(&v)
    }

    pub fn is_deg0ref(&self, v: u64) -> bool {
        (self.sentinel() + 1..=2 * self.n + self.l + 2).contains(&v)
    }

    pub fn deg0_encode(&self, name: u64) -> u64 {
        debug_assert!(self.is_name(name));
        name + self.sentinel()
    }

    pub fn deg0_decode(&self, v: u64) -> u64 {
        debug_assert!(self.is_deg0ref(v));
        v - self.sentinel()
    }

    /// Done-marks a position or deg0ref value.
    pub fn done_mark(&self, v: u64) -> u64 {
        debug_assert!(self.is_position(v) || self.is_deg0ref(v));
        v + self.done_offset()
    }

    pub fn is_done(&self, v: u64) -> bool {
        let off = self.done_offset();
        (self.l > 0
            && (self.adj_first() + off..=self.adj_last() + off).contains(&v))
            || (self.sentinel() + 1 + off..=2 * self.n + self.l + 2 + off).contains(&v)
    }

    pub fn done_unmark(&self, v: u64) -> u64 {
        debug_assert!(self.is_done(v));
        v - self.done_offset()
    }

    pub fn band(&self, v: u64) -> Band {
        if v == 0 {
            Band::Zero
        } else if self.is_name(v) {
            Band::Name
        } else if v == self.n + 1 {
            Band::Gap
        } else if self.is_position(v) {
            Band::Position
        } else if v == self.sentinel() {
            Band::Sentinel
        } else if self.is_deg0ref(v) {
            Band::Deg0Ref
        } else if self.is_done(v) {
            if v <= 2 * self.n + 2 * self.l + 2 {
                Band::DonePos
            } else {
                Band::DoneD0
            }
        } else {
            Band::OutOfBand
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_layout() -> Layout {
        Layout { n: 5, l: 12 }
    }

    #[test]
    fn bands_are_disjoint_and_cover_the_documented_ranges() {
        let lay = fig1_layout();
        // n=5, L=12: names [1,5], positions [7,18], sentinel 19,
        // deg0ref [20,29], donePos [25+..]: check documented endpoints.
        // n=5, L=12: names [1,5], positions [7,18], sentinel 19, deg0ref [20,24].
        assert_eq!(lay.sentinel(), 19);
        assert!(lay.is_name(1) && lay.is_name(5) && !lay.is_name(6));
        assert!(lay.is_position(7) && lay.is_position(18) && !lay.is_position(19));
        assert!(lay.is_deg0ref(20) && lay.is_deg0ref(24) && !lay.is_deg0ref(25));
        assert_eq!(lay.deg0_encode(1), 20);
        assert_eq!(lay.deg0_decode(24), 5);
        // Every value up to 3n+2L+3 = 42 lands in a band, except the
        // done-marked sentinel slot 37 which no state ever stores.
        for v in 0..=42 {
            if v == 37 {
                continue;
            }
            assert_ne!(lay.band(v), Band::OutOfBand, "value {v}");
        }
        assert_eq!(lay.band(43), Band::OutOfBand);
    }

    #[test]
    fn done_marks_roundtrip() {
        let lay = fig1_layout();
        for v in [7u64, 18, 20, 24] {
            let m = lay.done_mark(v);
            assert!(lay.is_done(m), "{v} -> {m}");
            assert_eq!(lay.done_unmark(m), v);
        }
        // donePos band [2n+L+3, 2n+2L+2] = [25, 36],
        // doneD0 band [2n+2L+4, 3n+2L+3] = [38, 42].
        assert_eq!(lay.done_mark(7), 25);
        assert_eq!(lay.band(25), Band::DonePos);
        assert_eq!(lay.done_mark(18), 36);
        assert_eq!(lay.band(36), Band::DonePos);
        assert_eq!(lay.band(37), Band::OutOfBand); // done-marked sentinel: never stored
        assert_eq!(lay.done_mark(20), 38);
        assert_eq!(lay.band(38), Band::DoneD0);
        assert_eq!(lay.done_mark(24), 42);
        assert_eq!(lay.band(42), Band::DoneD0);
    }

    #[test]
    fn min_width_matches_bound() {
        let lay = fig1_layout();
        // 3n + 2L + 4 = 43 -> 6 bits, clamped to 8.
        assert_eq!(lay.min_width(), 8);
        let big = Layout { n: 1 << 20, l: 1 << 22 };
        assert_eq!(big.min_width(), 24);
    }
}
