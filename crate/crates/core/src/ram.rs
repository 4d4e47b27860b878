//! Instrumented word-RAM harness.
//!
//! Algorithms in this crate operate on a [`WordArray`] of `w`-bit words and a
//! small register file.  The array counts every algorithmic read and write;
//! the register file tracks the peak number of live working words so tests
//! can assert that traversals really run in O(1) working memory.

use std::cell::Cell;

use sha2::{Digest as _, Sha256};

use crate::error::{Error, Result};

/// Default register budget (in words) that all traversals run under.
pub const REGISTER_BUDGET: usize = 64;

/// A flat array of `w`-bit words, 8 <= w <= 64, with access counters.
///
/// `read`/`write` are the algorithmic accessors and count toward
/// [`AccessStats`]; `peek` is harness instrumentation (validators, digests,
/// invariant checkers) and is uncounted.
///
/// The array owns its words exclusively (no internal sharing), so it is safe
/// to move between threads.
#[derive(Debug)]
pub struct WordArray {
    width: u32,
    words: Vec<u64>,
    reads: Cell<u64>,
    writes: Cell<u64>,
}

impl Clone for WordArray {
    fn clone(&self) -> Self {
        WordArray {
            width: self.width,
            words: self.words.clone(),
            reads: Cell::new(0),
            writes: Cell::new(0),
        }
    }
}

fn width_mask(width: u32) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl WordArray {
    pub fn new(width: u32, len: usize) -> Result<Self> {
        if !(8..=64).contains(&width) {
            return Err(Error::Width(width));
        }
        Ok(WordArray {
            width,
            words: vec![0; len],
            reads: Cell::new(0),
            writes: Cell::new(0),
        })
    }

    pub fn from_words(width: u32, words: Vec<u64>) -> Result<Self> {
        if !(8..=64).contains(&width) {
            return Err(Error::Width(width));
        }
        let mask = width_mask(width);
        if let Some(&v) = words.iter().find(|&&v| v & !mask != 0) {
            return Err(Error::Overflow { value: v, width });
        }
        Ok(WordArray {
            width,
            words,
            reads: Cell::new(0),
            writes: Cell::new(0),
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Counted algorithmic read.
    #[inline]
    pub fn read(&self, i: u64) -> Result<u64> {
        match self.words.get(i as usize) {
            Some(&v) => {
                self.reads.set(self.reads.get() + 1);
                Ok(v)
            }
            None => Err(Error::Bounds {
                index: i,
                len: self.words.len() as u64,
            }),
        }
    }

    /// Counted algorithmic write.  Rejects values wider than `w` bits.
    #[inline]
    pub fn write(&mut self, i: u64, v: u64) -> Result<()> {
        if v & !width_mask(self.width) != 0 {
            return Err(Error::Overflow {
                value: v,
                width: self.width,
            });
        }
        let len = self.words.len() as u64;
        match self.words.get_mut(i as usize) {
            Some(slot) => {
                *slot = v;
                self.writes.set(self.writes.get() + 1);
                Ok(())
            }
            None => Err(Error::Bounds { index: i, len }),
        }
    }

    /// Uncounted read for harness tooling (validators, digests, inspectors).
    #[inline]
    pub fn peek(&self, i: u64) -> Result<u64> {
        self.words
            .get(i as usize)
            .copied()
            .ok_or(Error::Bounds {
                index: i,
                len: self.words.len() as u64,
            })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn reads(&self) -> u64 {
        self.reads.get()
    }

    pub fn writes(&self) -> u64 {
        self.writes.get()
    }

    pub fn reset_counters(&self) {
        self.reads.set(0);
        self.writes.set(0);
    }

    /// Content digest over (width, words); uncounted.
    pub fn snapshot(&self) -> SnapshotDigest {
        let mut h = Sha256::new();
        h.update(self.width.to_le_bytes());
        h.update((self.words.len() as u64).to_le_bytes());
        for &w in &self.words {
            h.update(w.to_le_bytes());
        }
        SnapshotDigest(h.finalize().into())
    }
}

/// Digest of an array's exact contents; equality is the restore test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SnapshotDigest([u8; 32]);

impl SnapshotDigest {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Access statistics for one run: counted array traffic plus the peak number
/// of simultaneously live register words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AccessStats {
    pub reads: u64,
    pub writes: u64,
    pub peak_registers: usize,
}

impl AccessStats {
    pub fn total(&self) -> u64 {
        self.reads + self.writes
    }
}

/// Cooperative register file.  Algorithms declare the working words they hold
/// live via `acquire`/`release`; exceeding the budget fails the run.
#[derive(Debug)]
pub struct Registers {
    budget: usize,
    live: usize,
    peak: usize,
}

impl Registers {
    pub fn new(budget: usize) -> Self {
        Registers {
            budget,
            live: 0,
            peak: 0,
        }
    }

    pub fn acquire(&mut self, words: usize) -> Result<()> {
        self.live += words;
        if self.live > self.peak {
            self.peak = self.live;
        }
        if self.live > self.budget {
            return Err(Error::Budget {
                peak: self.peak,
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub fn release(&mut self, words: usize) {
        debug_assert!(words <= self.live);
        self.live = self.live.saturating_sub(words);
    }

    pub fn peak(&self) -> usize {
        self.peak
    }

    pub fn budget(&self) -> usize {
        self.budget
    }
}

/// Runs `f` against `a` under a register budget and reports the array traffic
/// and register peak attributable to the call.
pub fn run_budgeted<T>(
    a: &mut WordArray,
    budget: usize,
    f: impl FnOnce(&mut WordArray, &mut Registers) -> Result<T>,
) -> Result<(T, AccessStats)> {
    let r0 = a.reads();
    let w0 = a.writes();
    let mut regs = Registers::new(budget);
    let out = f(a, &mut regs)?;
    Ok((
        out,
        AccessStats {
            reads: a.reads() - r0,
            writes: a.writes() - w0,
            peak_registers: regs.peak(),
        },
    ))
}
