//! In-place packing of the offset table.
//!
//! The offsets `T[1..=n]` are non-decreasing, so the top `CP` bits of the
//! sequence change at most `2^CP - 1` times.  Packing stores only the low
//! `w - CP` bits of each entry, densely from the start of the region, and
//! records the change positions in a footer occupying the last `2^CP` words
//! of the region.  This frees at least `FREE_PER_ENTRY` bits per entry in
//! the middle of the region, which the breadth-first search uses for its
//! color dictionary.  Unpacking reproduces the original words exactly.
//!
//! Packing requires `n >= 2^(FREE_PER_ENTRY + 1) * w`.  Below that the
//! table falls back to reading the offsets in place and keeping the bit
//! store in a constant-size scratch buffer.

use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::ram::WordArray;

/// Bits guaranteed freed per table entry when packed.
pub const FREE_PER_ENTRY: u32 = 3;
/// Bits dropped from each entry; the footer has `2^CP` words.
pub const CP: u32 = 4;

const FOOTER: u64 = 1 << CP;

fn mask(len: u32) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Read `len <= 64` bits at bit offset `beta` of the region starting at
/// word 1, least significant bit first.
fn load_bits(a: &WordArray, beta: u64, len: u32) -> Result<u64> {
    let w = a.width() as u64;
    let mut out = 0u64;
    let mut got = 0u32;
    let mut wi = 1 + beta / w;
    let mut off = (beta % w) as u32;
    while got < len {
        let take = (w as u32 - off).min(len - got);
        let chunk = (a.read(wi)? >> off) & mask(take);
        out |= chunk << got;
        got += take;
        wi += 1;
        off = 0;
    }
    Ok(out)
}

fn store_bits(a: &mut WordArray, beta: u64, len: u32, val: u64) -> Result<()> {
    let w = a.width() as u64;
    let mut done = 0u32;
    let mut wi = 1 + beta / w;
    let mut off = (beta % w) as u32;
    while done < len {
        let put = (w as u32 - off).min(len - done);
        let old = a.read(wi)?;
        let m = mask(put) << off;
        let bits = ((val >> done) & mask(put)) << off;
        a.write(wi, (old & !m) | bits)?;
        done += put;
        wi += 1;
        off = 0;
    }
    Ok(())
}

/// The offset table of a sorted standard array, either packed in place or
/// (for small `n`) left as-is with a constant-size scratch bit store.
pub struct PackedTable {
    n: u64,
    fw: u32,
    packed: bool,
    free_len: u64,
    /// fallback bit store; empty when packed
    scratch: Vec<u64>,
}

impl PackedTable {
    /// Number of free bits made available alongside the table.
    pub fn free_bits(&self) -> u64 {
        self.free_len
    }

    pub fn is_packed(&self) -> bool {
        self.packed
    }

    /// Pack the offset region of `a` when large enough; otherwise set up
    /// the fallback.  The free bits start out zero either way.
    pub fn pack(a: &mut WordArray) -> Result<PackedTable> {
        let lay = Layout::of(a)?;
        let n = lay.n;
        let w = a.width() as u64;
        let fw = a.width() - CP;
        if n < (1 << (FREE_PER_ENTRY + 1)) * w {
            // constant-size scratch: color bits plus block summaries
            let bits = 4 * n + 64;
            return Ok(PackedTable {
                n,
                fw,
                packed: false,
                free_len: bits,
                scratch: vec![0u64; (bits as usize).div_ceil(64)],
            });
        }
        let mut footer = [n + 1; FOOTER as usize];
        let mut prev = 0u64;
        for i in 1..=n {
            let v = a.read(i)?;
            let prefix = v >> fw;
            if prefix < prev {
                return Err(Error::Representation(format!(
                    "offset table not sorted at index {i}"
                )));
            }
            for t in (prev + 1)..=prefix {
                footer[t as usize] = i;
            }
            prev = prefix;
            store_bits(a, fw as u64 * (i - 1), fw, v & mask(fw))?;
        }
        // zero the free bits between the fields and the footer
        let free_start = n * fw as u64;
        let free_end = (n - FOOTER) * w;
        let mut beta = free_start;
        while beta < free_end {
            let len = (free_end - beta).min(w) as u32;
            store_bits(a, beta, len, 0)?;
            beta += len as u64;
        }
        footer[0] = CP as u64;
        for (t, &f) in footer.iter().enumerate() {
            a.write(n - FOOTER + 1 + t as u64, f)?;
        }
        Ok(PackedTable {
            n,
            fw,
            packed: true,
            free_len: free_end - free_start,
            scratch: Vec::new(),
        })
    }

    /// Read offset `T[i]`, `1 <= i <= n`.
    pub fn read(&self, a: &WordArray, i: u64) -> Result<u64> {
        if i == 0 || i > self.n {
            return Err(Error::Parameter(format!("table index {i} out of range")));
        }
        if !self.packed {
            return a.read(i);
        }
        let field = load_bits(a, self.fw as u64 * (i - 1), self.fw)?;
        let mut prefix = 0u64;
        for t in 1..FOOTER {
            if a.read(self.n - FOOTER + 1 + t)? <= i {
                prefix += 1;
            }
        }
        Ok((prefix << self.fw) | field)
    }

    /// Restore the original offset words.  The footer is first copied into
    /// a constant number of registers because the backward sweep overwrites
    /// it; each field lies within words up to its own index, so writing
    /// word `i` after reading field `i` never clobbers a pending field.
    pub fn unpack(self, a: &mut WordArray) -> Result<()> {
        if !self.packed {
            return Ok(());
        }
        let mut footer = [0u64; FOOTER as usize];
        for t in 1..FOOTER {
            footer[t as usize] = a.read(self.n - FOOTER + 1 + t)?;
        }
        for i in (1..=self.n).rev() {
            let field = load_bits(a, self.fw as u64 * (i - 1), self.fw)?;
            let prefix = footer[1..].iter().filter(|&&f| f <= i).count() as u64;
            a.write(i, (prefix << self.fw) | field)?;
        }
        Ok(())
    }

    /// Read `len <= 64` bits at offset `off` of the free region.
    pub fn read_bits(&self, a: &WordArray, off: u64, len: u32) -> Result<u64> {
        if off + len as u64 > self.free_len {
            return Err(Error::Parameter(format!(
                "bit range {off}+{len} exceeds {} free bits",
                self.free_len
            )));
        }
        if self.packed {
            load_bits(a, self.n * self.fw as u64 + off, len)
        } else {
            let mut out = 0u64;
            for b in 0..len as u64 {
                let beta = off + b;
                out |= ((self.scratch[(beta / 64) as usize] >> (beta % 64)) & 1) << b;
            }
            Ok(out)
        }
    }

    pub fn write_bits(&mut self, a: &mut WordArray, off: u64, len: u32, val: u64) -> Result<()> {
        if off + len as u64 > self.free_len {
            return Err(Error::Parameter(format!(
                "bit range {off}+{len} exceeds {} free bits",
                self.free_len
            )));
        }
        if self.packed {
            store_bits(a, self.n * self.fw as u64 + off, len, val)
        } else {
            for b in 0..len as u64 {
                let beta = off + b;
                let word = &mut self.scratch[(beta / 64) as usize];
                *word = (*word & !(1 << (beta % 64))) | (((val >> b) & 1) << (beta % 64));
            }
            Ok(())
        }
    }
}

/// Vertex colors stored in the free bits: 2 bits per vertex plus one
/// presence bit per 32-vertex block for each of the two gray shades, so
/// scans for the next gray vertex can skip empty blocks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Color {
    White = 0,
    LightGray = 1,
    DarkGray = 2,
    Black = 3,
}

impl Color {
    fn from_bits(b: u64) -> Color {
        match b {
            0 => Color::White,
            1 => Color::LightGray,
            2 => Color::DarkGray,
            _ => Color::Black,
        }
    }
}

const BLOCK: u64 = 32;

pub struct ChoiceDict {
    n: u64,
    blocks: u64,
}

impl ChoiceDict {
    /// Lay the dictionary out over the table's free bits, which must be
    /// zeroed (all white), as [`PackedTable::pack`] guarantees.
    pub fn new(table: &PackedTable, n: u64) -> Result<ChoiceDict> {
        let blocks = n.div_ceil(BLOCK);
        let need = 2 * n + 2 * blocks;
        if need > table.free_bits() {
            return Err(Error::Parameter(format!(
                "{need} dictionary bits exceed {} free bits",
                table.free_bits()
            )));
        }
        Ok(ChoiceDict { n, blocks })
    }

    fn summary_off(&self, c: Color) -> u64 {
        let lane = if c == Color::LightGray { 0 } else { 1 };
        2 * self.n + lane * self.blocks
    }

    pub fn color(&self, t: &PackedTable, a: &WordArray, v: u64) -> Result<Color> {
        Ok(Color::from_bits(t.read_bits(a, 2 * (v - 1), 2)?))
    }

    pub fn set_color(
        &self,
        t: &mut PackedTable,
        a: &mut WordArray,
        v: u64,
        c: Color,
    ) -> Result<()> {
        let old = self.color(t, a, v)?;
        if old == c {
            return Ok(());
        }
        t.write_bits(a, 2 * (v - 1), 2, c as u64)?;
        let b = (v - 1) / BLOCK;
        if matches!(old, Color::LightGray | Color::DarkGray) && !self.block_has(t, a, b, old)? {
            t.write_bits(a, self.summary_off(old) + b, 1, 0)?;
        }
        if matches!(c, Color::LightGray | Color::DarkGray) {
            t.write_bits(a, self.summary_off(c) + b, 1, 1)?;
        }
        Ok(())
    }

    fn block_has(&self, t: &PackedTable, a: &WordArray, b: u64, c: Color) -> Result<bool> {
        let lo = b * BLOCK + 1;
        let hi = (lo + BLOCK - 1).min(self.n);
        for v in lo..=hi {
            if self.color(t, a, v)? == c {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Smallest vertex `>= from` with color `c` (a gray shade), if any.
    pub fn next_with_color(
        &self,
        t: &PackedTable,
        a: &WordArray,
        c: Color,
        from: u64,
    ) -> Result<Option<u64>> {
        if from > self.n {
            return Ok(None);
        }
        let mut b = (from - 1) / BLOCK;
        let mut v = from;
        while b < self.blocks {
            if t.read_bits(a, self.summary_off(c) + b, 1)? == 1 {
                let hi = ((b + 1) * BLOCK).min(self.n);
                while v <= hi {
                    if self.color(t, a, v)? == c {
                        return Ok(Some(v));
                    }
                    v += 1;
                }
            }
            b += 1;
            v = b * BLOCK + 1;
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, generate, Model};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big_example(n: u64, w: u32, seed: u64) -> WordArray {
        let e = generate(Model::Gnm, n, Some(2 * n), false, seed).unwrap();
        build(&e, w).unwrap()
    }

    #[test]
    fn pack_roundtrip_is_bit_exact_across_widths() {
        for (w, n) in [(16u32, 16 * 16u64), (16, 4096), (32, 16 * 32), (64, 16 * 64)] {
            let mut a = big_example(n, w, 7);
            let before: Vec<u64> = a.words().to_vec();
            let t = PackedTable::pack(&mut a).unwrap();
            assert!(t.is_packed());
            let lay = Layout { n, l: 0 };
            let _ = lay;
            for i in (1..=n).step_by(37) {
                assert_eq!(t.read(&a, i).unwrap(), before[i as usize], "entry {i}");
            }
            assert_eq!(t.read(&a, n).unwrap(), before[n as usize]);
            t.unpack(&mut a).unwrap();
            assert_eq!(a.words(), &before[..]);
        }
    }

    #[test]
    fn packing_frees_documented_bits() {
        for (w, n) in [(16u32, 16 * 16u64), (32, 16 * 32), (64, 16 * 64), (32, 100_000)] {
            let mut a = big_example(n, w, 3);
            let t = PackedTable::pack(&mut a).unwrap();
            assert!(t.is_packed());
            assert!(
                t.free_bits() >= FREE_PER_ENTRY as u64 * n,
                "w={w} n={n}: {} < {}",
                t.free_bits(),
                FREE_PER_ENTRY as u64 * n
            );
        }
    }

    #[test]
    fn small_tables_fall_back() {
        let mut a = big_example(64, 16, 1);
        let before: Vec<u64> = a.words().to_vec();
        let t = PackedTable::pack(&mut a).unwrap();
        assert!(!t.is_packed());
        assert_eq!(a.words(), &before[..]);
        for i in 1..=64 {
            assert_eq!(t.read(&a, i).unwrap(), before[i as usize]);
        }
        assert!(t.free_bits() >= 3 * 64);
    }

    #[test]
    fn free_bit_store_roundtrips_and_preserves_table() {
        for packed in [true, false] {
            let n = if packed { 16 * 16 } else { 60 };
            let mut a = big_example(n, 16, 9);
            let before: Vec<u64> = a.words().to_vec();
            let mut t = PackedTable::pack(&mut a).unwrap();
            assert_eq!(t.is_packed(), packed);
            let limit = t.free_bits();
            t.write_bits(&mut a, 0, 13, 0x1abc & mask(13)).unwrap();
            t.write_bits(&mut a, limit - 7, 7, 0x55).unwrap();
            assert_eq!(t.read_bits(&a, 0, 13).unwrap(), 0x1abc & mask(13));
            assert_eq!(t.read_bits(&a, limit - 7, 7).unwrap(), 0x55 & mask(7));
            for i in 1..=n {
                assert_eq!(t.read(&a, i).unwrap(), before[i as usize]);
            }
            assert!(t.read_bits(&a, limit - 3, 4).is_err());
            t.unpack(&mut a).unwrap();
            assert_eq!(a.words(), &before[..]);
        }
    }

    #[test]
    fn choice_dictionary_matches_map_oracle() {
        use std::collections::BTreeMap;
        for packed in [true, false] {
            let n: u64 = if packed { 16 * 16 + 11 } else { 90 };
            let mut a = big_example(n, 16, 5);
            let mut t = PackedTable::pack(&mut a).unwrap();
            assert_eq!(t.is_packed(), packed);
            let d = ChoiceDict::new(&t, n).unwrap();
            let mut oracle: BTreeMap<u64, Color> = (1..=n).map(|v| (v, Color::White)).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            for _ in 0..5000 {
                let v = rng.gen_range(1..=n);
                match rng.gen_range(0..3) {
                    0 => {
                        let c = match rng.gen_range(0..4) {
                            0 => Color::White,
                            1 => Color::LightGray,
                            2 => Color::DarkGray,
                            _ => Color::Black,
                        };
                        d.set_color(&mut t, &mut a, v, c).unwrap();
                        oracle.insert(v, c);
                    }
                    1 => {
                        assert_eq!(d.color(&t, &a, v).unwrap(), oracle[&v]);
                    }
                    _ => {
                        let c = if rng.gen() { Color::LightGray } else { Color::DarkGray };
                        let got = d.next_with_color(&t, &a, c, v).unwrap();
                        let want = oracle
                            .range(v..)
                            .find(|(_, &col)| col == c)
                            .map(|(&k, _)| k);
                        assert_eq!(got, want, "next {c:?} from {v}");
                    }
                }
            }
        }
    }
}
