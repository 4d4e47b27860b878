//! On-disk formats.
//!
//! Binary layout (all little-endian):
//! magic `IPG1` | version u8 = 1 | width u8 | flags u8 (bit 0: directed) |
//! reserved u8 = 0 | N u64 | N words of ceil(width/8) bytes each.
//!
//! Text format: a header line `n m directed(0|1)` followed by one `u v`
//! line per edge.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::EdgeList;
use crate::ram::WordArray;

pub const MAGIC: &[u8; 4] = b"IPG1";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Binary,
    Text,
}

fn word_bytes(width: u32) -> usize {
    width.div_ceil(8) as usize
}

pub fn to_bytes(a: &WordArray, directed: bool) -> Vec<u8> {
    let wb = word_bytes(a.width());
    let mut out = Vec::with_capacity(16 + a.len() * wb);
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(a.width() as u8);
    out.push(u8::from(directed));
    out.push(0);
    out.extend_from_slice(&(a.len() as u64).to_le_bytes());
    for &w in a.words() {
        out.extend_from_slice(&w.to_le_bytes()[..wb]);
    }
    out
}

/// Parses the binary format; returns the array and the directedness flag.
pub fn from_bytes(data: &[u8]) -> Result<(WordArray, bool)> {
    let fail = |offset: usize, reason: &str| Error::Format {
        offset: offset as u64,
        reason: reason.into(),
    };
    if data.len() < 16 {
        return Err(fail(data.len(), "truncated header"));
    }
    if &data[0..4] != MAGIC {
        return Err(fail(0, "bad magic (expected IPG1)"));
    }
    if data[4] != VERSION {
        return Err(fail(4, "unsupported version"));
    }
    let width = data[5] as u32;
    if !(8..=64).contains(&width) {
        return Err(fail(5, "width out of range"));
    }
    if data[6] & !1 != 0 {
        return Err(fail(6, "unknown flag bits"));
    }
    let directed = data[6] & 1 == 1;
    if data[7] != 0 {
        return Err(fail(7, "reserved byte not zero"));
    }
    let n_words = u64::from_le_bytes(data[8..16].try_into().unwrap()) as usize;
    let wb = word_bytes(width);
    let need = 16 + n_words.checked_mul(wb).ok_or_else(|| fail(8, "word count overflows"))?;
    if data.len() != need {
        return Err(fail(
            data.len().min(need),
            &format!("expected {need} bytes, found {}", data.len()),
        ));
    }
    let mask = if width == 64 { u64::MAX } else { (1 << width) - 1 };
    let mut words = Vec::with_capacity(n_words);
    for i in 0..n_words {
        let off = 16 + i * wb;
        let mut buf = [0u8; 8];
        buf[..wb].copy_from_slice(&data[off..off + wb]);
        let w = u64::from_le_bytes(buf);
        if w & !mask != 0 {
            return Err(fail(off, "word value exceeds the declared width"));
        }
        words.push(w);
    }
    Ok((WordArray::from_words(width, words)?, directed))
}

pub fn edge_list_to_text(e: &EdgeList) -> String {
    let mut s = format!("{} {} {}\n", e.n, e.m(), u8::from(e.directed));
    for &(u, v) in &e.edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn edge_list_from_text(text: &str) -> Result<EdgeList> {
    let mut offset = 0u64;
    let mut lines = text.lines();
    let header = lines.next().ok_or(Error::Format {
        offset: 0,
        reason: "empty file".into(),
    })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(Error::Format {
            offset: 0,
            reason: "header must be 'n m directed'".into(),
        });
    }
    let parse = |s: &str, what: &str, offset: u64| {
        s.parse::<u64>().map_err(|_| Error::Format {
            offset,
            reason: format!("invalid {what} '{s}'"),
        })
    };
    let n = parse(parts[0], "n", 0)?;
    let m = parse(parts[1], "m", 0)?;
    let directed = match parts[2] {
        "0" => false,
        "1" => true,
        other => {
            return Err(Error::Format {
                offset: 0,
                reason: format!("directed flag must be 0 or 1, found '{other}'"),
            })
        }
    };
    offset += header.len() as u64 + 1;
    let mut edges = Vec::with_capacity(m as usize);
    for line in lines {
        let line_start = offset;
        offset += line.len() as u64 + 1;
        if line.trim().is_empty() {
            continue;
        }
        let p: Vec<&str> = line.split_whitespace().collect();
        if p.len() != 2 {
            return Err(Error::Format {
                offset: line_start,
                reason: format!("edge line must be 'u v', found '{line}'"),
            });
        }
        edges.push((
            parse(p[0], "vertex", line_start)?,
            parse(p[1], "vertex", line_start)?,
        ));
    }
    if edges.len() as u64 != m {
        return Err(Error::Format {
            offset,
            reason: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    EdgeList::new(n, directed, edges).map_err(|e| Error::Format {
        offset: 0,
        reason: e.to_string(),
    })
}

pub fn detect_format(data: &[u8]) -> Format {
    if data.len() >= 4 && &data[0..4] == MAGIC {
        Format::Binary
    } else {
        Format::Text
    }
}

pub fn save(path: &Path, a: &WordArray, directed: bool) -> Result<()> {
    fs::write(path, to_bytes(a, directed))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<(WordArray, bool)> {
    let data = fs::read(path)?;
    from_bytes(&data)
}
