//! In-place transformations between the three array representations:
//!
//! * sorted standard: adjacency entries are neighbor names;
//! * begin-pointer: each adjacency entry holds the start position of the
//!   named vertex's own adjacency array (degree-0 vertices get a
//!   self-referencing offset entry, and references to them are either kept
//!   as names in [`Mode::Strict`] or moved into the deg0ref band in
//!   [`Mode::Banded`]);
//! * swapped begin-pointer: additionally, each nonempty array's first cell
//!   holds its owner's name and the displaced first pointer lives in `T`.
//!
//! All transformations are linear, in-place, run under the register budget
//! and touch each cell O(1) times (at most `6N` counted accesses).

use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::ram::{run_budgeted, AccessStats, Registers, WordArray, REGISTER_BUDGET};

/// Value encoding used by the traversals.
///
/// `Banded` keeps every transient value in a disjoint range (see
/// [`crate::layout`]) and works for arbitrary degrees.  `Strict` uses the
/// minimal `+1` done-marks and name-valued degree-0 references; it is only
/// valid when every vertex has out-degree at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Banded,
    Strict,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "banded" => Ok(Mode::Banded),
            "strict" => Ok(Mode::Strict),
            other => Err(Error::Parameter(format!("unknown mode '{other}'"))),
        }
    }
}

/// Registers used by each transformation pass (documented constant).
const XFORM_REGISTERS: usize = 8;

pub(crate) fn to_begin_pointer_in(
    a: &mut WordArray,
    mode: Mode,
    regs: &mut Registers,
) -> Result<()> {
    let lay = Layout::of(a)?;
    if mode == Mode::Banded && a.width() < lay.min_width() {
        return Err(Error::Parameter(format!(
            "width {} too small for banded values; need {}",
            a.width(),
            lay.min_width()
        )));
    }
    regs.acquire(XFORM_REGISTERS)?;
    let (n, sent) = (lay.n, lay.sentinel());
    // Replace adjacency names by begin pointers, reading degrees off the
    // still-intact offset table.
    for i in lay.adj_first()..=lay.adj_last() {
        let x = a.read(i)?;
        if !lay.is_name(x) {
            return Err(Error::Corruption {
                index: i,
                reason: format!("adjacency entry {x} is not a vertex name"),
            });
        }
        let t = a.read(x)?;
        let next = if x < n { a.read(x + 1)? } else { sent };
        if t == next {
            // reference to a degree-0 vertex
            if mode == Mode::Banded {
                a.write(i, lay.deg0_encode(x))?;
            }
        } else {
            a.write(i, t)?;
        }
    }
    // Degree-0 vertices get self-referencing offset entries.
    let mut cur = a.read(1)?;
    for v in 1..=n {
        let next = if v < n { a.read(v + 1)? } else { sent };
        if cur == next {
            a.write(v, v)?;
        }
        cur = next;
    }
    regs.release(XFORM_REGISTERS);
    Ok(())
}

pub(crate) fn swap_in(a: &mut WordArray, regs: &mut Registers) -> Result<()> {
    let lay = Layout::of(a)?;
    regs.acquire(XFORM_REGISTERS)?;
    for v in 1..=lay.n {
        let t = a.read(v)?;
        if t == v {
            continue;
        }
        if !lay.is_position(t) {
            return Err(Error::Representation(format!(
                "T[{v}] = {t} is neither a self reference nor a begin pointer; \
                 input is not in begin-pointer form"
            )));
        }
        let x = a.read(t)?;
        a.write(v, x)?;
        a.write(t, v)?;
    }
    regs.release(XFORM_REGISTERS);
    Ok(())
}

pub(crate) fn unswap_in(a: &mut WordArray, regs: &mut Registers) -> Result<()> {
    let lay = Layout::of(a)?;
    regs.acquire(XFORM_REGISTERS)?;
    if lay.l > 0 {
        let first = a.read(lay.adj_first())?;
        let swapped = lay.is_name(first) && a.read(first)? != first;
        if !swapped {
            regs.release(XFORM_REGISTERS);
            return Err(Error::Representation(
                "input is not in swapped begin-pointer form".into(),
            ));
        }
    }
    for i in lay.adj_first()..=lay.adj_last() {
        let x = a.read(i)?;
        if lay.is_name(x) {
            let t = a.read(x)?;
            if t != x {
                a.write(i, t)?;
                a.write(x, i)?;
            }
        }
    }
    regs.release(XFORM_REGISTERS);
    Ok(())
}

/// Is `a` currently in swapped form?  (Begin-pointer arrays have a pointer
/// or an encoded degree-0 reference in their first adjacency cell; swapped
/// arrays have the owning vertex's name there.)
fn is_swapped(a: &WordArray, lay: &Layout) -> Result<bool> {
    if lay.l == 0 {
        return Ok(false);
    }
    let first = a.read(lay.adj_first())?;
    Ok(lay.is_name(first) && a.read(first)? != first)
}

pub(crate) fn restore_sorted_standard_in(
    a: &mut WordArray,
    regs: &mut Registers,
) -> Result<()> {
    let lay = Layout::of(a)?;
    regs.acquire(XFORM_REGISTERS)?;
    let (n, sent) = (lay.n, lay.sentinel());
    if !is_swapped(a, &lay)? {
        // Lemma-style restoration needs the position -> name map that only
        // the swapped form provides in O(1) per lookup.
        swap_in(a, regs)?;
    }
    // Pass 1: adjacency pointers become offset-encoded neighbor names.
    // Array-start cells (bare names) and degree-0 references are left alone,
    // so bare names keep marking exactly the array starts.
    for i in lay.adj_first()..=lay.adj_last() {
        let x = a.read(i)?;
        if lay.is_position(x) {
            let nm = a.read(x)?;
            if !lay.is_name(nm) {
                return Err(Error::Corruption {
                    index: x,
                    reason: format!("pointer target {nm} is not an array-start name"),
                });
            }
            a.write(i, lay.deg0_encode(nm))?;
        } else if !lay.is_name(x) && !lay.is_deg0ref(x) {
            return Err(Error::Corruption {
                index: i,
                reason: format!("unexpected adjacency value {x} during restore"),
            });
        }
    }
    // Pass 2: offset-table entries become bare first-neighbor names.
    for v in 1..=n {
        let t = a.read(v)?;
        if lay.is_position(t) {
            let nm = a.read(t)?;
            a.write(v, nm)?;
        } else if lay.is_deg0ref(t) {
            a.write(v, lay.deg0_decode(t))?;
        } else if !lay.is_name(t) {
            return Err(Error::Corruption {
                index: v,
                reason: format!("unexpected offset value {t} during restore"),
            });
        }
    }
    // Pass 3: unswap array starts and decode offset-encoded names.
    for i in lay.adj_first()..=lay.adj_last() {
        let x = a.read(i)?;
        if lay.is_name(x) {
            let t = a.read(x)?;
            if t != x {
                // x's array starts here: restore its first entry and offset
                a.write(i, t)?;
                a.write(x, i)?;
            }
        } else if lay.is_deg0ref(x) {
            a.write(i, lay.deg0_decode(x))?;
        } else {
            return Err(Error::Corruption {
                index: i,
                reason: format!("unexpected adjacency value {x} during unswap"),
            });
        }
    }
    // Pass 4: degree-0 offsets, backward, carrying the next array start.
    let mut next = sent;
    for v in (1..=n).rev() {
        let t = a.read(v)?;
        if t == v {
            a.write(v, next)?;
        } else {
            next = t;
        }
    }
    regs.release(XFORM_REGISTERS);
    Ok(())
}

pub fn to_begin_pointer(a: &mut WordArray, mode: Mode) -> Result<AccessStats> {
    run_budgeted(a, REGISTER_BUDGET, |a, r| to_begin_pointer_in(a, mode, r)).map(|(_, s)| s)
}

pub fn swap_representation(a: &mut WordArray) -> Result<AccessStats> {
    run_budgeted(a, REGISTER_BUDGET, swap_in).map(|(_, s)| s)
}

pub fn unswap_representation(a: &mut WordArray) -> Result<AccessStats> {
    run_budgeted(a, REGISTER_BUDGET, unswap_in).map(|(_, s)| s)
}

pub fn restore_sorted_standard(a: &mut WordArray) -> Result<AccessStats> {
    run_budgeted(a, REGISTER_BUDGET, restore_sorted_standard_in).map(|(_, s)| s)
}
