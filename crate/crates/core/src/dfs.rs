//! In-place depth-first search.
//!
//! The traversal converts the array to the swapped begin-pointer form, walks
//! it using O(1) registers plus the array itself, and restores the original
//! sorted standard representation bit-for-bit before returning.
//!
//! Bookkeeping during the walk, in banded mode:
//!
//! * A gray vertex `v` entered through its parent's adjacency cell `p` keeps
//!   a reverse pointer `T[v] = p`, and `A[p]` holds v's displaced first
//!   adjacency value.
//! * Leaving a vertex through its first adjacency value (stored out of line)
//!   exchanges that value into the second adjacency cell; the out-of-line
//!   cell gets the second value with a done-mark, which doubles as the
//!   "still exchanged" flag when the scan returns past the second cell.
//! * Runs of degree-1 vertices are linked through `T` by predecessor name
//!   instead of reverse pointers; the first adjacency value of the
//!   degree-at-least-2 vertex ending the run is parked in the cell the run
//!   was entered from (or in a register when the run starts at the
//!   component's start vertex).  Unwinding such a run emits the pending
//!   post-order events and rewrites each member's offset entry as a
//!   done-marked reference to its sole neighbor.
//! * Finished vertices hold a done-marked copy of their displaced first
//!   value, which the restore pass decodes back.
//!
//! Strict mode follows the minimal scheme instead: plain exchange with
//! "first value larger than second" as the exchanged-state test and `+1`
//! done marks.  It is accepted only when every vertex has out-degree at
//! least 2, where those mechanics are sound.

use crate::error::{Error, Result};
use crate::graph;
use crate::layout::Layout;
use crate::oracle::{Event, Start};
use crate::ram::{run_budgeted, AccessStats, Registers, WordArray, REGISTER_BUDGET};
use crate::repr::{self, Mode};

/// Fixed number of registers the traversal charges against the budget.
pub const DFS_REGISTERS: usize = 16;

/// Observation points reported to an inspector together with a read-only
/// view of the array.  Inspectors must only `peek`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    Visited(u64),
    Posted(u64),
    PreFollow(u64),
    PostFollow(u64),
    PreBacktrack(u64),
    PostBacktrack(u64),
}

/// Run DFS on a sorted standard array, collecting events.
pub fn dfs(
    a: &mut WordArray,
    mode: Mode,
    start: Start,
    edge_events: bool,
) -> Result<(Vec<Event>, AccessStats)> {
    let mut events = Vec::new();
    let stats = dfs_streaming(a, mode, start, edge_events, &mut |e| events.push(e))?;
    Ok((events, stats))
}

/// Run DFS, handing each event to `sink` as it happens.
pub fn dfs_streaming(
    a: &mut WordArray,
    mode: Mode,
    start: Start,
    edge_events: bool,
    sink: &mut dyn FnMut(Event),
) -> Result<AccessStats> {
    run_budgeted(a, REGISTER_BUDGET, |a, regs| {
        run_dfs(a, mode, start, edge_events, sink, None, regs)
    })
    .map(|(_, s)| s)
}

/// Like [`dfs_streaming`], additionally reporting internal boundaries to
/// `inspector` for invariant checking in tests.
pub fn dfs_inspected(
    a: &mut WordArray,
    mode: Mode,
    start: Start,
    edge_events: bool,
    sink: &mut dyn FnMut(Event),
    inspector: &mut dyn FnMut(Probe, &WordArray),
) -> Result<AccessStats> {
    run_budgeted(a, REGISTER_BUDGET, |a, regs| {
        run_dfs(a, mode, start, edge_events, sink, Some(inspector), regs)
    })
    .map(|(_, s)| s)
}

#[allow(clippy::type_complexity)]
fn run_dfs<'c>(
    a: &mut WordArray,
    mode: Mode,
    start: Start,
    explore: bool,
    sink: &'c mut dyn FnMut(Event),
    inspector: Option<&'c mut dyn FnMut(Probe, &WordArray)>,
    regs: &mut Registers,
) -> Result<()> {
    let lay = Layout::of(a)?;
    if let Start::Vertex(v) = start {
        if v == 0 || v > lay.n {
            return Err(Error::Parameter(format!(
                "start vertex {v} out of range 1..={}",
                lay.n
            )));
        }
    }
    if mode == Mode::Strict {
        for v in 1..=lay.n {
            if graph::degree(a, v)? < 2 {
                return Err(Error::StrictDomain(format!(
                    "vertex {v} has out-degree < 2; strict mode requires out-degree >= 2"
                )));
            }
        }
    }
    regs.acquire(DFS_REGISTERS)?;
    repr::to_begin_pointer_in(a, mode, regs)?;
    repr::swap_in(a, regs)?;
    {
        let mut eng = Engine {
            a,
            lay,
            mode,
            explore,
            active: 0,
            chain_park: 0,
            pos_cursor: lay.adj_first(),
            sink,
            inspector,
        };
        match start {
            Start::Vertex(v) => eng.start_component(v)?,
            Start::All => {
                for v in 1..=lay.n {
                    if eng.is_white(v)? {
                        eng.start_component(v)?;
                    }
                }
            }
        }
    }
    restore_after_dfs_in(a, mode, regs)?;
    regs.release(DFS_REGISTERS);
    Ok(())
}

/// Decode traversal leftovers in the offset region, then rebuild the sorted
/// standard representation.
fn restore_after_dfs_in(a: &mut WordArray, mode: Mode, regs: &mut Registers) -> Result<()> {
    let lay = Layout::of(a)?;
    match mode {
        Mode::Banded => {
            for v in 1..=lay.n {
                let t = a.read(v)?;
                if lay.is_done(t) {
                    a.write(v, lay.done_unmark(t))?;
                } else if t == lay.sentinel() {
                    a.write(v, v)?;
                }
            }
        }
        Mode::Strict => {
            for v in 1..=lay.n {
                let t = a.read(v)?;
                let done = t > lay.adj_last() || a.read(t)? > lay.n;
                if done {
                    a.write(v, t - 1)?;
                }
            }
        }
    }
    repr::restore_sorted_standard_in(a, regs)
}

/// Where a vertex's displaced first adjacency value currently lives.
#[derive(Clone, Copy)]
enum Loc {
    /// the vertex's own offset cell (component start vertices)
    T(u64),
    /// an adjacency cell
    A(u64),
    /// the park register (runs rooted at a degree-1 start vertex)
    Park,
}

enum Step {
    /// visit the vertex whose array starts at `p` (degree >= 2)
    Visit(u64),
    /// continue scanning at position `p`; `first` right after a visit
    Next { p: u64, first: bool },
    /// classify and act on the value at position `p`
    Inspect(u64),
    /// the array before position `q`'s owner is exhausted; retreat
    Backtrack(u64),
    /// traversing a run of degree-1 vertices
    Chain { slot: u64, qstar: u64, prev: u64, rooted: bool },
    /// emitting pending post-order events back along a degree-1 run
    Walk { prev: u64, link: u64 },
    ComponentDone,
}

struct Engine<'a, 'c> {
    a: &'a mut WordArray,
    lay: Layout,
    mode: Mode,
    explore: bool,
    /// start vertex of the component being traversed; 0 between components
    active: u64,
    /// parked first value of the vertex ending a start-rooted degree-1 run
    chain_park: u64,
    /// monotone cursor for locating array starts of component roots
    pos_cursor: u64,
    sink: &'c mut dyn FnMut(Event),
    #[allow(clippy::type_complexity)]
    inspector: Option<&'c mut dyn FnMut(Probe, &WordArray)>,
}

impl<'a, 'c> Engine<'a, 'c> {
    fn emit(&mut self, e: Event) {
        (self.sink)(e);
    }

    fn probe(&mut self, p: Probe) {
        if let Some(ins) = self.inspector.as_mut() {
            ins(p, self.a);
        }
    }

    fn corrupt(&self, index: u64, what: &str) -> Error {
        Error::Corruption {
            index,
            reason: format!("unexpected value during traversal: {what}"),
        }
    }

    /// Unvisited?  Component start vertices are excluded while active.
    fn is_white(&self, v: u64) -> Result<bool> {
        if v == self.active {
            return Ok(false);
        }
        let t = self.a.read(v)?;
        Ok(match self.mode {
            Mode::Banded => {
                t == v
                    || self.lay.is_deg0ref(t)
                    || (self.lay.is_position(t) && self.a.read(t)? <= self.lay.n)
            }
            Mode::Strict => self.lay.is_position(t) && self.a.read(t)? <= self.lay.n,
        })
    }

    /// Does the array starting at `q` have exactly one cell?
    fn deg1_at(&self, q: u64) -> Result<bool> {
        Ok(q == self.lay.adj_last() || self.a.read(q + 1)? <= self.lay.n)
    }

    /// Name of the vertex whose array contains position `p`.
    fn owner(&self, p: u64) -> Result<u64> {
        let mut q = p;
        loop {
            let x = self.a.read(q)?;
            if x <= self.lay.n {
                return Ok(x);
            }
            q -= 1;
        }
    }

    /// Resolve where `u`'s displaced first adjacency value is stored.  For a
    /// vertex entered at the end of a degree-1 run this follows the run's
    /// name links back to the cell the run was entered from.
    fn loc_of(&self, u: u64) -> Result<Loc> {
        if u == self.active {
            return Ok(Loc::T(u));
        }
        let t = self.a.read(u)?;
        if self.lay.is_position(t) {
            return Ok(Loc::A(t));
        }
        if !self.lay.is_name(t) {
            return Err(self.corrupt(u, "reverse pointer is neither position nor name"));
        }
        let mut cur = t;
        loop {
            if cur == self.active {
                return Ok(Loc::Park);
            }
            let tc = self.a.read(cur)?;
            if self.lay.is_name(tc) {
                cur = tc;
            } else if self.lay.is_position(tc) {
                return Ok(Loc::A(tc));
            } else {
                return Err(self.corrupt(cur, "broken degree-1 run link"));
            }
        }
    }

    fn read_loc(&self, l: Loc) -> Result<u64> {
        match l {
            Loc::T(v) => self.a.read(v),
            Loc::A(p) => self.a.read(p),
            Loc::Park => Ok(self.chain_park),
        }
    }

    fn write_loc(&mut self, l: Loc, x: u64) -> Result<()> {
        match l {
            Loc::T(v) => self.a.write(v, x),
            Loc::A(p) => self.a.write(p, x),
            Loc::Park => {
                self.chain_park = x;
                Ok(())
            }
        }
    }

    /// Locate the array start of component root `vs`.  Roots are handled in
    /// ascending order, and array starts are ordered by owner, so a single
    /// forward cursor suffices across all components.
    fn find_start(&mut self, vs: u64) -> Result<u64> {
        let mut q = self.pos_cursor;
        while q <= self.lay.adj_last() {
            if self.a.read(q)? == vs {
                self.pos_cursor = q;
                return Ok(q);
            }
            q += 1;
        }
        Err(self.corrupt(vs, "array start of component root not found"))
    }

    fn start_component(&mut self, vs: u64) -> Result<()> {
        self.active = vs;
        let t = self.a.read(vs)?;
        let step = if t == vs {
            // degree 0: visit inline (banded only; strict rejects upfront)
            self.emit(Event::Pre(vs));
            self.probe(Probe::Visited(vs));
            self.emit(Event::Post(vs));
            self.probe(Probe::Posted(vs));
            self.a.write(vs, self.lay.sentinel())?;
            Step::ComponentDone
        } else {
            let q = self.find_start(vs)?;
            if self.deg1_at(q)? {
                // degree-1 root: its sole value stays in T[vs]; traverse as
                // a start-rooted degree-1 run
                self.emit(Event::Pre(vs));
                self.probe(Probe::Visited(vs));
                Step::Chain { slot: 0, qstar: t, prev: vs, rooted: true }
            } else {
                Step::Visit(q)
            }
        };
        self.drive(step)?;
        self.active = 0;
        Ok(())
    }

    fn drive(&mut self, mut step: Step) -> Result<()> {
        loop {
            step = match step {
                Step::Visit(p) => {
                    let v = self.a.read(p)?;
                    self.emit(Event::Pre(v));
                    self.probe(Probe::Visited(v));
                    Step::Next { p, first: true }
                }
                Step::Next { p, first } => self.next_neighbor(p, first)?,
                Step::Inspect(p) => self.inspect(p)?,
                Step::Backtrack(q) => self.backtrack(q)?,
                Step::Chain { slot, qstar, prev, rooted } => {
                    self.chain_step(slot, qstar, prev, rooted)?
                }
                Step::Walk { prev, link } => self.walk_step(prev, link)?,
                Step::ComponentDone => return Ok(()),
            };
        }
    }

    fn next_neighbor(&mut self, p: u64, first: bool) -> Result<Step> {
        if first {
            // First entry: p is the array start of a degree->=2 vertex.
            // Exchange its out-of-line first value into the second cell so
            // the first neighbor can be left from a non-start position.
            let u = self.a.read(p)?;
            let loc = self.loc_of(u)?;
            let x1 = self.read_loc(loc)?;
            let x2 = self.a.read(p + 1)?;
            self.a.write(p + 1, x1)?;
            let stored = match self.mode {
                Mode::Banded => self.lay.done_mark(x2),
                Mode::Strict => x2,
            };
            self.write_loc(loc, stored)?;
            return Ok(Step::Inspect(p + 1));
        }
        // Two cells past an array start: if the first two values are still
        // exchanged, put them back and process the second value from the
        // second position.
        if p >= self.lay.adj_first() + 2
            && p - 2 <= self.lay.adj_last()
            && p - 1 <= self.lay.adj_last()
        {
            let maybe_start = self.a.read(p - 2)?;
            if self.lay.is_name(maybe_start) {
                let loc = self.loc_of(maybe_start)?;
                let lv = self.read_loc(loc)?;
                let swapped = match self.mode {
                    Mode::Banded => self.lay.is_done(lv),
                    Mode::Strict => lv > self.a.read(p - 1)?,
                };
                if swapped {
                    let second = self.a.read(p - 1)?;
                    let back = match self.mode {
                        Mode::Banded => self.lay.done_unmark(lv),
                        Mode::Strict => lv,
                    };
                    self.a.write(p - 1, back)?;
                    self.write_loc(loc, second)?;
                    return Ok(Step::Inspect(p - 1));
                }
            }
        }
        // End of the current array?
        let at_end = p > self.lay.adj_last() || self.a.read(p)? <= self.lay.n;
        if !at_end {
            return Ok(Step::Inspect(p));
        }
        let mut q = p.min(self.lay.adj_last() + 1) - 1;
        while self.a.read(q)? > self.lay.n {
            q -= 1;
        }
        let v = self.a.read(q)?;
        if v == self.active {
            self.emit(Event::Post(v));
            self.probe(Probe::Posted(v));
            let t = self.a.read(v)?;
            let done = match self.mode {
                Mode::Banded => self.lay.done_mark(t),
                Mode::Strict => t + 1,
            };
            self.a.write(v, done)?;
            Ok(Step::ComponentDone)
        } else {
            Ok(Step::Backtrack(q))
        }
    }

    fn inspect(&mut self, p: u64) -> Result<Step> {
        let x = self.a.read(p)?;
        if self.lay.is_position(x) {
            let v = self.a.read(x)?;
            if self.explore {
                let u = self.owner(p)?;
                self.emit(Event::PreExplore(u, v));
            }
            if self.is_white(v)? {
                if self.deg1_at(x)? {
                    self.emit(Event::Pre(v));
                    self.probe(Probe::Visited(v));
                    let qstar = self.a.read(v)?;
                    self.a.write(v, p)?;
                    Ok(Step::Chain { slot: p, qstar, prev: v, rooted: false })
                } else {
                    self.probe(Probe::PreFollow(p));
                    let xv = self.a.read(v)?;
                    self.a.write(p, xv)?;
                    self.a.write(v, p)?;
                    self.probe(Probe::PostFollow(p));
                    Ok(Step::Visit(x))
                }
            } else {
                if self.explore {
                    let u = self.owner(p)?;
                    self.emit(Event::PostExplore(u, v));
                }
                Ok(Step::Next { p: p + 1, first: false })
            }
        } else if self.lay.is_deg0ref(x) {
            let x0 = self.lay.deg0_decode(x);
            if self.explore {
                let u = self.owner(p)?;
                self.emit(Event::PreExplore(u, x0));
            }
            if self.a.read(x0)? == x0 {
                self.emit(Event::Pre(x0));
                self.probe(Probe::Visited(x0));
                self.emit(Event::Post(x0));
                self.probe(Probe::Posted(x0));
                self.a.write(x0, self.lay.sentinel())?;
            }
            if self.explore {
                let u = self.owner(p)?;
                self.emit(Event::PostExplore(u, x0));
            }
            Ok(Step::Next { p: p + 1, first: false })
        } else {
            Err(self.corrupt(p, "adjacency cell is neither pointer nor degree-0 reference"))
        }
    }

    fn backtrack(&mut self, q: u64) -> Result<Step> {
        let v = self.a.read(q)?;
        let t = self.a.read(v)?;
        if self.lay.is_position(t) {
            self.probe(Probe::PreBacktrack(q));
            let disp = self.a.read(t)?;
            let done = match self.mode {
                Mode::Banded => self.lay.done_mark(disp),
                Mode::Strict => disp + 1,
            };
            self.a.write(v, done)?;
            self.a.write(t, q)?;
            self.emit(Event::Post(v));
            self.probe(Probe::Posted(v));
            self.probe(Probe::PostBacktrack(q));
            if self.explore {
                let u = self.owner(t)?;
                self.emit(Event::PostExplore(u, v));
            }
            Ok(Step::Next { p: t + 1, first: false })
        } else if self.lay.is_name(t) {
            // v ends a degree-1 run; its first value is parked at the cell
            // the run hangs from (or in the park register when the run is
            // rooted at the start vertex)
            let link = t;
            let mut cur = link;
            let q3 = loop {
                if cur == self.active {
                    break self.chain_park;
                }
                let tc = self.a.read(cur)?;
                if self.lay.is_name(tc) {
                    cur = tc;
                } else {
                    break self.a.read(tc)?;
                }
            };
            self.a.write(v, self.lay.done_mark(q3))?;
            self.emit(Event::Post(v));
            self.probe(Probe::Posted(v));
            Ok(Step::Walk { prev: v, link })
        } else {
            Err(self.corrupt(v, "offset cell is neither reverse pointer nor run link"))
        }
    }

    fn chain_step(&mut self, slot: u64, qstar: u64, prev: u64, rooted: bool) -> Result<Step> {
        if self.lay.is_deg0ref(qstar) {
            let x0 = self.lay.deg0_decode(qstar);
            if self.explore {
                self.emit(Event::PreExplore(prev, x0));
            }
            if self.a.read(x0)? == x0 {
                self.emit(Event::Pre(x0));
                self.probe(Probe::Visited(x0));
                self.emit(Event::Post(x0));
                self.probe(Probe::Posted(x0));
                self.a.write(x0, self.lay.sentinel())?;
            }
            if self.explore {
                self.emit(Event::PostExplore(prev, x0));
            }
            self.dead_end(prev, x0)
        } else if self.lay.is_position(qstar) {
            let v2 = self.a.read(qstar)?;
            if self.explore {
                self.emit(Event::PreExplore(prev, v2));
            }
            if !self.is_white(v2)? {
                if self.explore {
                    self.emit(Event::PostExplore(prev, v2));
                }
                self.dead_end(prev, v2)
            } else if self.deg1_at(qstar)? {
                self.emit(Event::Pre(v2));
                self.probe(Probe::Visited(v2));
                let nxt = self.a.read(v2)?;
                self.a.write(v2, prev)?;
                Ok(Step::Chain { slot, qstar: nxt, prev: v2, rooted })
            } else {
                // degree->=2 vertex ends the run: park its first value and
                // link it into the run before visiting it normally
                let q3 = self.a.read(v2)?;
                self.a.write(v2, prev)?;
                if rooted {
                    self.chain_park = q3;
                } else {
                    self.a.write(slot, q3)?;
                }
                Ok(Step::Visit(qstar))
            }
        } else {
            Err(self.corrupt(prev, "degree-1 run met an unclassifiable value"))
        }
    }

    /// The degree-1 run's forward edge out of `last` is spent (its target
    /// `g` was already visited, or was a degree-0 vertex handled inline):
    /// finish `last` and unwind the run.
    fn dead_end(&mut self, last: u64, g: u64) -> Result<Step> {
        if last == self.active {
            self.emit(Event::Post(last));
            self.probe(Probe::Posted(last));
            let t = self.a.read(last)?;
            self.a.write(last, self.lay.done_mark(t))?;
            return Ok(Step::ComponentDone);
        }
        let link = self.a.read(last)?;
        self.a
            .write(last, self.lay.done_mark(self.lay.deg0_encode(g)))?;
        self.emit(Event::Post(last));
        self.probe(Probe::Posted(last));
        Ok(Step::Walk { prev: last, link })
    }

    fn walk_step(&mut self, prev: u64, link: u64) -> Result<Step> {
        if self.lay.is_name(link) {
            if link == self.active {
                if self.explore {
                    self.emit(Event::PostExplore(link, prev));
                }
                self.emit(Event::Post(link));
                self.probe(Probe::Posted(link));
                let t = self.a.read(link)?;
                self.a.write(link, self.lay.done_mark(t))?;
                Ok(Step::ComponentDone)
            } else {
                let w = link;
                let nlink = self.a.read(w)?;
                if self.explore {
                    self.emit(Event::PostExplore(w, prev));
                }
                self.a
                    .write(w, self.lay.done_mark(self.lay.deg0_encode(prev)))?;
                self.emit(Event::Post(w));
                self.probe(Probe::Posted(w));
                Ok(Step::Walk { prev: w, link: nlink })
            }
        } else if self.lay.is_position(link) {
            // reached the cell the run hangs from: it gets a reference to
            // the run's first member, and scanning resumes after it
            let slot = link;
            self.a.write(slot, self.lay.deg0_encode(prev))?;
            if self.explore {
                let u = self.owner(slot)?;
                self.emit(Event::PostExplore(u, prev));
            }
            Ok(Step::Next { p: slot + 1, first: false })
        } else {
            Err(self.corrupt(prev, "degree-1 run unwind met an unclassifiable link"))
        }
    }
}
