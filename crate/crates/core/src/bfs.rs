//! In-place breadth-first search.
//!
//! The offset table is packed (see [`crate::packed`]) and the freed bits
//! hold a four-color dictionary: white (unseen), two gray shades that
//! alternate as the current/next frontier between rounds, and black
//! (finished).  Each round reports its frontier in ascending vertex order
//! together with the exact distance from the component's root.  Unpacking
//! afterwards restores the input array bit-for-bit.

use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::oracle::Start;
use crate::packed::{ChoiceDict, Color, PackedTable};
use crate::ram::{run_budgeted, AccessStats, Registers, WordArray, REGISTER_BUDGET};

/// Fixed number of registers the traversal charges against the budget;
/// includes the footer copy used while unpacking.
pub const BFS_REGISTERS: usize = 24;

/// Run BFS on a sorted standard array, collecting (vertex, distance, root)
/// triples.
#[allow(clippy::type_complexity)]
pub fn bfs(a: &mut WordArray, start: Start) -> Result<(Vec<(u64, u64, u64)>, AccessStats)> {
    let mut out = Vec::new();
    let stats = bfs_streaming(a, start, &mut |v, d, r| out.push((v, d, r)))?;
    Ok((out, stats))
}

/// Run BFS, handing each (vertex, distance, root) triple to `sink`.
pub fn bfs_streaming(
    a: &mut WordArray,
    start: Start,
    sink: &mut dyn FnMut(u64, u64, u64),
) -> Result<AccessStats> {
    run_budgeted(a, REGISTER_BUDGET, |a, regs| run_bfs(a, start, sink, regs))
        .map(|(_, s)| s)
}

fn run_bfs(
    a: &mut WordArray,
    start: Start,
    sink: &mut dyn FnMut(u64, u64, u64),
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
    regs.acquire(BFS_REGISTERS)?;
    let mut table = PackedTable::pack(a)?;
    let dict = ChoiceDict::new(&table, lay.n)?;
    match start {
        Start::Vertex(v) => component(a, lay, &mut table, &dict, v, sink)?,
        Start::All => {
            for v in 1..=lay.n {
                if dict.color(&table, a, v)? == Color::White {
                    component(a, lay, &mut table, &dict, v, sink)?;
                }
            }
        }
    }
    table.unpack(a)?;
    regs.release(BFS_REGISTERS);
    Ok(())
}

fn component(
    a: &mut WordArray,
    lay: Layout,
    table: &mut PackedTable,
    dict: &ChoiceDict,
    root: u64,
    sink: &mut dyn FnMut(u64, u64, u64),
) -> Result<()> {
    let mut z = 0u64;
    let mut f = Color::LightGray;
    dict.set_color(table, a, root, f)?;
    loop {
        let nf = if f == Color::LightGray {
            Color::DarkGray
        } else {
            Color::LightGray
        };
        let mut cur = 1u64;
        let mut grew = false;
        while let Some(v) = dict.next_with_color(table, a, f, cur)? {
            sink(v, z, root);
            let first = table.read(a, v)?;
            let limit = if v < lay.n {
                table.read(a, v + 1)?
            } else {
                lay.sentinel()
            };
            for p in first..limit {
                let u = a.read(p)?;
                if dict.color(table, a, u)? == Color::White {
                    dict.set_color(table, a, u, nf)?;
                    grew = true;
                }
            }
            dict.set_color(table, a, v, Color::Black)?;
            cur = v;
        }
        if !grew {
            return Ok(());
        }
        f = nf;
        z += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, generate, EdgeList, Model};
    use crate::oracle;

    fn arr(e: &EdgeList) -> WordArray {
        let w = Layout { n: e.n, l: e.adjacency_len() }.min_width();
        build(e, w).unwrap()
    }

    fn check(e: &EdgeList, start: Start) {
        let mut a = arr(e);
        let before = a.snapshot();
        let (out, stats) = bfs(&mut a, start).unwrap();
        assert_eq!(out, oracle::bfs(e, start), "{e:?} {start:?}");
        assert_eq!(a.snapshot(), before, "input not restored: {e:?} {start:?}");
        assert!(stats.peak_registers <= REGISTER_BUDGET);
    }

    #[test]
    fn worked_example_every_start() {
        let e = EdgeList::new(5, false, vec![(1, 2), (1, 5), (2, 3), (2, 4), (3, 4), (4, 5)])
            .unwrap();
        for v in 1..=5 {
            check(&e, Start::Vertex(v));
        }
        check(&e, Start::All);
    }

    #[test]
    fn small_corpus_matches_oracle() {
        let cases = [
            (Model::Gnm, 12u64, Some(24u64)),
            (Model::Gnm, 40, Some(60)),
            (Model::Path, 9, None),
            (Model::Star, 9, None),
            (Model::Deg1Chains, 20, None),
            (Model::IsolatedMix, 18, Some(14)),
        ];
        for (model, n, m) in cases {
            for directed in [false, true] {
                for seed in 0..4 {
                    let e = match generate(model, n, m, directed, seed) {
                        Ok(e) => e,
                        Err(_) => continue,
                    };
                    check(&e, Start::All);
                    check(&e, Start::Vertex(1 + seed % n));
                }
            }
        }
    }

    #[test]
    fn large_graph_uses_packed_table() {
        let e = generate(Model::Gnm, 16 * 16, Some(600), false, 11).unwrap();
        let mut a = build(&e, 16).unwrap();
        assert!(PackedTable::pack(&mut a).unwrap().is_packed());
        check(&e, Start::All);
    }

    #[test]
    fn single_vertex() {
        let e = EdgeList::new(1, false, vec![]).unwrap();
        check(&e, Start::Vertex(1));
        check(&e, Start::All);
    }
}
