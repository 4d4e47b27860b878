//! Acceptance checks.  Each test prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them all.

use std::time::Instant;

use ipg::graph::{self, EdgeList, Model};
use ipg::layout::Layout;
use ipg::oracle::{self, Start};
use ipg::packed::{ChoiceDict, Color, PackedTable, FREE_PER_ENTRY};
use ipg::{bfs, dfs, repr, Mode, WordArray, REGISTER_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(name: &str, ok: bool, detail: &str) {
    println!("{}: {name}{}{}", if ok { "PASS" } else { "FAIL" },
        if detail.is_empty() { "" } else { " — " }, detail);
    assert!(ok, "{name}: {detail}");
}

fn arr(e: &EdgeList) -> WordArray {
    let w = Layout { n: e.n, l: e.adjacency_len() }.min_width();
    graph::build(e, w).unwrap()
}

fn corpus(count: usize, max_n: u64, seed: u64) -> Vec<EdgeList> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let models = [
        Model::Gnm,
        Model::Path,
        Model::Cycle,
        Model::Star,
        Model::BinaryTree,
        Model::Deg1Chains,
        Model::IsolatedMix,
    ];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let model = models[rng.gen_range(0..models.len())];
        // log-uniform sizes up to max_n
        let bits = rng.gen_range(0..=(64 - max_n.leading_zeros() - 1));
        let n = rng.gen_range(1..=(1u64 << bits).min(max_n));
        let directed = rng.gen();
        let cap = if directed { n.saturating_mul(n - 1) } else { n.saturating_mul(n - 1) / 2 };
        let m = rng.gen_range(0..=(4 * n).min(cap));
        let gseed = rng.gen();
        if let Ok(e) = graph::generate(model, n, Some(m), directed, gseed) {
            out.push(e);
        }
    }
    out
}

/// 1000 random graphs: DFS (with and without edge events) and BFS all match
/// the reference implementation and restore the input bit-for-bit, within
/// a minute.
#[test]
fn corpus_oracle_equivalence_and_restoration() {
    let t0 = Instant::now();
    let graphs = corpus(1000, 4096, 0xACC3);
    let mut restored = true;
    let mut matched = true;
    for (i, e) in graphs.iter().enumerate() {
        let mut a = arr(e);
        let before = a.snapshot();
        let start = if e.n > 1 && i % 3 == 0 { Start::Vertex(1 + (i as u64 % e.n)) } else { Start::All };
        for edges in [false, true] {
            let (ev, _) = dfs::dfs(&mut a, Mode::Banded, start, edges).unwrap();
            matched &= ev == oracle::dfs(e, start, edges);
            restored &= a.snapshot() == before;
        }
        let (out, _) = bfs::bfs(&mut a, start).unwrap();
        matched &= out == oracle::bfs(e, start);
        restored &= a.snapshot() == before;
        assert!(matched && restored, "graph #{i}: {e:?}");
    }
    let dt = t0.elapsed();
    report(
        "restoration on 1000-graph corpus (n <= 4096)",
        restored && dt.as_secs() < 60,
        &format!("{dt:?}"),
    );
    report("oracle equivalence for dfs, dfs --edges, bfs on the corpus", matched, "");
}

/// Directed graphs with min out-degree 2; strict mode must match the
/// reference, restore the input, use +1 done marks, and keep the three
/// structural invariants at every follow/backtrack boundary.
#[test]
fn strict_mode_conformance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x57717);
    let mut checked = 0u64;
    for _ in 0..200 {
        let n = rng.gen_range(3..=64u64);
        let mut edges = Vec::new();
        for v in 1..=n {
            while edges.iter().filter(|&&(a, _)| a == v).count() < 2 {
                let u = rng.gen_range(1..=n);
                if u != v && !edges.contains(&(v, u)) {
                    edges.push((v, u));
                }
            }
        }
        for _ in 0..rng.gen_range(0..2 * n) {
            let v = rng.gen_range(1..=n);
            let u = rng.gen_range(1..=n);
            if u != v && !edges.contains(&(v, u)) {
                edges.push((v, u));
            }
        }
        let e = EdgeList::new(n, true, edges).unwrap();
        let mut a = arr(&e);
        let before = a.snapshot();
        let start = Start::All;

        // shadow state maintained from the probe stream
        let mut color = vec![0u8; n as usize + 1]; // 0 white 1 gray 2 black
        let mut stack: Vec<u64> = Vec::new();
        let mut pending: Option<(u64, u64)> = None; // (vertex, displaced) at a backtrack
        let mut events = Vec::new();
        let mut ok = true;
        dfs::dfs_inspected(&mut a, Mode::Strict, start, false, &mut |ev| events.push(ev), &mut |p, arr| {
            let lay = Layout { n, l: e.adjacency_len() };
            let at = |i: u64| arr.peek(i).unwrap();
            match p {
                dfs::Probe::Visited(v) => {
                    color[v as usize] = 1;
                    stack.push(v);
                }
                dfs::Probe::Posted(v) => {
                    color[v as usize] = 2;
                    assert_eq!(stack.pop(), Some(v));
                }
                dfs::Probe::PreBacktrack(q) => {
                    let v = at(q);
                    pending = Some((v, at(at(v))));
                }
                dfs::Probe::PreFollow(p) => {
                    // the child becomes gray in the array before its
                    // Visited probe fires
                    color[at(at(p)) as usize] = 1;
                }
                dfs::Probe::PostFollow(_) | dfs::Probe::PostBacktrack(_) => {
                    if let (dfs::Probe::PostBacktrack(_), Some((v, disp))) = (p, pending.take()) {
                        // done mark is exactly the displaced value plus one
                        ok &= at(v) == disp + 1;
                    }
                    let root = stack.first().copied().unwrap_or(0);
                    for v in 1..=n {
                        let t = at(v);
                        let white_by_array =
                            v != root && lay.is_position(t) && at(t) <= n;
                        match color[v as usize] {
                            0 => ok &= white_by_array,
                            1 => {
                                ok &= !white_by_array;
                                if v != root {
                                    // reverse pointer into the parent's array
                                    ok &= lay.is_position(t) && at(t) > n;
                                }
                            }
                            _ => {
                                ok &= !white_by_array;
                                // done vertices point one past a position
                                // whose cell holds an array start
                                ok &= lay.is_position(t - 1) && at(t - 1) <= n;
                            }
                        }
                    }
                    checked += 1;
                }
            }
        })
        .unwrap();
        ok &= events == oracle::dfs(&e, start, false);
        ok &= a.snapshot() == before;
        if !ok {
            report("strict-mode conformance (200 graphs, min out-degree 2)", false, &format!("{e:?}"));
        }
    }
    report(
        "strict-mode conformance (200 graphs, min out-degree 2)",
        checked > 0,
        &format!("{checked} boundaries checked"),
    );
}

/// The documented 19-cell example converts between all three
/// representations and back with exact cell values, and DFS restores it.
#[test]
fn representation_roundtrip_cell_for_cell() {
    let e = EdgeList::new(5, false, vec![(1, 2), (1, 5), (2, 3), (2, 4), (3, 4), (4, 5)])
        .unwrap();
    let sorted = [5u64, 7, 9, 12, 14, 17, 12, 2, 5, 1, 3, 4, 2, 4, 2, 3, 5, 1, 4];
    let begin = [5u64, 7, 9, 12, 14, 17, 12, 9, 17, 7, 12, 14, 9, 14, 9, 12, 17, 7, 14];
    let swapped = [5u64, 9, 7, 9, 9, 7, 12, 1, 17, 2, 12, 14, 3, 14, 4, 12, 17, 5, 14];
    let mut a = graph::build(&e, 8).unwrap();
    let mut ok = a.words() == sorted;
    repr::to_begin_pointer(&mut a, Mode::Banded).unwrap();
    ok &= a.words() == begin;
    repr::swap_representation(&mut a).unwrap();
    ok &= a.words() == swapped;
    repr::restore_sorted_standard(&mut a).unwrap();
    ok &= a.words() == sorted;
    let (ev, _) = dfs::dfs(&mut a, Mode::Banded, Start::Vertex(1), false).unwrap();
    use ipg::oracle::Event::*;
    ok &= ev == [Pre(1), Pre(2), Pre(3), Pre(4), Pre(5), Post(5), Post(4), Post(3), Post(2), Post(1)];
    ok &= a.words() == sorted;
    report("three-representation round-trip, cell for cell", ok, "");
}

/// Packing at several widths and sizes: at least FREE_PER_ENTRY bits per
/// entry freed, reads agree, and unpacking is bit-exact.
#[test]
fn packing_widths_and_sizes() {
    let mut ok = true;
    let mut detail = String::new();
    for w in [16u32, 32, 64] {
        for n in [16 * w as u64, 64 * w as u64, 100_000] {
            let e = graph::generate(Model::Gnm, n, Some(2 * n), false, n ^ w as u64).unwrap();
            let lay = Layout { n, l: e.adjacency_len() };
            if lay.min_width() > w {
                continue; // this width cannot represent the graph at all
            }
            let mut a = graph::build(&e, w).unwrap();
            let before: Vec<u64> = a.words().to_vec();
            let t = PackedTable::pack(&mut a).unwrap();
            ok &= t.is_packed();
            ok &= t.free_bits() >= FREE_PER_ENTRY as u64 * n;
            for i in (1..=n).step_by(101) {
                ok &= t.read(&a, i).unwrap() == before[i as usize];
            }
            t.unpack(&mut a).unwrap();
            ok &= a.words() == &before[..];
            detail.push_str(&format!("w={w},n={n} "));
            assert!(ok, "w={w} n={n}");
        }
    }
    report("table packing frees >= 3 bits/entry and unpacks bit-exactly", ok, detail.trim());
}

/// Register use stays within the budget and does not grow with n.
#[test]
fn constant_register_use() {
    let mut dfs_peaks = Vec::new();
    let mut bfs_peaks = Vec::new();
    for k in [8u32, 10, 12, 14, 16] {
        let n = 1u64 << k;
        let e = graph::generate(Model::Gnm, n, Some(4 * n), false, k as u64).unwrap();
        let mut a = arr(&e);
        let (_, st) = dfs::dfs(&mut a, Mode::Banded, Start::All, false).unwrap();
        dfs_peaks.push(st.peak_registers);
        let (_, st) = bfs::bfs(&mut a, Start::All).unwrap();
        bfs_peaks.push(st.peak_registers);
    }
    let ok = dfs_peaks.iter().all(|&p| p == dfs_peaks[0] && p <= REGISTER_BUDGET)
        && bfs_peaks.iter().all(|&p| p == bfs_peaks[0] && p <= REGISTER_BUDGET);
    report(
        "peak registers <= 64 and identical for n = 2^8 .. 2^16",
        ok,
        &format!("dfs={} bfs={}", dfs_peaks[0], bfs_peaks[0]),
    );
}

/// Per-edge cost is stable when the graph grows 10x.
#[test]
fn linear_time_smoke() {
    let mut per_edge = Vec::new();
    for m in [100_000u64, 1_000_000] {
        let n = m / 4;
        let e = graph::generate(Model::Gnm, n, Some(m), false, 77).unwrap();
        let mut a = arr(&e);
        let t0 = Instant::now();
        let s1 = dfs::dfs_streaming(&mut a, Mode::Banded, Start::All, false, &mut |_| {}).unwrap();
        let s2 = bfs::bfs_streaming(&mut a, Start::All, &mut |_, _, _| {}).unwrap();
        let wall = t0.elapsed().as_secs_f64();
        per_edge.push((wall / m as f64, (s1.total() + s2.total()) as f64 / m as f64));
    }
    let wall_ratio = per_edge[1].0 / per_edge[0].0;
    let access_ratio = per_edge[1].1 / per_edge[0].1;
    let ok = wall_ratio <= 3.0 && access_ratio <= 1.2;
    report(
        "linear scaling from m = 1e5 to 1e6",
        ok,
        &format!("wall/edge ratio {wall_ratio:.2}, accesses/edge ratio {access_ratio:.2}"),
    );
}

/// 100k-operation choice-dictionary schedule against a map-based oracle.
#[test]
fn choice_dictionary_schedule() {
    use std::collections::BTreeMap;
    let n: u64 = 16 * 16 + 77;
    let e = graph::generate(Model::Gnm, n, Some(2 * n), false, 13).unwrap();
    let mut a = graph::build(&e, 16).unwrap();
    let mut t = PackedTable::pack(&mut a).unwrap();
    assert!(t.is_packed());
    let d = ChoiceDict::new(&t, n).unwrap();
    let mut shadow: BTreeMap<u64, Color> = (1..=n).map(|v| (v, Color::White)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut ok = true;
    for _ in 0..100_000 {
        let v = rng.gen_range(1..=n);
        match rng.gen_range(0..3) {
            0 => {
                let c = [Color::White, Color::LightGray, Color::DarkGray, Color::Black]
                    [rng.gen_range(0..4)];
                d.set_color(&mut t, &mut a, v, c).unwrap();
                shadow.insert(v, c);
            }
            1 => ok &= d.color(&t, &a, v).unwrap() == shadow[&v],
            _ => {
                let c = if rng.gen() { Color::LightGray } else { Color::DarkGray };
                let got = d.next_with_color(&t, &a, c, v).unwrap();
                let want = shadow.range(v..).find(|(_, &x)| x == c).map(|(&k, _)| k);
                ok &= got == want;
            }
        }
        if !ok {
            break;
        }
    }
    report("choice dictionary matches a map oracle over 100k operations", ok, "");
}
