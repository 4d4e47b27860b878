//! Randomized properties over arbitrary small graphs.

use ipg::graph::{self, EdgeList};
use ipg::layout::Layout;
use ipg::oracle::{self, Start};
use ipg::{bfs, dfs, io, repr, Mode};
use proptest::prelude::*;

fn edge_list() -> impl Strategy<Value = EdgeList> {
    (1u64..40, any::<bool>())
        .prop_flat_map(|(n, directed)| {
            let pairs = proptest::collection::vec((1..=n, 1..=n), 0..80);
            (Just(n), Just(directed), pairs)
        })
        .prop_map(|(n, directed, pairs)| {
            let mut edges: Vec<(u64, u64)> = Vec::new();
            for (u, v) in pairs {
                if u == v {
                    continue;
                }
                let key = if directed || u < v { (u, v) } else { (v, u) };
                if !edges.contains(&key) {
                    edges.push(key);
                }
            }
            EdgeList::new(n, directed, edges).unwrap()
        })
}

fn arr(e: &EdgeList) -> ipg::WordArray {
    let w = Layout { n: e.n, l: e.adjacency_len() }.min_width();
    graph::build(e, w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn representation_transforms_roundtrip(e in edge_list()) {
        let mut a = arr(&e);
        let original: Vec<u64> = a.words().to_vec();
        repr::to_begin_pointer(&mut a, Mode::Banded)?;
        repr::swap_representation(&mut a)?;
        repr::restore_sorted_standard(&mut a)?;
        prop_assert_eq!(a.words(), &original[..]);
    }

    #[test]
    fn dfs_matches_oracle_and_restores(e in edge_list(), sv in 0u64..40, edges: bool) {
        let start = if sv == 0 || sv > e.n { Start::All } else { Start::Vertex(sv) };
        let mut a = arr(&e);
        let before = a.snapshot();
        let (ev, stats) = dfs::dfs(&mut a, Mode::Banded, start, edges)?;
        prop_assert_eq!(ev, oracle::dfs(&e, start, edges));
        prop_assert_eq!(a.snapshot(), before);
        prop_assert!(stats.peak_registers <= ipg::REGISTER_BUDGET);
    }

    #[test]
    fn bfs_matches_oracle_and_restores(e in edge_list(), sv in 0u64..40) {
        let start = if sv == 0 || sv > e.n { Start::All } else { Start::Vertex(sv) };
        let mut a = arr(&e);
        let before = a.snapshot();
        let (out, _) = bfs::bfs(&mut a, start)?;
        prop_assert_eq!(out, oracle::bfs(&e, start));
        prop_assert_eq!(a.snapshot(), before);
    }

    #[test]
    fn binary_io_roundtrips(e in edge_list(), directed_flag: bool) {
        let a = arr(&e);
        let bytes = io::to_bytes(&a, directed_flag);
        let (b, d) = io::from_bytes(&bytes)?;
        prop_assert_eq!(a.words(), b.words());
        prop_assert_eq!(a.width(), b.width());
        prop_assert_eq!(d, directed_flag);
    }

    #[test]
    fn text_io_roundtrips(e in edge_list()) {
        let text = io::edge_list_to_text(&e);
        let back = io::edge_list_from_text(&text)?;
        // canonical form: compare built arrays
        let (x, y) = (arr(&e), arr(&back));
        prop_assert_eq!(x.words(), y.words());
        prop_assert_eq!(back.directed, e.directed);
    }

    #[test]
    fn validator_accepts_built_arrays(e in edge_list()) {
        prop_assert!(graph::validate_sorted_standard(&arr(&e)).pass());
    }
}
