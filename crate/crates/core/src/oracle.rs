//! Reference traversals over explicit adjacency lists.
//!
//! These are deliberately ordinary pointer-machine implementations (stack,
//! queue, color array); the in-place engines are tested for event-stream
//! equality against them.

use std::collections::VecDeque;

use crate::graph::EdgeList;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event {
    Pre(u64),
    Post(u64),
    /// Edge (u, v) is about to be inspected.
    PreExplore(u64, u64),
    /// Edge (u, v) has been fully handled (followed or skipped).
    PostExplore(u64, u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    Vertex(u64),
    /// Visit every component, roots in ascending vertex order.
    All,
}

/// DFS in ascending neighbor order.  With `with_edges` the stream includes
/// a PreExplore/PostExplore pair around every edge inspection.
pub fn dfs(e: &EdgeList, start: Start, with_edges: bool) -> Vec<Event> {
    let adj = e.adjacency();
    let n = e.n as usize;
    let mut color = vec![0u8; n + 1]; // 0 white, 1 gray, 2 black
    let mut out = Vec::new();
    let roots: Vec<u64> = match start {
        Start::Vertex(v) => vec![v],
        Start::All => (1..=e.n).collect(),
    };
    for root in roots {
        if color[root as usize] != 0 {
            continue;
        }
        // Explicit stack of (vertex, next neighbor index).
        let mut stack: Vec<(u64, usize)> = Vec::new();
        color[root as usize] = 1;
        out.push(Event::Pre(root));
        stack.push((root, 0));
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            let nbrs = &adj[u as usize];
            if *i < nbrs.len() {
                let v = nbrs[*i];
                *i += 1;
                if with_edges {
                    out.push(Event::PreExplore(u, v));
                }
                if color[v as usize] == 0 {
                    color[v as usize] = 1;
                    out.push(Event::Pre(v));
                    stack.push((v, 0));
                } else if with_edges {
                    out.push(Event::PostExplore(u, v));
                }
            } else {
                stack.pop();
                color[u as usize] = 2;
                out.push(Event::Post(u));
                if with_edges {
                    if let Some(&(p, _)) = stack.last() {
                        // the edge (p, u) that discovered u is now finished
                        out.push(Event::PostExplore(p, u));
                    }
                }
            }
        }
    }
    out
}

/// BFS distances; within a round vertices are reported in ascending order.
/// Returns (vertex, distance, root) triples.
pub fn bfs(e: &EdgeList, start: Start) -> Vec<(u64, u64, u64)> {
    let adj = e.adjacency();
    let mut dist = vec![u64::MAX; e.n as usize + 1];
    let mut out = Vec::new();
    let roots: Vec<u64> = match start {
        Start::Vertex(v) => vec![v],
        Start::All => (1..=e.n).collect(),
    };
    for root in roots {
        if dist[root as usize] != u64::MAX {
            continue;
        }
        dist[root as usize] = 0;
        let mut frontier = vec![root];
        let mut d = 0u64;
        while !frontier.is_empty() {
            let mut next = VecDeque::new();
            for &v in &frontier {
                out.push((v, d, root));
            }
            for &v in &frontier {
                for &u in &adj[v as usize] {
                    if dist[u as usize] == u64::MAX {
                        dist[u as usize] = d + 1;
                        next.push_back(u);
                    }
                }
            }
            let mut next: Vec<u64> = next.into();
            next.sort_unstable();
            frontier = next;
            d += 1;
        }
    }
    out
}
