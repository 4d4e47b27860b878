//! Edge lists, the sorted-standard builder, degrees, validation and
//! deterministic graph generators.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::ram::WordArray;

/// A simple graph as a list of edges over vertices `1..=n`.
/// Undirected edges are stored once in either orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub n: u64,
    pub directed: bool,
    pub edges: Vec<(u64, u64)>,
}

impl EdgeList {
    pub fn new(n: u64, directed: bool, edges: Vec<(u64, u64)>) -> Result<Self> {
        let e = EdgeList { n, directed, edges };
        e.validate()?;
        Ok(e)
    }

    pub fn m(&self) -> u64 {
        self.edges.len() as u64
    }

    /// Total adjacency length of the array form: `m` directed, `2m` undirected.
    pub fn adjacency_len(&self) -> u64 {
        if self.directed {
            self.m()
        } else {
            2 * self.m()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EdgeList("vertex count must be at least 1".into()));
        }
        let mut seen = HashSet::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            if u == 0 || v == 0 || u > self.n || v > self.n {
                return Err(Error::EdgeList(format!(
                    "edge ({u}, {v}) outside vertex range [1, {}]",
                    self.n
                )));
            }
            if u == v {
                return Err(Error::EdgeList(format!("self loop at vertex {u}")));
            }
            let key = if self.directed || u < v { (u, v) } else { (v, u) };
            if !seen.insert(key) {
                return Err(Error::EdgeList(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(())
    }

    /// Per-vertex out-degrees (undirected: plain degrees).
    pub fn degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n as usize + 1];
        for &(u, v) in &self.edges {
            d[u as usize] += 1;
            if !self.directed {
                d[v as usize] += 1;
            }
        }
        d
    }

    /// Sorted adjacency lists indexed by vertex.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            if !self.directed {
                adj[v as usize].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }
}

/// Builds the sorted standard array representation with word width `width`.
///
/// The result is canonical: the same graph always produces the same cells.
pub fn build(e: &EdgeList, width: u32) -> Result<WordArray> {
    e.validate()?;
    let n = e.n;
    let l = e.adjacency_len();
    let lay = Layout { n, l };
    if width < lay.min_width() || width > 64 {
        return Err(Error::Parameter(format!(
            "width {width} too small for n = {n}, L = {l}; need at least {}",
            lay.min_width()
        )));
    }
    let adj = e.adjacency();
    let cells = lay.cells();
    let mut a = WordArray::new(width, cells as usize)?;
    a.write(0, n)?;
    a.write(n + 1, l)?;
    let mut pos = n + 2;
    for v in 1..=n {
        a.write(v, pos)?;
        for &u in &adj[v as usize] {
            a.write(pos, u)?;
            pos += 1;
        }
    }
    debug_assert_eq!(pos, n + l + 2);
    a.reset_counters();
    Ok(a)
}

/// Degree of `v` read off a sorted standard array.
pub fn degree(a: &WordArray, v: u64) -> Result<u64> {
    let lay = Layout::of(a)?;
    if !lay.is_name(v) {
        return Err(Error::Parameter(format!(
            "vertex {v} outside [1, {}]",
            lay.n
        )));
    }
    let t = a.read(v)?;
    let next = if v < lay.n { a.read(v + 1)? } else { lay.sentinel() };
    next.checked_sub(t).ok_or(Error::Corruption {
        index: v,
        reason: "offset table is not monotone".into(),
    })
}

/// Validation report for a sorted standard array.
#[derive(Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structural validator for the sorted standard representation.
/// Collects all violations instead of stopping at the first.
pub fn validate_sorted_standard(a: &WordArray) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let lay = match Layout::of(a) {
        Ok(l) => l,
        Err(e) => {
            rep.violations.push(e.to_string());
            return rep;
        }
    };
    let (n, l) = (lay.n, lay.l);
    if a.width() < lay.min_width() {
        rep.violations.push(format!(
            "width {} below required {}",
            a.width(),
            lay.min_width()
        ));
    }
    let mut prev = n + 2;
    for v in 1..=n {
        let t = a.peek(v).unwrap_or(0);
        if !(n + 2..=n + l + 2).contains(&t) {
            rep.violations
                .push(format!("T[{v}] = {t} outside [{}, {}]", n + 2, n + l + 2));
            continue;
        }
        if t < prev {
            rep.violations
                .push(format!("T[{v}] = {t} breaks monotonicity (previous {prev})"));
        }
        prev = t;
    }
    if prev > n + l + 2 {
        rep.violations.push("offset table overruns the array".into());
    }
    // Adjacency arrays: entries are names, no self reference, strictly ascending.
    for v in 1..=n {
        let t = a.peek(v).unwrap_or(0);
        let end = if v < n {
            a.peek(v + 1).unwrap_or(t)
        } else {
            lay.sentinel()
        };
        let mut last = 0u64;
        for p in t..end.min(lay.sentinel()) {
            let x = a.peek(p).unwrap_or(0);
            if !lay.is_name(x) {
                rep.violations
                    .push(format!("A[{p}] = {x} is not a vertex name"));
                continue;
            }
            if x == v {
                rep.violations.push(format!("A[{p}] = {x} is a self loop"));
            }
            if x <= last {
                rep.violations.push(format!(
                    "A[{p}] = {x} not strictly ascending within the array of {v}"
                ));
            }
            last = x;
        }
    }
    rep
}

/// Reads an edge list back out of a sorted standard array.
pub fn edge_list_from_array(a: &WordArray, directed: bool) -> Result<EdgeList> {
    let lay = Layout::of(a)?;
    let rep = validate_sorted_standard(a);
    if !rep.pass() {
        return Err(Error::Representation(format!(
            "not a sorted standard array: {}",
            rep.violations.join("; ")
        )));
    }
    let mut edges = Vec::new();
    for v in 1..=lay.n {
        let t = a.peek(v)?;
        let end = if v < lay.n { a.peek(v + 1)? } else { lay.sentinel() };
        for p in t..end {
            let u = a.peek(p)?;
            if directed || v < u {
                edges.push((v, u));
            }
        }
    }
    EdgeList::new(lay.n, directed, edges)
}

/// Deterministic generator models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// `m` distinct random edges.
    Gnm,
    /// Path 1-2-...-n.
    Path,
    /// Cycle 1-2-...-n-1.
    Cycle,
    /// Vertex 1 adjacent to all others.
    Star,
    /// Edges i-(2i), i-(2i+1) where in range.
    BinaryTree,
    /// Disjoint short directed/undirected chains: degree-1 heavy.
    Deg1Chains,
    /// Random graph on the first two thirds of the vertices; the rest isolated.
    IsolatedMix,
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Model> {
        Ok(match s {
            "gnm" => Model::Gnm,
            "path" => Model::Path,
            "cycle" => Model::Cycle,
            "star" => Model::Star,
            "binary-tree" => Model::BinaryTree,
            "deg1-chains" => Model::Deg1Chains,
            "isolated-mix" => Model::IsolatedMix,
            other => {
                return Err(Error::Parameter(format!("unknown model '{other}'")))
            }
        })
    }
}

fn gnm_edges(
    rng: &mut ChaCha8Rng,
    vertices: &[u64],
    m: u64,
    directed: bool,
) -> Result<Vec<(u64, u64)>> {
    let k = vertices.len() as u64;
    let cap = if directed {
        k.saturating_mul(k.saturating_sub(1))
    } else {
        k.saturating_mul(k.saturating_sub(1)) / 2
    };
    if m > cap {
        return Err(Error::Parameter(format!(
            "m = {m} exceeds the maximum of {cap} for {k} vertices"
        )));
    }
    let mut seen = HashSet::with_capacity(m as usize);
    let mut edges = Vec::with_capacity(m as usize);
    while (edges.len() as u64) < m {
        let u = vertices[rng.gen_range(0..vertices.len())];
        let v = vertices[rng.gen_range(0..vertices.len())];
        if u == v {
            continue;
        }
        let key = if directed || u < v { (u, v) } else { (v, u) };
        if seen.insert(key) {
            edges.push(key);
        }
    }
    Ok(edges)
}

/// Generates a graph from a model, deterministically in `seed`.
/// `m` is required for `gnm` and `isolated-mix` and ignored elsewhere.
pub fn generate(
    model: Model,
    n: u64,
    m: Option<u64>,
    directed: bool,
    seed: u64,
) -> Result<EdgeList> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match model {
        Model::Gnm => {
            let m = m.ok_or_else(|| Error::Parameter("gnm requires m".into()))?;
            let verts: Vec<u64> = (1..=n).collect();
            gnm_edges(&mut rng, &verts, m, directed)?
        }
        Model::Path => (1..n).map(|i| (i, i + 1)).collect(),
        Model::Cycle => {
            if n < 3 {
                return Err(Error::Parameter("cycle requires n >= 3".into()));
            }
            let mut e: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
            e.push(if directed { (n, 1) } else { (1, n) });
            e
        }
        Model::Star => (2..=n).map(|i| (1, i)).collect(),
        Model::BinaryTree => {
            let mut e = Vec::new();
            for i in 1..=n {
                for c in [2 * i, 2 * i + 1] {
                    if c <= n {
                        e.push((i, c));
                    }
                }
            }
            e
        }
        Model::Deg1Chains => {
            let mut e = Vec::new();
            let mut v = 1;
            while v <= n {
                let len = rng.gen_range(1..=5u64).min(n - v + 1);
                for i in v..v + len - 1 {
                    e.push((i, i + 1));
                }
                v += len;
            }
            e
        }
        Model::IsolatedMix => {
            let m = m.ok_or_else(|| Error::Parameter("isolated-mix requires m".into()))?;
            let k = n - n / 3;
            let verts: Vec<u64> = (1..=k).collect();
            gnm_edges(&mut rng, &verts, m, directed)?
        }
    };
    EdgeList::new(n, directed, edges)
}
