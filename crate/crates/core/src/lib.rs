//! In-place graph traversals on succinct adjacency arrays.
//!
//! A graph lives in a single word array in "sorted standard" form:
//! `A[0] = n`, `A[1..=n]` holds per-vertex begin offsets into the adjacency
//! region, `A[n+1]` is its length, and `A[n+2..]` lists neighbors in
//! ascending order.  Depth- and breadth-first traversal run directly on
//! that array using O(1) extra words, mutate it as they go, and restore it
//! bit-for-bit before returning.

pub mod bfs;
pub mod dfs;
pub mod error;
pub mod graph;
pub mod io;
pub mod layout;
pub mod oracle;
pub mod packed;
pub mod ram;
pub mod repr;

pub use error::{Error, Result};
pub use ram::{AccessStats, WordArray, REGISTER_BUDGET};
pub use repr::Mode;
