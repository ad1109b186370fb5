//! Graph ingestion and triangle counting.
//!
//! Graphs arrive as plain-text edge lists (the format used by the SNAP
//! collection): `#`-comment lines, then one `u v` pair of integer ids per
//! line. Direction is ignored, self-loops are dropped, duplicates collapse,
//! and ids are relabelled to a contiguous range in first-appearance order.
//!
//! The triangle count Δ = Tr(A³)/6 of the adjacency matrix A is computed
//! two ways: exactly, with the forward neighbour-intersection algorithm, and
//! stochastically, by trace estimation on a matrix-free A³ oracle whose
//! per-sample cost is two sparse matrix-vector products and one sparse
//! quadratic form.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::estimator::{estimate_trace, EstimatorKind};
use crate::oracle::{PowerOracle, SparseSymmetric};
use crate::Real;

/// Simple undirected graph: deduplicated edges (u < v) over contiguous
/// vertex ids, no self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Normalises an edge collection: orients pairs as (min, max), drops
    /// self-loops, deduplicates.
    ///
    /// # Panics
    ///
    /// Panics when an endpoint is `≥ num_vertices`.
    pub fn from_edges(num_vertices: usize, raw: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut edges: Vec<(u32, u32)> = raw
            .into_iter()
            .inspect(|&(u, v)| {
                assert!(
                    (u as usize) < num_vertices && (v as usize) < num_vertices,
                    "edge ({u}, {v}) out of range for {num_vertices} vertices"
                );
            })
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Graph {
            num_vertices,
            edges,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Parses a SNAP-style edge list: `#` lines are comments, every other
    /// non-blank line holds two whitespace-separated integer ids. Ids are
    /// relabelled to [0, V) in first-appearance order; self-loops register
    /// their vertex but contribute no edge.
    pub fn parse_snap(reader: impl BufRead) -> Result<Self> {
        let mut ids = std::collections::HashMap::new();
        let mut edges = Vec::new();
        let intern = |raw: u64, ids: &mut std::collections::HashMap<u64, u32>| -> u32 {
            let next = ids.len() as u32;
            *ids.entry(raw).or_insert(next)
        };
        for (index, line) in reader.lines().enumerate() {
            let line = line?;
            let number = index + 1;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let mut tokens = text.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::parse(
                        number,
                        format!("expected two vertex ids, got '{text}'"),
                    ))
                }
            };
            let u: u64 = a
                .parse()
                .map_err(|_| Error::parse(number, format!("'{a}' is not an integer id")))?;
            let v: u64 = b
                .parse()
                .map_err(|_| Error::parse(number, format!("'{b}' is not an integer id")))?;
            let u = intern(u, &mut ids);
            let v = intern(v, &mut ids);
            if u != v {
                edges.push(if u < v { (u, v) } else { (v, u) });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Graph {
            num_vertices: ids.len(),
            edges,
        })
    }

    pub fn parse_snap_str(text: &str) -> Result<Self> {
        Self::parse_snap(text.as_bytes())
    }

    /// Serialises to the edge-list format accepted by [`Graph::parse_snap`].
    /// A self-loop line is written for every vertex first: parsers drop the
    /// loops, but they pin the vertex count and the first-appearance order,
    /// so the round trip reproduces this graph exactly.
    pub fn to_snap_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# undirected graph: {} vertices, {} edges\n",
            self.num_vertices,
            self.edges.len()
        ));
        for v in 0..self.num_vertices {
            out.push_str(&format!("{v} {v}\n"));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// The 0/1 adjacency matrix of `g` as a sparse symmetric oracle with a
/// matrix-vector product (zero diagonal).
pub fn adjacency_oracle<F: Real>(g: &Graph) -> SparseSymmetric<F> {
    SparseSymmetric::new(
        g.num_vertices(),
        g.edges()
            .iter()
            .map(|&(u, v)| (u as usize, v as usize, F::one()))
            .collect(),
    )
    .expect("graph edges are deduplicated")
}

/// Exact triangle count by the forward (neighbour-intersection) algorithm:
/// each edge is oriented towards the degree-larger endpoint and the oriented
/// out-neighbourhoods are intersected with a linear merge.
pub fn exact_triangle_count(g: &Graph) -> u64 {
    let n = g.num_vertices();
    let mut degree = vec![0u32; n];
    for &(u, v) in g.edges() {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    // rank = position in the (degree, id) order; ties broken by id.
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by_key(|&v| (degree[v as usize], v));
    let mut rank = vec![0u32; n];
    for (pos, &v) in order.iter().enumerate() {
        rank[v as usize] = pos as u32;
    }

    let mut forward: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        if rank[u] < rank[v] {
            forward[u].push(rank[v]);
        } else {
            forward[v].push(rank[u]);
        }
    }
    for list in &mut forward {
        list.sort_unstable();
    }

    let mut triangles = 0u64;
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        let (lo, hi) = if rank[u] < rank[v] { (u, v) } else { (v, u) };
        let a = &forward[lo];
        let b = &forward[hi];
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    triangles += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    triangles
}

/// Stochastic estimate of the triangle count.
#[derive(Clone, Copy, Debug)]
pub struct TriangleEstimate<F> {
    pub estimate: F,
    pub samples: usize,
    /// |estimate − exact| / exact, filled by [`TriangleEstimate::with_exact`]
    /// when the exact count is known and nonzero.
    pub abs_rel_error: Option<F>,
}

impl<F: Real> TriangleEstimate<F> {
    pub fn with_exact(mut self, exact: u64) -> Self {
        if exact > 0 {
            let exact = F::from_u64(exact).unwrap();
            self.abs_rel_error = Some((self.estimate - exact).abs() / exact);
        }
        self
    }
}

/// Δ ≈ Tr(A³)/6 via stochastic trace estimation on the matrix-free cube of
/// the adjacency matrix. Per-sample cost is O(edges).
pub fn estimate_triangles<F: Real>(
    g: &Graph,
    kind: EstimatorKind,
    samples: usize,
    seed: u64,
) -> TriangleEstimate<F> {
    let adjacency: SparseSymmetric<F> = adjacency_oracle(g);
    let cubed = PowerOracle::new(&adjacency, 3);
    let six = F::from_f64(6.0).unwrap();
    let trace = estimate_trace(&cubed, kind, samples, seed);
    TriangleEstimate {
        estimate: trace.mean / six,
        samples,
        abs_rel_error: None,
    }
}
