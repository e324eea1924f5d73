//! Undirected simple graphs and their canonical matrices.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::RMatrix;

/// An undirected simple graph on vertices `0..n`.
///
/// Edges are stored normalized as `(min, max)` in a sorted set, so iteration
/// order (and therefore every matrix built from the graph) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and endpoints `>= n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) has an endpoint >= n = {n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            if !set.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(Self { n, edges: set })
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// The five-vertex, four-edge graph used to illustrate the spin-network
    /// equivalences: edges 0-1, 1-2, 1-3, 2-3 and an isolated vertex 4.
    pub fn spin_example() -> Self {
        Self::new(5, [(0, 1), (1, 2), (1, 3), (2, 3)]).expect("static graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    /// `A[i][j] = 1` iff `{i, j}` is an edge.
    pub fn adjacency_matrix(&self) -> RMatrix {
        let mut a = RMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            a[(i, j)] = 1.0;
            a[(j, i)] = 1.0;
        }
        a
    }

    /// Diagonal matrix of vertex degrees.
    pub fn degree_matrix(&self) -> RMatrix {
        let deg = self.degrees();
        RMatrix::from_fn(
            self.n,
            self.n,
            |i, j| if i == j { deg[i] as f64 } else { 0.0 },
        )
    }

    /// Discrete Laplacian with the sign convention `L = A - D` (row sums zero).
    pub fn laplacian(&self) -> RMatrix {
        self.adjacency_matrix() - self.degree_matrix()
    }

    /// Signless Laplacian `Q = A + D`.
    pub fn signless_laplacian(&self) -> RMatrix {
        self.adjacency_matrix() + self.degree_matrix()
    }

    /// Parses the plain-text edge-list format: a header line `n m` followed
    /// by `m` lines `i j` with 0-based endpoints. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing 'n m' header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;

        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Self::new(n, edges)
    }

    /// Serializes to the edge-list format read by [`Graph::from_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (i, j) in self.edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_edge_list(s)
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |name: &str| -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                msg: format!("missing {name}"),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line,
                msg: format!("bad {name}: {e}"),
            })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

/// Complete bipartite search instance: `n1` left vertices of which `k1` are
/// marked, `n2` right vertices of which `k2` are marked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteSpec {
    pub n1: usize,
    pub n2: usize,
    pub k1: usize,
    pub k2: usize,
}

impl BipartiteSpec {
    pub fn new(n1: usize, n2: usize, k1: usize, k2: usize) -> Result<Self> {
        let spec = Self { n1, n2, k1, k2 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let reason = if self.n1 == 0 || self.n2 == 0 {
            "both partite sets need at least one vertex"
        } else if self.k1 > self.n1 || self.k2 > self.n2 {
            "marked count exceeds partite set size"
        } else if self.k1 + self.k2 == 0 {
            "at least one vertex must be marked"
        } else {
            return Ok(());
        };
        Err(Error::InvalidSpec {
            n1: self.n1,
            n2: self.n2,
            k1: self.k1,
            k2: self.k2,
            reason,
        })
    }

    /// Total vertex count `N = N1 + N2`.
    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    /// Unmarked left vertices `N1 - k1`.
    pub fn nk1(&self) -> usize {
        self.n1 - self.k1
    }

    /// Unmarked right vertices `N2 - k2`.
    pub fn nk2(&self) -> usize {
        self.n2 - self.k2
    }

    /// Relabels the partite sets: `N1 <-> N2`, `k1 <-> k2`.
    pub fn swapped(&self) -> Self {
        Self {
            n1: self.n2,
            n2: self.n1,
            k1: self.k2,
            k2: self.k1,
        }
    }

    /// Vertex indices of the four classes `(a, b, c, d)` in the canonical
    /// layout: left-marked, right-marked, left-unmarked, right-unmarked.
    pub fn classes(&self) -> [std::ops::Range<usize>; 4] {
        let (n1, k1, k2) = (self.n1, self.k1, self.k2);
        [0..k1, n1..n1 + k2, k1..n1, n1 + k2..self.n()]
    }

    /// Marked vertices in canonical layout: first `k1` left and first `k2` right.
    pub fn marked(&self) -> Vec<usize> {
        let [a, b, _, _] = self.classes();
        a.chain(b).collect()
    }

    /// The complete bipartite graph `K_{n1,n2}` and its marked vertex set.
    pub fn complete_bipartite(&self) -> Result<(Graph, Vec<usize>)> {
        self.validate()?;
        let (n1, n2) = (self.n1, self.n2);
        let edges = (0..n1).flat_map(|i| (n1..n1 + n2).map(move |j| (i, j)));
        let g = Graph::new(self.n(), edges)?;
        Ok((g, self.marked()))
    }
}

impl fmt::Display for BipartiteSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K({},{}) with k1={}, k2={}",
            self.n1, self.n2, self.k1, self.k2
        )
    }
}

/// Builds `K_{n1,n2}` with the canonical marked set for `spec`.
pub fn complete_bipartite(spec: BipartiteSpec) -> Result<(Graph, Vec<usize>)> {
    spec.complete_bipartite()
}
