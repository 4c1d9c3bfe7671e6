//! Immutable simple undirected graphs.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Dense vertex id, `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(Vertex, Vertex, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters {
        family: &'static str,
        reason: String,
    },
}

/// A simple, connected, undirected graph with sorted adjacency lists.
///
/// Values are immutable once built. The only way to obtain a disconnected
/// graph is [`Graph::from_edges_unchecked_connectivity`], which exists for the
/// file loader's override flag.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    labels: BTreeMap<Vertex, String>,
    edge_count: usize,
}

impl Graph {
    /// Builds a connected graph on `n` vertices from an edge list.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let g = Self::from_edges_unchecked_connectivity(n, edges)?;
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but accepts disconnected input.
    pub fn from_edges_unchecked_connectivity(
        n: usize,
        edges: &[(Vertex, Vertex)],
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adjacency,
            labels: BTreeMap::new(),
            edge_count: edges.len(),
        })
    }

    pub fn with_label(mut self, v: Vertex, tag: impl Into<String>) -> Self {
        assert!(v < self.order(), "label on missing vertex {v}");
        self.labels.insert(v, tag.into());
        self
    }

    pub(crate) fn set_labels(&mut self, labels: BTreeMap<Vertex, String>) {
        self.labels = labels;
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.order()
    }

    /// Sorted open neighborhood N(v).
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    /// First vertex carrying `tag`, if any.
    pub fn find_label(&self, tag: &str) -> Option<Vertex> {
        self.labels.iter().find(|(_, t)| *t == tag).map(|(&v, _)| v)
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_order(0).len() == self.order()
    }

    fn bfs_order(&self, start: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.order()];
        let mut order = Vec::with_capacity(self.order());
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.size() + 1 == self.order()
    }

    /// A tree in which every vertex has degree at most two.
    pub fn is_path(&self) -> bool {
        self.is_tree() && self.max_degree() <= 2
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adjacency.iter().all(|nbrs| nbrs.len() + 1 == n)
    }

    /// Breadth-first 2-coloring. Returns the two sides, the side containing
    /// vertex 0 first, or `None` when the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let mut side: Vec<Option<bool>> = vec![None; self.order()];
        for root in self.vertices() {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (a, b): (Vec<_>, Vec<_>) = self.vertices().partition(|&v| side[v] == Some(false));
        Some((a, b))
    }

    /// Intersection of the open neighborhoods of every vertex in `set`.
    pub fn common_neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        let Some((&first, rest)) = set.split_first() else {
            return Vec::new();
        };
        let mut common = self.neighbors(first).to_vec();
        for &u in rest {
            common.retain(|v| self.has_edge(u, *v));
        }
        common
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .field("labels", &self.labels)
            .finish()
    }
}
