//! Join, cartesian product and line graph.

use std::collections::BTreeMap;

use crate::graph::{Graph, GraphError, Vertex};

/// G1 + G2: disjoint union plus every edge between the two vertex sets.
/// Vertices of `g1` keep their ids; vertices of `g2` are shifted by `|V(g1)|`.
pub fn join(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.order();
    let mut edges: Vec<(Vertex, Vertex)> = g1.edges().collect();
    edges.extend(g2.edges().map(|(u, v)| (u + n1, v + n1)));
    edges.extend(
        g1.vertices()
            .flat_map(|u| g2.vertices().map(move |v| (u, v + n1))),
    );
    let mut g =
        Graph::from_edges(n1 + g2.order(), &edges).expect("join of nonempty graphs is connected");
    let labels: BTreeMap<_, _> = g1
        .labels()
        .iter()
        .map(|(&v, t)| (v, t.clone()))
        .chain(g2.labels().iter().map(|(&v, t)| (v + n1, t.clone())))
        .collect();
    g.set_labels(labels);
    g
}

/// G1 □ G2 with vertex `(u1, u2)` stored at id `u1 * |V(g2)| + u2`.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Graph {
    let n2 = g2.order();
    let id = |a: Vertex, b: Vertex| a * n2 + b;
    let mut edges = Vec::with_capacity(g1.size() * n2 + g2.size() * g1.order());
    for a in g1.vertices() {
        for (b, c) in g2.edges() {
            edges.push((id(a, b), id(a, c)));
        }
    }
    for (a, c) in g1.edges() {
        for b in g2.vertices() {
            edges.push((id(a, b), id(c, b)));
        }
    }
    Graph::from_edges(g1.order() * n2, &edges).expect("product of connected graphs is connected")
}

/// L(G): one vertex per edge of `g` (in [`Graph::edges`] order), adjacent
/// when the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    if edges.is_empty() {
        return Err(GraphError::InvalidParameters {
            family: "line-graph",
            reason: "input has no edges".into(),
        });
    }
    let index: BTreeMap<(Vertex, Vertex), Vertex> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let key = |a: Vertex, b: Vertex| index[&(a.min(b), a.max(b))];
    let mut line_edges = Vec::new();
    for v in g.vertices() {
        let incident: Vec<Vertex> = g.neighbors(v).iter().map(|&u| key(u, v)).collect();
        for (i, &a) in incident.iter().enumerate() {
            for &b in &incident[i + 1..] {
                line_edges.push((a.min(b), a.max(b)));
            }
        }
    }
    Graph::from_edges(edges.len(), &line_edges)
}
