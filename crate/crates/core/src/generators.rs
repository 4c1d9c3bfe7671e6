//! Graph families.
//!
//! Hub vertices of wheels and gears get id 0 and a label (`s` and `v0`), so
//! code that needs the center can look it up with [`Graph::find_label`].

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError, Vertex};
use crate::ops;

pub const WHEEL_HUB: &str = "s";
pub const GEAR_HUB: &str = "v0";

fn invalid(family: &'static str, reason: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters {
        family,
        reason: reason.into(),
    }
}

fn ring(offset: Vertex, len: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..len).map(move |i| (offset + i, offset + (i + 1) % len))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(invalid("path", "n must be at least 1"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle", "n must be at least 3"));
    }
    Graph::from_edges(n, &ring(0, n).collect::<Vec<_>>())
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(invalid("complete", "n must be at least 1"));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges)
}

/// K_{m,n}; side one is `0..m`, side two is `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
    if m < 1 || n < 1 {
        return Err(invalid("complete-bipartite", "m and n must be at least 1"));
    }
    let edges: Vec<_> = (0..m)
        .flat_map(|a| (m..m + n).map(move |b| (a, b)))
        .collect();
    Graph::from_edges(m + n, &edges)
}

/// W_n: hub 0 joined to the rim cycle `1..n`, n vertices in total.
pub fn wheel(n: usize) -> Result<Graph, GraphError> {
    if n < 4 {
        return Err(invalid("wheel", "n must be at least 4"));
    }
    let rim = n - 1;
    let edges: Vec<_> = (1..n).map(|v| (0, v)).chain(ring(1, rim)).collect();
    Ok(Graph::from_edges(n, &edges)?.with_label(0, WHEEL_HUB))
}

/// The n-gear: rim cycle v1..v2n (ids 1..=2n) with the hub v0 (id 0)
/// adjacent to every odd-indexed rim vertex.
pub fn gear(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("gear", "n must be at least 3"));
    }
    let edges: Vec<_> = ring(1, 2 * n)
        .chain((1..2 * n).step_by(2).map(|i| (0, i)))
        .collect();
    Ok(Graph::from_edges(2 * n + 1, &edges)?.with_label(0, GEAR_HUB))
}

/// Vertex count (k^{h+1} - 1)/(k - 1) of a complete k-ary tree of height h.
pub fn kary_tree_order(k: usize, h: usize) -> Option<usize> {
    let top = k.checked_pow(u32::try_from(h + 1).ok()?)?;
    Some((top - 1) / (k - 1))
}

/// Complete k-ary tree of height h, numbered level by level: the children
/// of vertex i are `k*i + 1 ..= k*i + k`.
pub fn complete_kary_tree(k: usize, h: usize) -> Result<Graph, GraphError> {
    if k < 2 || h < 1 {
        return Err(invalid("complete-kary-tree", "requires k >= 2 and h >= 1"));
    }
    let n = kary_tree_order(k, h)
        .filter(|&n| n <= 1 << 22)
        .ok_or_else(|| invalid("complete-kary-tree", "tree too large"))?;
    let edges: Vec<_> = (1..n).map(|v| ((v - 1) / k, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn line_of_kary_tree(k: usize, h: usize) -> Result<Graph, GraphError> {
    ops::line_graph(&complete_kary_tree(k, h)?)
}

/// How the growing triangle chain picks the edge its next vertex attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeChoice {
    /// The first edge in insertion order.
    #[default]
    First,
    /// The most recently inserted edge.
    Last,
    /// Uniformly at random from a seeded stream.
    Seeded(u64),
}

/// Starts from a triangle and, `k - 1` times, adds a vertex adjacent to both
/// endpoints of an existing edge. The result has `k + 2` vertices and
/// `2k + 1` edges.
pub fn prop2_chain(k: usize, choice: EdgeChoice) -> Result<Graph, GraphError> {
    if k < 1 {
        return Err(invalid("prop2-chain", "k must be at least 1"));
    }
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut rng = match choice {
        EdgeChoice::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    for w in 3..k + 2 {
        let (u, v) = match (&mut rng, choice) {
            (Some(rng), _) => edges[rng.gen_range(0..edges.len())],
            (None, EdgeChoice::Last) => *edges.last().unwrap(),
            (None, _) => edges[0],
        };
        edges.push((u, w));
        edges.push((v, w));
    }
    Graph::from_edges(k + 2, &edges)
}

/// Uniform labeled tree on `n` vertices decoded from a seeded Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(invalid("random-tree", "n must be at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Graph::from_edges(n, &prufer_decode(n, &code))
}

fn prufer_decode(n: usize, code: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let mut remaining = vec![1usize; n];
    for &v in code {
        remaining[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| remaining[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves.pop().expect("prufer code always leaves a leaf");
        edges.push((leaf.min(v), leaf.max(v)));
        remaining[v] -= 1;
        if remaining[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a.min(b), a.max(b)));
    edges
}

/// A named, parameterized graph family instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { m: usize, n: usize },
    Wheel { n: usize },
    Gear { n: usize },
    CompleteKaryTree { k: usize, h: usize },
    LineOfKaryTree { k: usize, h: usize },
    Prop2Chain { k: usize, choice: EdgeChoice },
    RandomTree { n: usize, seed: u64 },
}

pub const FAMILY_NAMES: &[&str] = &[
    "path",
    "cycle",
    "complete",
    "complete-bipartite",
    "wheel",
    "gear",
    "complete-kary-tree",
    "line-of-kary-tree",
    "prop2-chain",
    "random-tree",
];

impl FamilySpec {
    /// Parses a family name plus `key=value` parameters. `star` is accepted
    /// as shorthand for `complete-bipartite` with `m=1`.
    pub fn from_params(
        family: &str,
        params: &BTreeMap<String, String>,
    ) -> Result<Self, GraphError> {
        let name: &'static str = match family {
            "star" => "complete-bipartite",
            other => FAMILY_NAMES
                .iter()
                .find(|&&f| f == other)
                .ok_or_else(|| invalid("family", format!("unknown family `{other}`")))?,
        };
        let int = |key: &str| -> Result<usize, GraphError> {
            let raw = params
                .get(key)
                .ok_or_else(|| invalid(name, format!("missing parameter `{key}`")))?;
            raw.parse()
                .map_err(|_| invalid(name, format!("parameter `{key}` is not an integer: {raw}")))
        };
        let allowed: &[&str] = match name {
            "complete-bipartite" if family == "star" => &["n"],
            "complete-bipartite" => &["m", "n"],
            "complete-kary-tree" | "line-of-kary-tree" => &["k", "h"],
            "prop2-chain" => &["k", "choice", "seed"],
            "random-tree" => &["n", "seed"],
            _ => &["n"],
        };
        if let Some(extra) = params.keys().find(|key| !allowed.contains(&key.as_str())) {
            return Err(invalid(name, format!("unexpected parameter `{extra}`")));
        }
        let spec = match name {
            "path" => FamilySpec::Path { n: int("n")? },
            "cycle" => FamilySpec::Cycle { n: int("n")? },
            "complete" => FamilySpec::Complete { n: int("n")? },
            "complete-bipartite" if family == "star" => {
                FamilySpec::CompleteBipartite { m: 1, n: int("n")? }
            }
            "complete-bipartite" => FamilySpec::CompleteBipartite {
                m: int("m")?,
                n: int("n")?,
            },
            "wheel" => FamilySpec::Wheel { n: int("n")? },
            "gear" => FamilySpec::Gear { n: int("n")? },
            "complete-kary-tree" => FamilySpec::CompleteKaryTree {
                k: int("k")?,
                h: int("h")?,
            },
            "line-of-kary-tree" => FamilySpec::LineOfKaryTree {
                k: int("k")?,
                h: int("h")?,
            },
            "prop2-chain" => {
                let choice = match (params.get("choice").map(String::as_str), params.get("seed")) {
                    (Some("first") | None, None) => EdgeChoice::First,
                    (Some("last"), None) => EdgeChoice::Last,
                    (Some("seeded") | None, Some(_)) => EdgeChoice::Seeded(int("seed")? as u64),
                    (Some(other), _) => {
                        return Err(invalid(name, format!("unknown edge choice `{other}`")))
                    }
                };
                FamilySpec::Prop2Chain {
                    k: int("k")?,
                    choice,
                }
            }
            "random-tree" => FamilySpec::RandomTree {
                n: int("n")?,
                seed: int("seed")? as u64,
            },
            _ => unreachable!(),
        };
        Ok(spec)
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        match *self {
            FamilySpec::Path { n } => path(n),
            FamilySpec::Cycle { n } => cycle(n),
            FamilySpec::Complete { n } => complete(n),
            FamilySpec::CompleteBipartite { m, n } => complete_bipartite(m, n),
            FamilySpec::Wheel { n } => wheel(n),
            FamilySpec::Gear { n } => gear(n),
            FamilySpec::CompleteKaryTree { k, h } => complete_kary_tree(k, h),
            FamilySpec::LineOfKaryTree { k, h } => line_of_kary_tree(k, h),
            FamilySpec::Prop2Chain { k, choice } => prop2_chain(k, choice),
            FamilySpec::RandomTree { n, seed } => random_tree(n, seed),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteBipartite { .. } => "complete-bipartite",
            FamilySpec::Wheel { .. } => "wheel",
            FamilySpec::Gear { .. } => "gear",
            FamilySpec::CompleteKaryTree { .. } => "complete-kary-tree",
            FamilySpec::LineOfKaryTree { .. } => "line-of-kary-tree",
            FamilySpec::Prop2Chain { .. } => "prop2-chain",
            FamilySpec::RandomTree { .. } => "random-tree",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.family_name();
        match self {
            FamilySpec::Path { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::Complete { n }
            | FamilySpec::Wheel { n }
            | FamilySpec::Gear { n } => write!(f, "{name}(n={n})"),
            FamilySpec::CompleteBipartite { m, n } => write!(f, "{name}(m={m},n={n})"),
            FamilySpec::CompleteKaryTree { k, h } | FamilySpec::LineOfKaryTree { k, h } => {
                write!(f, "{name}(k={k},h={h})")
            }
            FamilySpec::Prop2Chain { k, choice } => match choice {
                EdgeChoice::First => write!(f, "{name}(k={k})"),
                EdgeChoice::Last => write!(f, "{name}(k={k},choice=last)"),
                EdgeChoice::Seeded(seed) => write!(f, "{name}(k={k},seed={seed})"),
            },
            FamilySpec::RandomTree { n, seed } => write!(f, "{name}(n={n},seed={seed})"),
        }
    }
}
