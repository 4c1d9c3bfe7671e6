//! Exact search for conditional (k, r)-colorings.
//!
//! Vertices are colored in descending-degree order (ties by id). Colors are
//! tried in ascending order and a vertex may open at most one color beyond
//! the largest used so far, so every color-class partition corresponds to
//! exactly one search leaf.
//!
//! C2 is enforced incrementally: a vertex `u` that still needs
//! `min{d(u), r}` distinct neighbor colors can gain at most one new color per
//! uncolored neighbor, and never more than the palette colors it is not
//! already seeing (minus its own color once it has one). A branch is cut as
//! soon as that optimistic count falls short.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::coloring::{verify, Color, ColoringMap, Partition};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("r must be at least 1")]
    InvalidOrder,
    #[error("k must be at least 1")]
    InvalidPalette,
    #[error("partition cap must be at least 2")]
    InvalidCap,
    #[error("search exceeded its budget of {0:?}")]
    Timeout(Duration),
    #[error("k = {k} is not the conditional chromatic number ({chi_r})")]
    NotChromatic { k: usize, chi_r: usize },
}

/// Per-call wall-clock budget.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub timeout: Option<Duration>,
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits { timeout: None }
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Limits {
            timeout: Some(timeout),
        }
    }

    pub(crate) fn start(&self) -> Budget {
        Budget {
            deadline: self.timeout.map(|t| Instant::now() + t),
            timeout: self.timeout.unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Budget {
    deadline: Option<Instant>,
    timeout: Duration,
}

impl Budget {
    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub chi_r: usize,
    pub witness: ColoringMap,
    pub lower_bound_used: usize,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Greedy clique: from every seed vertex, repeatedly add the highest-degree
/// common neighbor. Returns the largest clique found.
pub fn greedy_clique(g: &Graph) -> Vec<Vertex> {
    let mut best: Vec<Vertex> = Vec::new();
    for seed in g.vertices() {
        let mut clique = vec![seed];
        let mut candidates: Vec<Vertex> = g.neighbors(seed).to_vec();
        while let Some(&next) = candidates
            .iter()
            .max_by_key(|&&w| (g.degree(w), std::cmp::Reverse(w)))
        {
            clique.push(next);
            candidates.retain(|&w| w != next && g.has_edge(next, w));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// max(min{r, Δ} + 1, greedy clique size); never exceeds χ_r.
pub fn lower_bound(g: &Graph, r: usize) -> usize {
    (r.min(g.max_degree()) + 1).max(greedy_clique(g).len())
}

pub(crate) enum Flow {
    Continue,
    Stop,
}

/// Backtracking state for one palette size.
pub(crate) struct Search<'g> {
    g: &'g Graph,
    k: usize,
    order: Vec<Vertex>,
    color: Vec<Color>,
    /// `seen[u * (k + 1) + c]`: neighbors of `u` colored `c`.
    seen: Vec<u32>,
    distinct: Vec<usize>,
    uncolored: Vec<usize>,
    need: Vec<usize>,
    pub(crate) nodes: u64,
    budget: Budget,
}

impl<'g> Search<'g> {
    pub(crate) fn new(g: &'g Graph, k: usize, r: usize, budget: Budget) -> Self {
        let n = g.order();
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        Search {
            g,
            k,
            order,
            color: vec![0; n],
            seen: vec![0; n * (k + 1)],
            distinct: vec![0; n],
            uncolored: g.vertices().map(|v| g.degree(v)).collect(),
            need: g.vertices().map(|v| g.degree(v).min(r)).collect(),
            nodes: 0,
            budget,
        }
    }

    fn still_satisfiable(&self, u: Vertex) -> bool {
        let own = usize::from(self.color[u] != 0);
        let fresh = self.k.saturating_sub(self.distinct[u] + own);
        self.distinct[u] + self.uncolored[u].min(fresh) >= self.need[u]
    }

    fn assign(&mut self, v: Vertex, c: Color) {
        self.color[v] = c;
        let stride = self.k + 1;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.seen[u * stride + c as usize];
            if *slot == 0 {
                self.distinct[u] += 1;
            }
            *slot += 1;
            self.uncolored[u] -= 1;
        }
    }

    fn unassign(&mut self, v: Vertex) {
        let c = self.color[v];
        let stride = self.k + 1;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.seen[u * stride + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.distinct[u] -= 1;
            }
            self.uncolored[u] += 1;
        }
        self.color[v] = 0;
    }

    /// Depth-first walk over canonical colorings; `leaf` receives each
    /// complete coloring together with the number of colors it uses.
    pub(crate) fn run<F>(&mut self, leaf: &mut F) -> Result<Flow, SolveError>
    where
        F: FnMut(&[Color], usize) -> Flow,
    {
        self.descend(0, 0, leaf)
    }

    fn descend<F>(&mut self, depth: usize, used: usize, leaf: &mut F) -> Result<Flow, SolveError>
    where
        F: FnMut(&[Color], usize) -> Flow,
    {
        if depth == self.order.len() {
            return Ok(leaf(&self.color, used));
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && self.budget.expired() {
            return Err(SolveError::Timeout(self.budget.timeout));
        }
        let v = self.order[depth];
        let stride = self.k + 1;
        let limit = self.k.min(used + 1);
        for c in 1..=limit as Color {
            if self.seen[v * stride + c as usize] != 0 {
                continue;
            }
            self.assign(v, c);
            let ok = self.still_satisfiable(v)
                && self
                    .g
                    .neighbors(v)
                    .iter()
                    .all(|&u| self.still_satisfiable(u));
            let flow = if ok {
                self.descend(depth + 1, used.max(c as usize), leaf)
            } else {
                Ok(Flow::Continue)
            };
            self.unassign(v);
            if let Flow::Stop = flow? {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
}

fn check_args(k: usize, r: usize) -> Result<(), SolveError> {
    if r < 1 {
        return Err(SolveError::InvalidOrder);
    }
    if k < 1 {
        return Err(SolveError::InvalidPalette);
    }
    Ok(())
}

fn find_with_budget(
    g: &Graph,
    k: usize,
    r: usize,
    budget: Budget,
) -> Result<(Option<ColoringMap>, u64), SolveError> {
    let mut search = Search::new(g, k, r, budget);
    let mut found = None;
    search.run(&mut |colors: &[Color], _| {
        found = Some(ColoringMap::new(colors.to_vec(), k).normalized());
        Flow::Stop
    })?;
    if let Some(w) = &found {
        debug_assert!(
            verify(g, w, r).is_ok_and(|v| v.is_ok()),
            "unsound witness {w:?}"
        );
    }
    Ok((found, search.nodes))
}

/// A conditional coloring using at most `k` colors, normalized to the colors
/// it actually uses, or `None` when no such coloring exists.
pub fn feasible(
    g: &Graph,
    k: usize,
    r: usize,
    limits: Limits,
) -> Result<Option<ColoringMap>, SolveError> {
    check_args(k, r)?;
    Ok(find_with_budget(g, k, r, limits.start())?.0)
}

/// The r-th order conditional chromatic number with a certified witness.
///
/// Scans k upward from [`lower_bound`]; feasibility is monotone in k, so the
/// first feasible layer is the minimum. A single budget covers all layers.
pub fn chi_r(g: &Graph, r: usize, limits: Limits) -> Result<SolveResult, SolveError> {
    check_args(1, r)?;
    let started = Instant::now();
    let budget = limits.start();
    let lower = lower_bound(g, r);
    let mut nodes = 0;
    for k in lower..=g.order() {
        let (found, explored) = find_with_budget(g, k, r, budget)?;
        nodes += explored;
        if let Some(witness) = found {
            debug_assert_eq!(witness.palette(), k);
            return Ok(SolveResult {
                chi_r: k,
                witness,
                lower_bound_used: lower,
                nodes_explored: nodes,
                elapsed: started.elapsed(),
            });
        }
    }
    unreachable!("an all-distinct coloring always satisfies C1 and C2")
}

/// Walks every canonical coloring with at most `k` colors, calling `visit`
/// with each coloring's partition and the number of colors used. Used by the
/// uniqueness enumerator.
pub(crate) fn for_each_partition<F>(
    g: &Graph,
    k: usize,
    r: usize,
    budget: Budget,
    mut visit: F,
) -> Result<u64, SolveError>
where
    F: FnMut(Partition, usize) -> Flow,
{
    let mut search = Search::new(g, k, r, budget);
    search.run(&mut |colors: &[Color], used| visit(Partition::from_colors(colors), used))?;
    Ok(search.nodes)
}
