//! Unique conditional colorability.

use std::collections::BTreeSet;

use crate::coloring::Partition;
use crate::graph::Graph;
use crate::solver::{chi_r, for_each_partition, Flow, Limits, SolveError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessResult {
    pub k: usize,
    pub r: usize,
    /// Distinct canonical partitions found, in ascending order.
    pub partitions: Vec<Partition>,
    pub unique: bool,
    /// True when enumeration stopped at the cap rather than exhausting the
    /// search space.
    pub capped: bool,
    pub nodes_explored: u64,
}

/// Whether [`enumerate_partitions`] should confirm `k = χ_r` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiCheck {
    Verify,
    Trusted,
}

/// Collects the partitions induced by conditional (k, r)-colorings that use
/// all `k` colors, stopping once `cap` distinct partitions are known.
pub fn enumerate_partitions(
    g: &Graph,
    k: usize,
    r: usize,
    cap: usize,
    check: ChiCheck,
    limits: Limits,
) -> Result<UniquenessResult, SolveError> {
    if cap < 2 {
        return Err(SolveError::InvalidCap);
    }
    if k < 1 {
        return Err(SolveError::InvalidPalette);
    }
    if r < 1 {
        return Err(SolveError::InvalidOrder);
    }
    let budget = limits.start();
    if check == ChiCheck::Verify {
        let chi = chi_r(g, r, limits)?.chi_r;
        if chi != k {
            return Err(SolveError::NotChromatic { k, chi_r: chi });
        }
    }
    let mut found = BTreeSet::new();
    let mut capped = false;
    let nodes = for_each_partition(g, k, r, budget, |partition, used| {
        if used < k {
            // a coloring with spare colors means k exceeds χ_r
            debug_assert!(
                check == ChiCheck::Trusted,
                "non-surjective coloring at k = χ_r"
            );
            return Flow::Continue;
        }
        found.insert(partition);
        if found.len() >= cap {
            capped = true;
            Flow::Stop
        } else {
            Flow::Continue
        }
    })?;
    let partitions: Vec<Partition> = found.into_iter().collect();
    Ok(UniquenessResult {
        k,
        r,
        unique: partitions.len() == 1,
        partitions,
        capped,
        nodes_explored: nodes,
    })
}

/// Computes χ_r and decides whether every conditional (χ_r, r)-coloring
/// induces the same partition.
pub fn is_uniquely_colorable(
    g: &Graph,
    r: usize,
    limits: Limits,
) -> Result<UniquenessResult, SolveError> {
    let solved = chi_r(g, r, limits)?;
    let remaining = limits
        .timeout
        .map(|t| Limits::with_timeout(t.saturating_sub(solved.elapsed)));
    let mut res = enumerate_partitions(
        g,
        solved.chi_r,
        r,
        2,
        ChiCheck::Trusted,
        remaining.unwrap_or(limits),
    )?;
    res.nodes_explored += solved.nodes_explored;
    Ok(res)
}
