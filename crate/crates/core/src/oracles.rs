//! Closed-form predictions for χ_r on the graph families the solver is
//! checked against.
//!
//! Every prediction carries its hypotheses as named preconditions evaluated
//! on the concrete instance. Constants the closed forms borrow from other
//! results (χ of the factors, χ_r of the rim cycle, and so on) are computed
//! with the solver rather than hard-coded.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, ColoringMap};
use crate::generators::{cycle, gear, FamilySpec};
use crate::graph::{Graph, GraphError};
use crate::solver::{chi_r, Limits, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Which closed-form result a prediction comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Uniquely n-colorable graphs keep χ_r = n for r ≤ n - 1, and are
    /// uniquely (n, n-1)-colorable.
    UniquelyColorable,
    /// Triangle chains are uniquely (3, 2)-colorable.
    TriangleChain,
    /// Paths on at least three vertices are uniquely (3, 2)-colorable.
    PathUniqueness,
    /// Trees other than paths are not uniquely colorable unless χ_r = n.
    TreeNonUniqueness,
    /// χ_r(G1 + G2) = χ(G1) + χ(G2) for r ≤ min χ + 1.
    Join,
    /// χ_r = 2r for bipartite graphs with 2 ≤ r ≤ |S1|.
    BipartiteCommonNeighborhood,
    /// χ_r(T1 + T2) = 2(r - 1) for 4 ≤ r ≤ n1 + 1.
    TreeJoin,
    /// χ_r(G1 □ G2) ≤ χ_δ1(G1) · χ_δ2(G2) for r ≤ δ1 + δ2.
    CartesianProduct,
    /// Line graphs of complete k-ary trees.
    LineOfKaryTree,
    Wheel,
    Gear,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::UniquelyColorable => "uniquely-colorable",
            Source::TriangleChain => "triangle-chain",
            Source::PathUniqueness => "path-uniqueness",
            Source::TreeNonUniqueness => "tree-non-uniqueness",
            Source::Join => "join",
            Source::BipartiteCommonNeighborhood => "bipartite-common-neighborhood",
            Source::TreeJoin => "tree-join",
            Source::CartesianProduct => "cartesian-product",
            Source::LineOfKaryTree => "line-of-kary-tree",
            Source::Wheel => "wheel",
            Source::Gear => "gear",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionKind {
    ExactChi,
    UpperBound,
    Uniqueness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PredictedValue {
    Int(usize),
    Bool(bool),
}

impl fmt::Display for PredictedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictedValue::Int(v) => write!(f, "{v}"),
            PredictedValue::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precondition {
    pub name: String,
    pub holds: bool,
}

fn pre(name: impl Into<String>, holds: bool) -> Precondition {
    Precondition {
        name: name.into(),
        holds,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub source: Source,
    pub kind: PredictionKind,
    /// `None` when the result says nothing for this r.
    pub value: Option<PredictedValue>,
    pub preconditions: Vec<Precondition>,
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Prediction {
    fn new(
        source: Source,
        kind: PredictionKind,
        value: Option<PredictedValue>,
        preconditions: Vec<Precondition>,
    ) -> Self {
        let applicable = value.is_some() && preconditions.iter().all(|p| p.holds);
        Prediction {
            source,
            kind,
            value,
            preconditions,
            applicable,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Compares a solver outcome with this prediction. `None` when the
    /// prediction is not applicable.
    pub fn compare(&self, chi_r: usize, unique: Option<bool>) -> Option<Match> {
        if !self.applicable {
            return None;
        }
        let verdict = match (self.kind, self.value?) {
            (PredictionKind::ExactChi, PredictedValue::Int(v)) => {
                if chi_r == v {
                    Match::Equal
                } else {
                    Match::Mismatch
                }
            }
            (PredictionKind::UpperBound, PredictedValue::Int(v)) => {
                if chi_r <= v {
                    Match::BoundSatisfied
                } else {
                    Match::Mismatch
                }
            }
            (PredictionKind::Uniqueness, PredictedValue::Bool(b)) => match unique {
                Some(u) if u == b => Match::Equal,
                Some(_) => Match::Mismatch,
                None => return None,
            },
            _ => Match::Mismatch,
        };
        Some(verdict)
    }

    pub fn int_value(&self) -> Option<usize> {
        match self.value {
            Some(PredictedValue::Int(v)) => Some(v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Match {
    Equal,
    BoundSatisfied,
    Mismatch,
}

fn chi(g: &Graph, r: usize, limits: Limits) -> Result<usize, SolveError> {
    Ok(chi_r(g, r, limits)?.chi_r)
}

/// χ_r(G1 + G2) = k1 + k2 with k1 ≤ k2 the chromatic numbers, for r ≤ k1 + 1.
pub fn predict_join(
    g1: &Graph,
    g2: &Graph,
    r: usize,
    limits: Limits,
) -> Result<Prediction, OracleError> {
    let a = chi(g1, 1, limits)?;
    let b = chi(g2, 1, limits)?;
    let (k1, k2) = (a.min(b), a.max(b));
    Ok(Prediction::new(
        Source::Join,
        PredictionKind::ExactChi,
        Some(PredictedValue::Int(k1 + k2)),
        vec![pre(
            format!("r <= k1 + 1 (k1 = {k1}, k2 = {k2})"),
            r <= k1 + 1,
        )],
    ))
}

/// χ_r = 2r on a bipartite graph whose sides have common neighborhoods
/// S1, S2 with |S1| ≤ |S2|, for 2 ≤ r ≤ |S1|.
pub fn predict_bipartite_common(g: &Graph, r: usize) -> Prediction {
    let (s1, bipartite) = match g.bipartition() {
        Some((v1, v2)) => {
            let a = g.common_neighborhood(&v1).len();
            let b = g.common_neighborhood(&v2).len();
            (a.min(b), true)
        }
        None => (0, false),
    };
    Prediction::new(
        Source::BipartiteCommonNeighborhood,
        PredictionKind::ExactChi,
        Some(PredictedValue::Int(2 * r)),
        vec![
            pre("bipartite", bipartite),
            pre("r >= 2", r >= 2),
            pre(format!("r <= |S1| (|S1| = {s1})"), bipartite && r <= s1),
        ],
    )
}

/// χ_r(T1 + T2) = 2(r - 1) for nontrivial trees with 4 ≤ r ≤ min(n1, n2) + 1.
pub fn predict_tree_join(t1: &Graph, t2: &Graph, r: usize) -> Prediction {
    let n1 = t1.order().min(t2.order());
    Prediction::new(
        Source::TreeJoin,
        PredictionKind::ExactChi,
        Some(PredictedValue::Int(2 * r.saturating_sub(1))),
        vec![
            pre("t1 is a tree", t1.is_tree()),
            pre("t2 is a tree", t2.is_tree()),
            pre("both trees nontrivial", n1 >= 2),
            pre("r >= 4", r >= 4),
            pre(format!("r <= n1 + 1 (n1 = {n1})"), r <= n1 + 1),
        ],
    )
}

/// χ_r(G1 □ G2) ≤ χ_{r1}(G1) · χ_{r2}(G2) with r1 = δ(G1), r2 = δ(G2), for
/// r ≤ δ(G1) + δ(G2).
pub fn predict_product_bound(
    g1: &Graph,
    g2: &Graph,
    r: usize,
    limits: Limits,
) -> Result<Prediction, OracleError> {
    let (d1, d2) = (g1.min_degree(), g2.min_degree());
    // δ = 0 only for a single vertex, where any order gives the same χ_r
    let f1 = chi(g1, d1.max(1), limits)?;
    let f2 = chi(g2, d2.max(1), limits)?;
    Ok(Prediction::new(
        Source::CartesianProduct,
        PredictionKind::UpperBound,
        Some(PredictedValue::Int(f1 * f2)),
        vec![pre(
            format!("r <= delta1 + delta2 (= {})", d1 + d2),
            r <= d1 + d2,
        )],
    )
    .with_note(format!("chi_{d1}(G1) = {f1}, chi_{d2}(G2) = {f2}")))
}

/// Whether line-of-tree predictions are offered at height 2, where the
/// maximum degree of L(T) is 2k - 1 rather than 2k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShallowTrees {
    #[default]
    Excluded,
    Flagged,
}

/// χ_r(L(T)) for the complete k-ary tree T of height h: k + 1 for r ≤ k and
/// 2k + 1 for r = Δ = 2k. Silent for k < r < 2k.
///
/// Height 2 is only offered under [`ShallowTrees::Flagged`]; there the top
/// branch also fires for r equal to the true maximum degree 2k - 1, and the
/// prediction carries a note.
pub fn predict_line_kary(
    k: usize,
    h: usize,
    r: usize,
    shallow: ShallowTrees,
) -> Result<Prediction, OracleError> {
    if k < 2 || h < 2 {
        return Err(GraphError::InvalidParameters {
            family: "line-of-kary-tree",
            reason: "predictions need k >= 2 and h >= 2".into(),
        }
        .into());
    }
    let flagged = shallow == ShallowTrees::Flagged;
    let top = r == 2 * k || (flagged && h == 2 && r == 2 * k - 1);
    let value = if r <= k {
        Some(k + 1)
    } else if top {
        Some(2 * k + 1)
    } else {
        None
    };
    let height_ok = h >= 3 || flagged;
    let mut p = Prediction::new(
        Source::LineOfKaryTree,
        PredictionKind::ExactChi,
        value.map(PredictedValue::Int),
        vec![
            pre("k >= 2", true),
            pre(
                if flagged {
                    "h >= 2 (shallow override)"
                } else {
                    "h >= 3"
                },
                height_ok,
            ),
            pre(
                format!("r <= k or r = Delta = 2k (= {})", 2 * k),
                value.is_some(),
            ),
        ],
    );
    if h == 2 {
        p = p.with_note(format!(
            "at h = 2 the maximum degree of L(T) is 2k - 1 = {}, not 2k",
            2 * k - 1
        ));
    }
    Ok(p)
}

/// χ_r(W_n) = χ_r(C_{n-1}) + 1 when r ≤ χ_r(C_{n-1}), else min{r, n-1} + 1.
pub fn predict_wheel(n: usize, r: usize, limits: Limits) -> Result<Prediction, OracleError> {
    if n < 4 {
        return Err(GraphError::InvalidParameters {
            family: "wheel",
            reason: "n must be at least 4".into(),
        }
        .into());
    }
    let rim = chi(&cycle(n - 1)?, r.max(1), limits)?;
    let (value, branch) = if r <= rim {
        (rim + 1, "r <= chi_r(C_{n-1})")
    } else {
        (r.min(n - 1) + 1, "r > chi_r(C_{n-1})")
    };
    Ok(Prediction::new(
        Source::Wheel,
        PredictionKind::ExactChi,
        Some(PredictedValue::Int(value)),
        vec![pre("n >= 4", true), pre("r >= 3", r >= 3)],
    )
    .with_note(format!("{branch}; chi_r(C_{}) = {rim}", n - 1)))
}

/// χ_r of the n-gear: 4 at r = 2, χ_2(C_2n) + 1 at r = 3, min{r, Δ} + 1 for
/// r ≥ 4.
pub fn predict_gear(n: usize, r: usize, limits: Limits) -> Result<Prediction, OracleError> {
    let g = gear(n)?;
    let (value, note) = match r {
        0 | 1 => (None, None),
        2 => (Some(4), None),
        3 => {
            let rim = chi(&cycle(2 * n)?, 2, limits)?;
            (Some(rim + 1), Some(format!("chi_2(C_{}) = {rim}", 2 * n)))
        }
        _ => (Some(r.min(g.max_degree()) + 1), None),
    };
    let p = Prediction::new(
        Source::Gear,
        PredictionKind::ExactChi,
        value.map(PredictedValue::Int),
        vec![pre("n >= 3", true), pre("r >= 2", r >= 2)],
    );
    Ok(match note {
        Some(note) => p.with_note(note),
        None => p,
    })
}

/// The explicit conditional (4, 2)-coloring of the n-gear: hub color 4, rim
/// vertex v_i colored by i mod 3 (1, 2, 3 for residues 1, 2, 0), patched at
/// the end of the rim when 3 does not divide n.
pub fn gear_witness_coloring(n: usize) -> Result<ColoringMap, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameters {
            family: "gear",
            reason: "n must be at least 3".into(),
        });
    }
    let rim = 2 * n;
    let mut colors: Vec<Color> = (0..=rim)
        .map(|i| match i {
            0 => 4,
            _ => match i % 3 {
                1 => 1,
                2 => 2,
                _ => 3,
            },
        })
        .collect();
    match n % 3 {
        2 => colors[rim] = 2,
        1 => {
            let patch = [2, 1, 3, 2, 3];
            colors[rim - 4..=rim].copy_from_slice(&patch);
        }
        _ => {}
    }
    Ok(ColoringMap::new(colors, 4))
}

/// Structural role of an instance for the uniqueness results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyHint {
    Complete,
    TriangleChain,
    Path,
    Tree,
    Other,
}

impl FamilyHint {
    pub fn from_spec(spec: &FamilySpec) -> Self {
        match spec {
            FamilySpec::Complete { .. } => FamilyHint::Complete,
            FamilySpec::Prop2Chain { .. } => FamilyHint::TriangleChain,
            FamilySpec::Path { .. } => FamilyHint::Path,
            FamilySpec::RandomTree { .. } | FamilySpec::CompleteKaryTree { .. } => FamilyHint::Tree,
            FamilySpec::CompleteBipartite { m: 1, .. }
            | FamilySpec::CompleteBipartite { n: 1, .. } => FamilyHint::Tree,
            _ => FamilyHint::Other,
        }
    }
}

/// χ_r(G) = n for a uniquely n-colorable G and r ≤ n - 1. Complete graphs
/// are the certified uniquely n-colorable inputs.
pub fn predict_uniquely_colorable_chi(g: &Graph, r: usize) -> Prediction {
    let n = g.order();
    Prediction::new(
        Source::UniquelyColorable,
        PredictionKind::ExactChi,
        Some(PredictedValue::Int(n)),
        vec![
            pre("complete graph (uniquely n-colorable)", g.is_complete()),
            pre(format!("r <= n - 1 (n = {n})"), r < n),
        ],
    )
}

/// Uniqueness verdicts for complete graphs, triangle chains, paths and
/// non-path trees.
pub fn predict_uniqueness(
    g: &Graph,
    r: usize,
    hint: FamilyHint,
    limits: Limits,
) -> Result<Prediction, OracleError> {
    let n = g.order();
    let p = match hint {
        FamilyHint::Complete => Prediction::new(
            Source::UniquelyColorable,
            PredictionKind::Uniqueness,
            Some(PredictedValue::Bool(true)),
            vec![
                pre("complete graph (uniquely n-colorable)", g.is_complete()),
                pre(format!("r = n - 1 (n = {n})"), r + 1 == n),
            ],
        ),
        FamilyHint::TriangleChain => Prediction::new(
            Source::TriangleChain,
            PredictionKind::Uniqueness,
            Some(PredictedValue::Bool(true)),
            vec![
                pre("|E| = 2|V| - 3", g.size() + 3 == 2 * n),
                pre("r = 2", r == 2),
            ],
        ),
        FamilyHint::Path => Prediction::new(
            Source::PathUniqueness,
            PredictionKind::Uniqueness,
            Some(PredictedValue::Bool(true)),
            vec![
                pre("path", g.is_path()),
                pre("n >= 3", n >= 3),
                pre("r = 2", r == 2),
            ],
        ),
        FamilyHint::Tree => {
            let structural = g.is_tree() && !g.is_path() && r >= 2;
            let chi_r_differs = if structural {
                chi(g, r, limits)? != n
            } else {
                false
            };
            Prediction::new(
                Source::TreeNonUniqueness,
                PredictionKind::Uniqueness,
                Some(PredictedValue::Bool(false)),
                vec![
                    pre("tree", g.is_tree()),
                    pre("not a path", !g.is_path()),
                    pre("r >= 2", r >= 2),
                    pre("chi_r != n", chi_r_differs),
                ],
            )
        }
        FamilyHint::Other => Prediction::new(
            Source::UniquelyColorable,
            PredictionKind::Uniqueness,
            None,
            vec![pre("known uniquely colorable family", false)],
        ),
    };
    Ok(p)
}
