//! Parameter sweeps that pit the solver against closed-form predictions.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use condcolor::ops::{cartesian_product, join};
use condcolor::oracles::{
    predict_bipartite_common, predict_gear, predict_join, predict_line_kary, predict_product_bound,
    predict_tree_join, predict_uniquely_colorable_chi, predict_uniqueness, predict_wheel,
    FamilyHint, Match, OracleError, Prediction, PredictionKind, ShallowTrees,
};
use condcolor::{chi_r, is_uniquely_colorable, lower_bound, FamilySpec, Graph, Limits, SolveError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::input::{family_instance, named_graph, InputError};
use crate::report::{ChiValue, Format, Report};

pub const DEFAULT_TIMEOUT_MS: u64 = 10_000;

/// The grid run by `check-theorems` when no grid is given. Every instance
/// has at most 20 vertices.
pub const DEFAULT_GRID: &str = r#"
[[grids]]
family = "gear"
params = { n = "3..8" }
r = "2..6"

[[grids]]
family = "wheel"
params = { n = "4..9" }
r = "3..5"

[[grids]]
family = "line-of-kary-tree"
params = { k = 2, h = 3 }
r = "1..4"

[[grids]]
family = "complete-bipartite"
params = { m = "1..4", n = "1..4" }

[[grids]]
family = "join"
params = { graphs = "K2+K3+P3+P4+C4+C5" }

[[grids]]
family = "tree-join"
params = { graphs = "P3+P4+P5+S3" }

[[grids]]
family = "product"
params = { graphs = "K2+K3+P3+C4" }

[[grids]]
family = "path"
params = { n = "3..15" }

[[grids]]
family = "prop2-chain"
params = { k = "1..8" }

[[grids]]
family = "complete"
params = { n = "2..6" }

[[grids]]
family = "complete-kary-tree"
params = { k = "2..3", h = 2 }

[[grids]]
family = "random-tree"
params = { n = "5..9", seed = "0..9" }
"#;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid range `{0}`: expected N or LO..HI with 1 <= LO <= HI (inclusive)")]
    Range(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{instance}: {source}")]
    Input {
        instance: String,
        source: InputError,
    },
    #[error("{instance}: {source}")]
    Oracle {
        instance: String,
        source: OracleError,
    },
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// An inclusive integer range, written `N`, `LO..HI` or `LO..=HI`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawValue", into = "String")]
pub struct IntRange {
    pub lo: u64,
    pub hi: u64,
}

impl IntRange {
    pub fn iter(self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        let bad = || SweepError::Range(s.to_owned());
        let t = s.trim();
        let (lo, hi) = match t.split_once("..") {
            Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
            None => (t, t),
        };
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(IntRange { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

impl From<IntRange> for String {
    fn from(r: IntRange) -> String {
        r.to_string()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawValue {
    Int(u64),
    Text(String),
}

impl TryFrom<RawValue> for IntRange {
    type Error = SweepError;

    fn try_from(raw: RawValue) -> Result<Self, SweepError> {
        match raw {
            RawValue::Int(v) => Ok(IntRange { lo: v, hi: v }),
            RawValue::Text(s) => s.parse(),
        }
    }
}

/// A grid parameter: an integer range or a literal such as
/// `choice = "last"` or `graphs = "K2+P3"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawValue", into = "String")]
pub struct ParamSpec(pub String);

impl From<RawValue> for ParamSpec {
    fn from(raw: RawValue) -> Self {
        match raw {
            RawValue::Int(v) => ParamSpec(v.to_string()),
            RawValue::Text(s) => ParamSpec(s),
        }
    }
}

impl From<ParamSpec> for String {
    fn from(p: ParamSpec) -> String {
        p.0
    }
}

impl ParamSpec {
    fn values(&self) -> Result<Vec<String>, SweepError> {
        let looks_numeric = self.0.trim().starts_with(|c: char| c.is_ascii_digit());
        if looks_numeric {
            let range: IntRange = self.0.parse()?;
            Ok(range.iter().map(|v| v.to_string()).collect())
        } else {
            Ok(vec![self.0.clone()])
        }
    }
}

/// One family (or binary operation) with its parameter ranges.
///
/// `join`, `tree-join` and `product` take `graphs = "A+B+..."`, a list of
/// small named graphs, and run over every pair (unordered for the joins,
/// ordered for the product).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamSpec>,
    /// Overrides the sweep-wide r range; defaults to 1..=Δ+1 per instance.
    #[serde(default)]
    pub r: Option<IntRange>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub grids: Vec<Grid>,
    #[serde(default)]
    pub r: Option<IntRange>,
    #[serde(default = "default_timeout_ms")]
    pub timeout_ms: u64,
    /// Worker threads; 0 uses every core.
    #[serde(default)]
    pub jobs: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    /// Offer line-of-tree predictions at height 2, flagged.
    #[serde(default)]
    pub include_shallow: bool,
    /// Seed for random families whose grid has no `seed` parameter.
    #[serde(default)]
    pub seed: u64,
}

fn default_timeout_ms() -> u64 {
    DEFAULT_TIMEOUT_MS
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self, SweepError> {
        let config: SweepConfig = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn default_grid() -> Self {
        Self::from_toml(DEFAULT_GRID).expect("built-in grid is valid")
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.grids.is_empty() {
            return Err(SweepError::Config("no grids".into()));
        }
        if self.timeout_ms == 0 {
            return Err(SweepError::Config("timeout_ms must be positive".into()));
        }
        let ranges = self.grids.iter().filter_map(|g| g.r).chain(self.r);
        for r in ranges {
            if r.lo == 0 {
                return Err(SweepError::Range(r.to_string()));
            }
        }
        for grid in &self.grids {
            for p in grid.params.values() {
                p.values()?;
            }
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits::with_timeout(Duration::from_millis(self.timeout_ms))
    }

    fn shallow(&self) -> ShallowTrees {
        if self.include_shallow {
            ShallowTrees::Flagged
        } else {
            ShallowTrees::Excluded
        }
    }
}

/// Which prediction a task is checked against.
#[derive(Debug, Clone)]
pub enum Oracle {
    Gear(usize),
    Wheel(usize),
    LineKary { k: usize, h: usize },
    Bipartite,
    Join(Graph, Graph),
    TreeJoin(Graph, Graph),
    Product(Graph, Graph),
    CompleteChi,
    Uniqueness(FamilyHint),
}

#[derive(Debug, Clone)]
pub struct Task {
    pub instance: String,
    pub graph: Graph,
    pub r: usize,
    pub oracle: Oracle,
    pub seed: Option<u64>,
}

fn family_oracles(spec: &FamilySpec) -> Vec<Oracle> {
    let hint = FamilyHint::from_spec(spec);
    match *spec {
        FamilySpec::Gear { n } => vec![Oracle::Gear(n)],
        FamilySpec::Wheel { n } => vec![Oracle::Wheel(n)],
        FamilySpec::LineOfKaryTree { k, h } => vec![Oracle::LineKary { k, h }],
        FamilySpec::CompleteBipartite { .. } if hint == FamilyHint::Tree => {
            vec![Oracle::Bipartite, Oracle::Uniqueness(hint)]
        }
        FamilySpec::CompleteBipartite { .. } => vec![Oracle::Bipartite],
        FamilySpec::Complete { .. } => vec![Oracle::CompleteChi, Oracle::Uniqueness(hint)],
        FamilySpec::Path { .. }
        | FamilySpec::Prop2Chain { .. }
        | FamilySpec::RandomTree { .. }
        | FamilySpec::CompleteKaryTree { .. } => vec![Oracle::Uniqueness(hint)],
        FamilySpec::Cycle { .. } => Vec::new(),
    }
}

const PAIR_OPERATIONS: &[&str] = &["join", "tree-join", "product"];

/// Every combination of the grid's parameter values, keys in sorted order
/// with the last key varying fastest.
fn combinations(grid: &Grid) -> Result<Vec<BTreeMap<String, String>>, SweepError> {
    let mut out = vec![BTreeMap::new()];
    for (key, spec) in &grid.params {
        let values = spec.values()?;
        out = out
            .into_iter()
            .flat_map(|base| {
                values.iter().map(move |v| {
                    let mut next = base.clone();
                    next.insert(key.clone(), v.clone());
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

fn pair_instances(grid: &Grid) -> Result<Vec<(String, Graph, Oracle)>, SweepError> {
    let op = grid.family.as_str();
    let input_err = |source| SweepError::Input {
        instance: op.to_owned(),
        source,
    };
    if let Some(extra) = grid.params.keys().find(|k| *k != "graphs") {
        return Err(input_err(InputError::Usage(format!(
            "unexpected parameter `{extra}` (pair grids take `graphs`)"
        ))));
    }
    let names: Vec<String> = grid
        .params
        .get("graphs")
        .ok_or_else(|| input_err(InputError::Usage("missing parameter `graphs`".into())))?
        .0
        .split('+')
        .map(|s| s.trim().to_owned())
        .filter(|s| !s.is_empty())
        .collect();
    let graphs = names
        .iter()
        .map(|n| named_graph(n))
        .collect::<Result<Vec<_>, _>>()
        .map_err(input_err)?;
    let mut out = Vec::new();
    for i in 0..graphs.len() {
        let start = if op == "product" { 0 } else { i };
        for j in start..graphs.len() {
            let (a, b) = (&graphs[i], &graphs[j]);
            let key = format!("{op}({},{})", names[i], names[j]);
            let (g, oracle) = match op {
                "join" => (join(a, b), Oracle::Join(a.clone(), b.clone())),
                "tree-join" => (join(a, b), Oracle::TreeJoin(a.clone(), b.clone())),
                _ => (
                    cartesian_product(a, b),
                    Oracle::Product(a.clone(), b.clone()),
                ),
            };
            out.push((key, g, oracle));
        }
    }
    Ok(out)
}

/// Expands a config into tasks, in grid order, then parameter order, then r,
/// then oracle.
pub fn expand(config: &SweepConfig) -> Result<Vec<Task>, SweepError> {
    let mut tasks = Vec::new();
    for grid in &config.grids {
        let mut instances: Vec<(String, Graph, Vec<Oracle>, Option<u64>)> = Vec::new();
        if PAIR_OPERATIONS.contains(&grid.family.as_str()) {
            for (key, g, oracle) in pair_instances(grid)? {
                instances.push((key, g, vec![oracle], None));
            }
        } else {
            for params in combinations(grid)? {
                let inst =
                    family_instance(&grid.family, params, config.seed).map_err(|source| {
                        SweepError::Input {
                            instance: grid.family.clone(),
                            source,
                        }
                    })?;
                let spec = inst.spec.as_ref().expect("family instances carry a spec");
                let oracles = family_oracles(spec);
                if oracles.is_empty() {
                    return Err(SweepError::Config(format!(
                        "no closed-form result covers family `{}`",
                        grid.family
                    )));
                }
                instances.push((inst.key, inst.graph, oracles, inst.seed));
            }
        }
        for (key, g, oracles, seed) in instances {
            let default_r = IntRange {
                lo: 1,
                hi: g.max_degree().max(1) as u64 + 1,
            };
            let r_range = grid.r.or(config.r).unwrap_or(default_r);
            for r in r_range.iter() {
                for oracle in &oracles {
                    tasks.push(Task {
                        instance: key.clone(),
                        graph: g.clone(),
                        r: r as usize,
                        oracle: oracle.clone(),
                        seed,
                    });
                }
            }
        }
    }
    Ok(tasks)
}

pub fn predict(
    task: &Task,
    limits: Limits,
    shallow: ShallowTrees,
) -> Result<Prediction, OracleError> {
    let (g, r) = (&task.graph, task.r);
    Ok(match &task.oracle {
        Oracle::Gear(n) => predict_gear(*n, r, limits)?,
        Oracle::Wheel(n) => predict_wheel(*n, r, limits)?,
        Oracle::LineKary { k, h } => predict_line_kary(*k, *h, r, shallow)?,
        Oracle::Bipartite => predict_bipartite_common(g, r),
        Oracle::Join(a, b) => predict_join(a, b, r, limits)?,
        Oracle::TreeJoin(a, b) => predict_tree_join(a, b, r),
        Oracle::Product(a, b) => predict_product_bound(a, b, r, limits)?,
        Oracle::CompleteChi => predict_uniquely_colorable_chi(g, r),
        Oracle::Uniqueness(hint) => predict_uniqueness(g, r, *hint, limits)?,
    })
}

fn millis(d: Duration) -> u64 {
    d.as_millis().try_into().unwrap_or(u64::MAX)
}

/// Runs one task. Returns `None` when the prediction does not apply at this
/// r. Timeouts become rows with `chi_r = "timeout"` and no match.
pub fn evaluate(
    task: &Task,
    limits: Limits,
    shallow: ShallowTrees,
) -> Result<Option<Report>, SweepError> {
    let start = Instant::now();
    let (g, r) = (&task.graph, task.r);
    let mut report = Report {
        instance: task.instance.clone(),
        n: g.order(),
        m: g.size(),
        r,
        chi_r: ChiValue::Timeout,
        lower_bound: lower_bound(g, r),
        unique: None,
        partitions: None,
        prediction: None,
        outcome: None,
        nodes_explored: 0,
        elapsed_ms: 0,
        seed: task.seed,
        note: None,
    };
    let oracle_err = |source| SweepError::Oracle {
        instance: task.instance.clone(),
        source,
    };
    let prediction = match predict(task, limits, shallow) {
        Ok(p) if !p.applicable => return Ok(None),
        Ok(p) => p,
        Err(OracleError::Solve(SolveError::Timeout(_))) => {
            report.note = Some("timed out computing the prediction".into());
            report.elapsed_ms = millis(start.elapsed());
            return Ok(Some(report));
        }
        Err(e) => return Err(oracle_err(e)),
    };
    // the per-instance budget covers the prediction and the solve together
    let remaining = limits.timeout.map(|t| t.saturating_sub(start.elapsed()));
    let solve_limits = Limits { timeout: remaining };
    let solved = if remaining == Some(Duration::ZERO) {
        Err(SolveError::Timeout(limits.timeout.unwrap_or_default()))
    } else if prediction.kind == PredictionKind::Uniqueness {
        is_uniquely_colorable(g, r, solve_limits).map(|res| {
            report.unique = Some(res.unique);
            report.partitions = Some(res.partitions.len());
            (res.k, res.nodes_explored)
        })
    } else {
        chi_r(g, r, solve_limits).map(|res| (res.chi_r, res.nodes_explored))
    };
    match solved {
        Ok((chi, nodes)) => {
            report.chi_r = ChiValue::Value(chi);
            report.nodes_explored = nodes;
            report.outcome = prediction.compare(chi, report.unique);
        }
        Err(SolveError::Timeout(_)) => {}
        Err(e) => return Err(oracle_err(e.into())),
    }
    report.prediction = Some(prediction);
    report.elapsed_ms = millis(start.elapsed());
    Ok(Some(report))
}

/// Row counts by outcome.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub equal: usize,
    pub bound_satisfied: usize,
    pub mismatch: usize,
    pub timeout: usize,
}

impl Summary {
    pub fn of(reports: &[Report]) -> Self {
        let mut s = Summary {
            rows: reports.len(),
            ..Summary::default()
        };
        for r in reports {
            match r.outcome {
                Some(Match::Equal) => s.equal += 1,
                Some(Match::BoundSatisfied) => s.bound_satisfied += 1,
                Some(Match::Mismatch) => s.mismatch += 1,
                None if r.timed_out() => s.timeout += 1,
                None => {}
            }
        }
        s
    }

    /// 2 if anything mismatched, else 3 if anything timed out, else 0.
    pub fn exit_code(&self) -> u8 {
        if self.mismatch > 0 {
            2
        } else if self.timeout > 0 {
            3
        } else {
            0
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rows={} equal={} bound-satisfied={} mismatch={} timeout={}",
            self.rows, self.equal, self.bound_satisfied, self.mismatch, self.timeout
        )
    }
}

/// Expands and runs the sweep on a pool of `config.jobs` workers. Rows come
/// back in task order whatever the job count.
pub fn run(config: &SweepConfig) -> Result<(Vec<Report>, Summary), SweepError> {
    config.validate()?;
    let tasks = expand(config)?;
    let limits = config.limits();
    let shallow = config.shallow();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()?;
    let rows = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| evaluate(t, limits, shallow))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let reports: Vec<Report> = rows.into_iter().flatten().collect();
    let summary = Summary::of(&reports);
    Ok((reports, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(family: &str, params: &[(&str, &str)], r: Option<&str>) -> SweepConfig {
        SweepConfig {
            grids: vec![Grid {
                family: family.into(),
                params: params
                    .iter()
                    .map(|(k, v)| (k.to_string(), ParamSpec(v.to_string())))
                    .collect(),
                r: r.map(|r| r.parse().unwrap()),
            }],
            r: None,
            timeout_ms: DEFAULT_TIMEOUT_MS,
            jobs: 1,
            output: None,
            format: Format::Json,
            include_shallow: false,
            seed: 0,
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(
            "3..6".parse::<IntRange>().unwrap(),
            IntRange { lo: 3, hi: 6 }
        );
        assert_eq!(
            "3..=6".parse::<IntRange>().unwrap(),
            IntRange { lo: 3, hi: 6 }
        );
        assert_eq!("4".parse::<IntRange>().unwrap(), IntRange { lo: 4, hi: 4 });
        assert!("6..3".parse::<IntRange>().is_err());
        assert!("a..3".parse::<IntRange>().is_err());
        assert_eq!(IntRange { lo: 2, hi: 5 }.iter().count(), 4);
    }

    #[test]
    fn config_validation() {
        assert!(SweepConfig::from_toml("grids = []").is_err());
        let zero = "timeout_ms = 0\n[[grids]]\nfamily = \"gear\"\nparams = { n = 3 }";
        assert!(SweepConfig::from_toml(zero).is_err());
        let r0 = "r = \"0..2\"\n[[grids]]\nfamily = \"gear\"\nparams = { n = 3 }";
        assert!(SweepConfig::from_toml(r0).is_err());
        let bad = "[[grids]]\nfamily = \"gear\"\nparams = { n = \"5..3\" }";
        assert!(SweepConfig::from_toml(bad).is_err());
        let unknown = "[[grids]]\nfamily = \"gear\"\nwhat = 1";
        assert!(SweepConfig::from_toml(unknown).is_err());
        let ok = SweepConfig::default_grid();
        assert_eq!(ok.timeout_ms, DEFAULT_TIMEOUT_MS);
        assert_eq!(ok.grids[0].params["n"], ParamSpec("3..8".into()));
    }

    #[test]
    fn default_grid_stays_small() {
        for task in expand(&SweepConfig::default_grid()).unwrap() {
            assert!(task.graph.order() <= 20, "{}", task.instance);
        }
    }

    #[test]
    fn combinations_vary_last_key_fastest() {
        let cfg = grid("complete-bipartite", &[("m", "1..2"), ("n", "3..4")], None);
        let keys: Vec<_> = combinations(&cfg.grids[0])
            .unwrap()
            .iter()
            .map(|p| format!("{}{}", p["m"], p["n"]))
            .collect();
        assert_eq!(keys, ["13", "14", "23", "24"]);
    }

    #[test]
    fn gear_grid_gives_sixteen_equal_rows() {
        let (rows, summary) = run(&grid("gear", &[("n", "3..6")], Some("2..5"))).unwrap();
        assert_eq!(rows.len(), 16);
        assert_eq!(summary.equal, 16);
        assert_eq!(summary.exit_code(), 0);
    }

    #[test]
    fn product_bounds_hold() {
        let (rows, summary) = run(&grid("product", &[("graphs", "K2+K3+P3")], None)).unwrap();
        assert!(!rows.is_empty());
        assert_eq!(summary.bound_satisfied, rows.len());
        assert!(rows.iter().all(|r| r.r <= 4));
    }

    #[test]
    fn tree_join_of_two_p3() {
        let (rows, _) = run(&grid("tree-join", &[("graphs", "P3")], Some("4"))).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].chi_r, ChiValue::Value(6));
        assert_eq!(rows[0].outcome, Some(Match::Equal));
        assert_eq!(rows[0].instance, "tree-join(P3,P3)");
    }

    #[test]
    fn shallow_line_graph_is_flagged_mismatch() {
        let mut cfg = grid("line-of-kary-tree", &[("k", "2"), ("h", "2")], Some("1..4"));
        let (rows, _) = run(&cfg).unwrap();
        assert!(rows.is_empty());
        cfg.include_shallow = true;
        let (rows, summary) = run(&cfg).unwrap();
        assert_eq!(summary.mismatch, 2);
        assert_eq!(summary.exit_code(), 2);
        assert!(rows
            .iter()
            .all(|r| r.prediction.as_ref().unwrap().note.is_some()));
    }

    #[test]
    fn cycles_have_no_oracle() {
        assert!(matches!(
            expand(&grid("cycle", &[("n", "5")], None)),
            Err(SweepError::Config(_))
        ));
    }

    #[test]
    fn tiny_budget_yields_timeout_rows() {
        let mut cfg = grid("gear", &[("n", "8")], Some("3"));
        cfg.timeout_ms = 1;
        let (rows, summary) = run(&cfg).unwrap();
        // a 1 ms budget may or may not suffice; either way the row is consistent
        for row in &rows {
            assert_eq!(row.outcome.is_some(), !row.timed_out());
        }
        assert_eq!(summary.timeout + summary.equal, rows.len());
    }
}
