//! Resolving command-line graph sources into graphs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use condcolor::generators::{complete, complete_bipartite, cycle, path, EdgeChoice, FamilySpec};
use condcolor::io::{read_graph, ParseError};
use condcolor::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown graph name `{0}` (expected K<n>, P<n>, C<n> or S<n>)")]
    UnknownGraph(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub fn read_file(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Splits `k=v` items into a map; later keys win.
pub fn parse_params<S: AsRef<str>>(items: &[S]) -> Result<BTreeMap<String, String>, InputError> {
    let mut out = BTreeMap::new();
    for item in items {
        let item = item.as_ref().trim();
        if item.is_empty() {
            continue;
        }
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| InputError::Usage(format!("expected key=value, got `{item}`")))?;
        out.insert(key.trim().to_owned(), value.trim().to_owned());
    }
    Ok(out)
}

/// A graph together with the key it is reported under.
#[derive(Debug, Clone)]
pub struct Instance {
    pub key: String,
    pub graph: Graph,
    pub spec: Option<FamilySpec>,
    pub seed: Option<u64>,
    pub disconnected: bool,
}

/// The seed a randomized spec was built from.
pub fn spec_seed(spec: &FamilySpec) -> Option<u64> {
    match *spec {
        FamilySpec::RandomTree { seed, .. } => Some(seed),
        FamilySpec::Prop2Chain {
            choice: EdgeChoice::Seeded(seed),
            ..
        } => Some(seed),
        _ => None,
    }
}

/// Builds a family instance. A `random-tree` without a `seed` parameter
/// takes `default_seed`.
pub fn family_instance(
    family: &str,
    mut params: BTreeMap<String, String>,
    default_seed: u64,
) -> Result<Instance, InputError> {
    if family == "random-tree" && !params.contains_key("seed") {
        params.insert("seed".into(), default_seed.to_string());
    }
    let spec = FamilySpec::from_params(family, &params)?;
    let graph = spec.build()?;
    Ok(Instance {
        key: spec.to_string(),
        seed: spec_seed(&spec),
        graph,
        spec: Some(spec),
        disconnected: false,
    })
}

pub fn file_instance(path: &Path, allow_disconnected: bool) -> Result<Instance, InputError> {
    let text = read_file(path)?;
    let graph = read_graph(&text, allow_disconnected).map_err(|source| InputError::Parse {
        path: path.to_owned(),
        source,
    })?;
    Ok(Instance {
        key: path.display().to_string(),
        disconnected: !graph.is_connected(),
        graph,
        spec: None,
        seed: None,
    })
}

/// Small named graphs for pair grids: `K<n>`, `P<n>`, `C<n>`, and `S<n>`
/// for the star with n leaves.
pub fn named_graph(name: &str) -> Result<Graph, InputError> {
    let unknown = || InputError::UnknownGraph(name.to_owned());
    let mut chars = name.chars();
    let head = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let g = match head.to_ascii_uppercase() {
        'K' => complete(n)?,
        'P' => path(n)?,
        'C' => cycle(n)?,
        'S' => complete_bipartite(1, n)?,
        _ => return Err(unknown()),
    };
    Ok(g)
}
