//! Colorings, color-class partitions and the conditional-coloring checker.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Color id; valid colors are `1..=k`.
pub type Color = u32;

/// A vertex → color assignment over the palette `{1..k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoringMap {
    colors: Vec<Color>,
    k: usize,
}

impl ColoringMap {
    pub fn new(colors: Vec<Color>, k: usize) -> Self {
        ColoringMap { colors, k }
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    /// Palette size k.
    pub fn palette(&self) -> usize {
        self.k
    }

    /// Number of distinct colors actually assigned.
    pub fn used_colors(&self) -> usize {
        let mut seen: Vec<Color> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Relabels colors by first occurrence in vertex-id order, shrinking the
    /// palette to the colors in use.
    pub fn normalized(&self) -> ColoringMap {
        let mut relabel = std::collections::HashMap::new();
        let colors: Vec<Color> = self
            .colors
            .iter()
            .map(|c| {
                let next = relabel.len() as Color + 1;
                *relabel.entry(*c).or_insert(next)
            })
            .collect();
        let k = relabel.len();
        ColoringMap { colors, k }
    }

    pub fn partition(&self) -> Partition {
        Partition::from_colors(&self.colors)
    }
}

/// A set partition of the vertices into color classes, in canonical form:
/// each block sorted ascending, blocks ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<Vec<Vertex>>,
}

impl Partition {
    pub fn from_colors(colors: &[Color]) -> Self {
        let mut slot_of = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<Vertex>> = Vec::new();
        for (v, c) in colors.iter().enumerate() {
            let slot = *slot_of.entry(*c).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[slot].push(v);
        }
        Partition { blocks }
    }

    pub fn from_blocks(mut blocks: Vec<Vec<Vertex>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let ids: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", ids.join(","))
            })
            .collect();
        write!(f, "{}", blocks.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// Adjacent vertices share a color.
    C1 { u: Vertex, v: Vertex },
    /// `vertex` sees `distinct` colors but needs `required = min{d(v), r}`.
    C2 {
        vertex: Vertex,
        distinct: usize,
        required: usize,
    },
    /// Color `missing` of the palette is never used.
    NotSurjective { missing: Color },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::C1 { u, v } => write!(f, "C1 at edge ({u}, {v})"),
            Violation::C2 {
                vertex,
                distinct,
                required,
            } => write!(
                f,
                "C2 at vertex {vertex}: {distinct} distinct neighbor colors, {required} required"
            ),
            Violation::NotSurjective { missing } => {
                write!(f, "not surjective: color {missing} unused")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation(Violation),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("r must be at least 1")]
    InvalidOrder,
    #[error("coloring covers {found} vertices, graph has {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} has color {color} outside 1..={k}")]
    ColorOutOfRange {
        vertex: Vertex,
        color: Color,
        k: usize,
    },
}

/// Number of distinct colors the neighbors a vertex must see: min{d(v), r}.
pub fn required_distinct(g: &Graph, v: Vertex, r: usize) -> usize {
    g.degree(v).min(r)
}

/// Checks that `c` is a conditional (k, r)-coloring of `g`.
///
/// Vertices are scanned in id order; at each vertex C1 is checked on its
/// edges before C2 is checked at the vertex itself. Surjectivity is checked
/// last.
pub fn verify(g: &Graph, c: &ColoringMap, r: usize) -> Result<Verdict, VerifyError> {
    if r < 1 {
        return Err(VerifyError::InvalidOrder);
    }
    if c.colors().len() != g.order() {
        return Err(VerifyError::LengthMismatch {
            expected: g.order(),
            found: c.colors().len(),
        });
    }
    let k = c.palette();
    if let Some((vertex, &color)) = c
        .colors()
        .iter()
        .enumerate()
        .find(|(_, &col)| col < 1 || col as usize > k)
    {
        return Err(VerifyError::ColorOutOfRange { vertex, color, k });
    }

    let mut seen = vec![false; k + 1];
    for v in g.vertices() {
        let cv = c.color(v);
        if let Some(&u) = g.neighbors(v).iter().find(|&&u| c.color(u) == cv) {
            return Ok(Verdict::Violation(Violation::C1 {
                u: v.min(u),
                v: v.max(u),
            }));
        }
        let mut around: Vec<Color> = g.neighbors(v).iter().map(|&u| c.color(u)).collect();
        around.sort_unstable();
        around.dedup();
        let required = required_distinct(g, v, r);
        if around.len() < required {
            return Ok(Verdict::Violation(Violation::C2 {
                vertex: v,
                distinct: around.len(),
                required,
            }));
        }
        seen[cv as usize] = true;
    }
    if let Some(missing) = (1..=k).find(|&col| !seen[col]) {
        return Ok(Verdict::Violation(Violation::NotSurjective {
            missing: missing as Color,
        }));
    }
    Ok(Verdict::Ok)
}
