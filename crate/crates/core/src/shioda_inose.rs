//! The two 24-curve host configurations and their automorphism labels.
//!
//! `S3` carries curves `F1..F3`, `G1..G3`, `Eij`, `Eij'` with edges
//! `Fi - Eij'`, `Gj - Eij` and `Eij - Eij'`. `S2` carries `F1..F3`, `G1..G3`,
//! chains `Eij' - Hij - Eij` for `i, j ∈ {1, 3}`, plus `E12, E22, E32`,
//! `E21', E22', E23'`.

use crate::dynkin::DynkinComponent;
use crate::labeling::Mark;
use crate::{CanonicalIndex, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurfaceId {
    S2,
    S3,
}

impl SurfaceId {
    /// The host used to realize labelings of each index.
    pub fn for_index(index: CanonicalIndex) -> Option<SurfaceId> {
        match index {
            CanonicalIndex::Two | CanonicalIndex::Four => Some(SurfaceId::S2),
            CanonicalIndex::Three => Some(SurfaceId::S3),
            CanonicalIndex::Six => None,
        }
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceId::S2 => "S2",
            SurfaceId::S3 => "S3",
        })
    }
}

impl FromStr for SurfaceId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S2" | "s2" => Ok(SurfaceId::S2),
            "S3" | "s3" => Ok(SurfaceId::S3),
            _ => Err(Error::UnsupportedCombination {
                surface: s.to_string(),
                index: 0,
            }),
        }
    }
}

/// An isolated fixed point at the meeting point of two curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedPoint {
    pub name: String,
    pub curves: [String; 2],
}

/// A labeled host graph. Curve indices follow curve-name order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGraph {
    surface: SurfaceId,
    index: CanonicalIndex,
    names: Vec<String>,
    adjacency: Vec<u32>,
    /// `None` for curves moved by `g`.
    labels: Vec<Option<Mark>>,
    swapped: Vec<(usize, usize)>,
    points: Vec<IsolatedPoint>,
}

fn s3_edges() -> Vec<(String, String)> {
    let mut edges = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            edges.push((format!("F{i}"), format!("E{i}{j}'")));
            edges.push((format!("G{j}"), format!("E{i}{j}")));
            edges.push((format!("E{i}{j}"), format!("E{i}{j}'")));
        }
    }
    edges
}

fn s2_edges() -> Vec<(String, String)> {
    let mut edges = Vec::new();
    for i in [1, 3] {
        for j in [1, 3] {
            edges.push((format!("F{i}"), format!("E{i}{j}'")));
            edges.push((format!("E{i}{j}'"), format!("H{i}{j}")));
            edges.push((format!("H{i}{j}"), format!("E{i}{j}")));
            edges.push((format!("E{i}{j}"), format!("G{j}")));
        }
    }
    let pairs = [
        ("F1", "E12"),
        ("G2", "E12"),
        ("F3", "E32"),
        ("G2", "E32"),
        ("F2", "E22"),
        ("G2", "E22"),
        ("F2", "E22'"),
        ("G2", "E22'"),
        ("F2", "E21'"),
        ("G1", "E21'"),
        ("F2", "E23'"),
        ("G3", "E23'"),
    ];
    edges.extend(pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())));
    edges
}

fn names_of(list: &str) -> Vec<String> {
    list.split_whitespace().map(String::from).collect()
}

/// The host graph of `surface` labeled for `index`.
pub fn host_graph(surface: SurfaceId, index: CanonicalIndex) -> Result<CurveGraph> {
    let edges = match (surface, index) {
        (SurfaceId::S3, CanonicalIndex::Three) => s3_edges(),
        (SurfaceId::S2, CanonicalIndex::Two | CanonicalIndex::Four) => s2_edges(),
        _ => {
            return Err(Error::UnsupportedCombination {
                surface: surface.to_string(),
                index: index.value(),
            })
        }
    };
    let mut names: Vec<String> = edges.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    names.sort();
    names.dedup();
    let pos: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut adjacency = vec![0u32; names.len()];
    for (a, b) in &edges {
        let (i, j) = (pos[a.as_str()], pos[b.as_str()]);
        adjacency[i] |= 1 << j;
        adjacency[j] |= 1 << i;
    }

    let (fixed, square_fixed, swapped) = match index {
        CanonicalIndex::Three => (names_of("F1 F2 F3 G1 G2 G3"), vec![], vec![]),
        CanonicalIndex::Two => (names_of("F1 F2 F3 G1 G2 G3 H11 H13 H31 H33"), vec![], vec![]),
        _ => (
            names_of("F1 F3 G1 G3"),
            names_of("F2 G2 H11 H13 H31 H33"),
            vec![("E22".to_string(), "E22'".to_string())],
        ),
    };
    let mut labels = vec![Some(Mark::S); names.len()];
    for n in &fixed {
        labels[pos[n.as_str()]] = Some(Mark::F);
    }
    for n in &square_fixed {
        labels[pos[n.as_str()]] = Some(Mark::H);
    }
    let swapped: Vec<(usize, usize)> = swapped
        .iter()
        .map(|(a, b)| (pos[a.as_str()], pos[b.as_str()]))
        .collect();
    for &(a, b) in &swapped {
        labels[a] = None;
        labels[b] = None;
    }

    // isolated points sit where a stable curve meets another stable curve
    // (index 3) or a square-fixed curve (index 4)
    let mut points = Vec::new();
    for (a, b) in &edges {
        let (la, lb) = (labels[pos[a.as_str()]], labels[pos[b.as_str()]]);
        let isolated = match index {
            CanonicalIndex::Three => la == Some(Mark::S) && lb == Some(Mark::S),
            CanonicalIndex::Four => {
                matches!(
                    (la, lb),
                    (Some(Mark::S), Some(Mark::H)) | (Some(Mark::H), Some(Mark::S))
                )
            }
            _ => false,
        };
        if isolated {
            let (x, y) = if a < b { (a, b) } else { (b, a) };
            points.push(IsolatedPoint {
                name: format!("P({x},{y})"),
                curves: [x.clone(), y.clone()],
            });
        }
    }
    if index == CanonicalIndex::Three {
        // P_ij = E_ij ∩ E_ij'
        for p in &mut points {
            p.name = format!("P{}", &p.curves[0][1..3]);
        }
    }
    points.sort_by(|a, b| a.name.cmp(&b.name));

    Ok(CurveGraph {
        surface,
        index,
        names,
        adjacency,
        labels,
        swapped,
        points,
    })
}

impl CurveGraph {
    pub fn surface(&self) -> SurfaceId {
        self.surface
    }

    pub fn index(&self) -> CanonicalIndex {
        self.index
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn curve(&self, name: &str) -> Result<usize> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map_err(|_| Error::UnknownCurveName(name.to_string()))
    }

    /// Bitmask of neighbors of curve `i`.
    pub fn neighbor_mask(&self, i: usize) -> u32 {
        self.adjacency[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i] >> j & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| {
                (i + 1..self.len())
                    .filter(move |&j| self.is_adjacent(i, j))
                    .map(move |j| (i, j))
            })
            .collect()
    }

    pub fn label(&self, i: usize) -> Option<Mark> {
        self.labels[i]
    }

    pub fn curves_with(&self, mark: Mark) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == Some(mark)).collect()
    }

    pub fn swapped_pairs(&self) -> &[(usize, usize)] {
        &self.swapped
    }

    pub fn isolated_points(&self) -> &[IsolatedPoint] {
        &self.points
    }

    /// Checks that `curves` (in the component's vertex order) spans an
    /// induced copy of `component` whose host labels equal `marks`.
    pub fn validate_diagram(&self, component: &DynkinComponent, curves: &[&str], marks: &[Mark]) -> Result<bool> {
        let ids = curves.iter().map(|c| self.curve(c)).collect::<Result<Vec<_>>>()?;
        if ids.len() != component.rank() || marks.len() != component.rank() {
            return Ok(false);
        }
        for (a, &x) in ids.iter().enumerate() {
            if ids[..a].contains(&x) || self.labels[x] != Some(marks[a]) {
                return Ok(false);
            }
            for (b, &y) in ids.iter().enumerate().skip(a + 1) {
                if self.is_adjacent(x, y) != component.is_adjacent(a, b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> CurveGraphJson {
        CurveGraphJson {
            surface: self.surface,
            index: self.index,
            curves: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(a, b)| [self.names[a].clone(), self.names[b].clone()])
                .collect(),
            labels: self.names.iter().cloned().zip(self.labels.iter().copied()).collect(),
            swapped_pairs: self
                .swapped
                .iter()
                .map(|&(a, b)| [self.names[a].clone(), self.names[b].clone()])
                .collect(),
            isolated_points: self.points.clone(),
        }
    }
}

/// Exported form of a [`CurveGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveGraphJson {
    pub surface: SurfaceId,
    pub index: CanonicalIndex,
    pub curves: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub labels: BTreeMap<String, Option<Mark>>,
    pub swapped_pairs: Vec<[String; 2]>,
    pub isolated_points: Vec<IsolatedPoint>,
}

/// Checks that `curves` is an induced path in the host for `(surface,
/// index)` whose labels read `marks` in order.
pub fn validate_chain(surface: SurfaceId, index: CanonicalIndex, curves: &[&str], marks: &[Mark]) -> Result<bool> {
    let graph = host_graph(surface, index)?;
    if curves.is_empty() {
        return Ok(false);
    }
    let path = crate::dynkin::make_component(crate::dynkin::Kind::A, curves.len())?;
    graph.validate_diagram(&path, curves, marks)
}
