//! Per-curve automorphism marks and the local rules that constrain them.
//!
//! Every curve of a configuration is stable under the automorphism `g`. Its
//! mark records how `g` acts on it:
//!
//! * `f`: fixed pointwise by `g`;
//! * `h`: fixed pointwise by `g²` but not by `g` (index 4 only);
//! * `s`: stable, not fixed.
//!
//! Local rules per index (the graph is the configuration's dual graph):
//!
//! * index 2: no two adjacent vertices share the same fixedness (no `f-f`,
//!   no `s-s`); every `s` has exactly two `f` neighbors.
//! * index 3: no `f-f` edge; every `s` has exactly one `f` neighbor; every
//!   induced three-vertex path contains exactly one `f`. `E` components are
//!   rejected outright.
//! * index 4: `f` and `h` vertices are never adjacent to any `f` or `h`;
//!   no `s-s` edge; every `s` has exactly one `f` and one `h` neighbor.

use crate::dynkin::{Configuration, DynkinComponent, Kind};
use crate::{CanonicalIndex, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    F,
    H,
    S,
}

impl Mark {
    pub fn symbol(self) -> char {
        match self {
            Mark::F => 'f',
            Mark::H => 'h',
            Mark::S => 's',
        }
    }

    pub fn from_symbol(c: char) -> Option<Mark> {
        match c {
            'f' => Some(Mark::F),
            'h' => Some(Mark::H),
            's' => Some(Mark::S),
            _ => None,
        }
    }

    fn is_marked(self) -> bool {
        self != Mark::S
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Marks for one component, in the component's vertex order.
pub type Fragment = Vec<Mark>;

/// Parses `"s-f-s"`, `"s s > f-s"` or `"sfs"` style mark strings.
pub fn parse_marks(s: &str) -> Option<Fragment> {
    s.chars()
        .filter(|c| !matches!(c, '-' | ' ' | '>' | ',' | '−'))
        .map(Mark::from_symbol)
        .collect()
}

/// Renders a fragment the way chains are written: `f-s-s-f` for paths and
/// `s s > f-s-s-f` for `D` components.
pub fn render_fragment(component: &DynkinComponent, marks: &[Mark]) -> String {
    let join = |ms: &[Mark]| ms.iter().map(|m| m.symbol().to_string()).collect::<Vec<_>>().join("-");
    match component.kind() {
        Kind::D => format!("{} {} > {}", marks[0], marks[1], join(&marks[2..])),
        _ => join(marks),
    }
}

/// A full labeling of a configuration, aligned with its component order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Labeling {
    pub index: CanonicalIndex,
    pub components: Vec<Fragment>,
}

impl Labeling {
    pub fn count(&self, mark: Mark) -> usize {
        self.components.iter().flatten().filter(|&&m| m == mark).count()
    }

    pub fn render(&self, config: &Configuration) -> String {
        config
            .components()
            .iter()
            .zip(&self.components)
            .map(|(c, m)| render_fragment(c, m))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Fixed-point bookkeeping forced by a labeling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCount {
    /// Isolated `g`-fixed points lying on the configuration.
    pub m_delta: usize,
    /// `f`-marked curves.
    pub n_delta: usize,
    /// `h`-marked curves.
    pub h_delta: usize,
}

impl std::ops::Add for FixedPointCount {
    type Output = FixedPointCount;
    fn add(self, o: FixedPointCount) -> FixedPointCount {
        FixedPointCount {
            m_delta: self.m_delta + o.m_delta,
            n_delta: self.n_delta + o.n_delta,
            h_delta: self.h_delta + o.h_delta,
        }
    }
}

/// Global fixed-locus budget a full labeling must meet for each index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlobalBudget {
    pub fixed_curves: usize,
    pub h_curves: usize,
    pub max_isolated_points: usize,
}

impl GlobalBudget {
    /// `None` for index 6, which never reaches the labeling stage.
    pub fn for_index(index: CanonicalIndex) -> Option<GlobalBudget> {
        match index {
            // ten fixed curves, no isolated points
            CanonicalIndex::Two => Some(GlobalBudget {
                fixed_curves: 10,
                h_curves: 0,
                max_isolated_points: 0,
            }),
            // six fixed curves; M - N = 3 caps the isolated points at 9
            CanonicalIndex::Three => Some(GlobalBudget {
                fixed_curves: 6,
                h_curves: 0,
                max_isolated_points: 9,
            }),
            // four fixed curves, six g²-only curves; M - 2N = 4 gives 12
            CanonicalIndex::Four => Some(GlobalBudget {
                fixed_curves: 4,
                h_curves: 6,
                max_isolated_points: 12,
            }),
            CanonicalIndex::Six => None,
        }
    }

    pub fn admits(&self, count: &FixedPointCount) -> bool {
        count.n_delta == self.fixed_curves
            && count.h_delta == self.h_curves
            && count.m_delta <= self.max_isolated_points
    }
}

fn allowed_marks(index: CanonicalIndex) -> &'static [Mark] {
    match index {
        CanonicalIndex::Four => &[Mark::F, Mark::H, Mark::S],
        _ => &[Mark::F, Mark::S],
    }
}

/// Checks the local rules at vertex `v`, assuming `v` and all its neighbors
/// are assigned.
fn vertex_ok(component: &DynkinComponent, marks: &[Mark], v: usize, index: CanonicalIndex) -> bool {
    let mark = marks[v];
    let nbrs = component.neighbors(v);
    let count = |m: Mark| nbrs.iter().filter(|&&u| marks[u] == m).count();
    match index {
        CanonicalIndex::Two => match mark {
            Mark::F => count(Mark::F) == 0,
            Mark::S => count(Mark::S) == 0 && count(Mark::F) == 2,
            Mark::H => false,
        },
        CanonicalIndex::Three => {
            let local = match mark {
                Mark::F => count(Mark::F) == 0,
                Mark::S => count(Mark::F) == 1,
                Mark::H => false,
            };
            // v as the middle of every induced 3-path through it
            let paths_ok = nbrs.iter().enumerate().all(|(i, &a)| {
                nbrs[i + 1..]
                    .iter()
                    .all(|&b| [marks[a], mark, marks[b]].iter().filter(|&&m| m == Mark::F).count() == 1)
            });
            local && paths_ok
        }
        CanonicalIndex::Four => match mark {
            Mark::F | Mark::H => nbrs.iter().all(|&u| !marks[u].is_marked()),
            Mark::S => count(Mark::S) == 0 && count(Mark::F) == 1 && count(Mark::H) == 1,
        },
        CanonicalIndex::Six => false,
    }
}

/// All markings of `component` satisfying the local rules for `index`,
/// in lexicographic order. Not reduced by diagram symmetry.
pub fn label_component(component: &DynkinComponent, index: CanonicalIndex) -> Vec<Fragment> {
    if index == CanonicalIndex::Six || (index == CanonicalIndex::Three && component.kind() == Kind::E) {
        return Vec::new();
    }
    let n = component.rank();
    // vertex v can be checked once every neighbor is assigned
    let ready_at: Vec<usize> = (0..n)
        .map(|v| component.neighbors(v).iter().copied().chain([v]).max().unwrap_or(v))
        .collect();
    let mut checks_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        checks_at[ready_at[v]].push(v);
    }
    let mut out = Vec::new();
    let mut marks = vec![Mark::S; n];
    extend(component, index, &checks_at, 0, &mut marks, &mut out);
    out
}

fn extend(
    component: &DynkinComponent,
    index: CanonicalIndex,
    checks_at: &[Vec<usize>],
    depth: usize,
    marks: &mut Vec<Mark>,
    out: &mut Vec<Fragment>,
) {
    if depth == marks.len() {
        out.push(marks.clone());
        return;
    }
    for &m in allowed_marks(index) {
        marks[depth] = m;
        if checks_at[depth].iter().all(|&v| vertex_ok(component, marks, v, index)) {
            extend(component, index, checks_at, depth + 1, marks, out);
        }
    }
}

/// Fixed-point counts contributed by one labeled component.
///
/// Each `s` curve carries two `g`-fixed points and each `h` curve two. A
/// point where an `s` curve meets an `f` curve lies on a fixed curve; an
/// `s-s` or `s-h` contact is one shared isolated point.
pub fn component_fixed_points(component: &DynkinComponent, marks: &[Mark]) -> FixedPointCount {
    let count = |m: Mark| marks.iter().filter(|&&x| x == m).count();
    let mut sf = 0;
    let mut ss = 0;
    let mut sh = 0;
    for &(u, v) in component.edges() {
        let pair = if marks[u] <= marks[v] {
            (marks[u], marks[v])
        } else {
            (marks[v], marks[u])
        };
        match pair {
            (Mark::F, Mark::S) => sf += 1,
            (Mark::H, Mark::S) => sh += 1,
            (Mark::S, Mark::S) => ss += 1,
            _ => {}
        }
    }
    let s = count(Mark::S);
    let h = count(Mark::H);
    FixedPointCount {
        m_delta: 2 * s + 2 * h - sf - ss - sh,
        n_delta: count(Mark::F),
        h_delta: h,
    }
}

/// Fixed-point counts of a labeled configuration.
pub fn count_fixed_points(config: &Configuration, labeling: &Labeling) -> Result<FixedPointCount> {
    check_shape(config, labeling)?;
    Ok(config
        .components()
        .iter()
        .zip(&labeling.components)
        .map(|(c, m)| component_fixed_points(c, m))
        .fold(FixedPointCount::default(), |a, b| a + b))
}

fn check_shape(config: &Configuration, labeling: &Labeling) -> Result<()> {
    if config.components().len() != labeling.components.len() {
        return Err(Error::LabelingMismatch(format!(
            "{} components vs {} fragments",
            config.components().len(),
            labeling.components.len()
        )));
    }
    for (c, m) in config.components().iter().zip(&labeling.components) {
        if c.rank() != m.len() {
            return Err(Error::LabelingMismatch(format!(
                "{} has {} vertices but {} marks",
                c,
                c.rank(),
                m.len()
            )));
        }
    }
    Ok(())
}

/// Checks a labeling against the local rules of its index.
pub fn is_valid_labeling(config: &Configuration, labeling: &Labeling) -> bool {
    if check_shape(config, labeling).is_err() {
        return false;
    }
    config.components().iter().zip(&labeling.components).all(|(c, m)| {
        !(labeling.index == CanonicalIndex::Three && c.kind() == Kind::E)
            && m.iter().all(|x| allowed_marks(labeling.index).contains(x))
            && c.vertices().all(|v| vertex_ok(c, m, v, labeling.index))
    })
}

/// Lexicographically least image of `marks` under the component's diagram
/// automorphisms.
pub fn canonical_fragment(component: &DynkinComponent, marks: &[Mark]) -> Fragment {
    component
        .automorphisms()
        .iter()
        .map(|perm| {
            // vertex v carries the mark of perm[v]
            (0..marks.len()).map(|v| marks[perm[v]]).collect::<Fragment>()
        })
        .min()
        .expect("identity is always present")
}

/// Canonical representative up to diagram automorphisms and permutations of
/// identical components.
pub fn canonical_labeling(config: &Configuration, labeling: &Labeling) -> Labeling {
    let mut components: Vec<Fragment> = config
        .components()
        .iter()
        .zip(&labeling.components)
        .map(|(c, m)| canonical_fragment(c, m))
        .collect();
    for run in config.identical_runs() {
        components[run].sort();
    }
    Labeling {
        index: labeling.index,
        components,
    }
}

/// All labelings of `config` meeting the local rules and the global budget of
/// `index`, one per class up to symmetry, in sorted order.
pub fn enumerate_labelings(config: &Configuration, index: CanonicalIndex) -> Vec<Labeling> {
    let Some(budget) = GlobalBudget::for_index(index) else {
        return Vec::new();
    };
    let options: Vec<Vec<(Fragment, FixedPointCount)>> = config
        .components()
        .iter()
        .map(|c| {
            label_component(c, index)
                .into_iter()
                .map(|m| {
                    let count = component_fixed_points(c, &m);
                    (m, count)
                })
                .collect()
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    // suffix bounds on (n, h, m) for pruning
    let k = options.len();
    let mut min_suffix = vec![FixedPointCount::default(); k + 1];
    let mut max_suffix = vec![FixedPointCount::default(); k + 1];
    for i in (0..k).rev() {
        let lo = |f: fn(&FixedPointCount) -> usize| options[i].iter().map(|(_, c)| f(c)).min().unwrap();
        let hi = |f: fn(&FixedPointCount) -> usize| options[i].iter().map(|(_, c)| f(c)).max().unwrap();
        min_suffix[i] = min_suffix[i + 1]
            + FixedPointCount {
                m_delta: lo(|c| c.m_delta),
                n_delta: lo(|c| c.n_delta),
                h_delta: lo(|c| c.h_delta),
            };
        max_suffix[i] = max_suffix[i + 1]
            + FixedPointCount {
                m_delta: hi(|c| c.m_delta),
                n_delta: hi(|c| c.n_delta),
                h_delta: hi(|c| c.h_delta),
            };
    }
    // identical neighbours take non-decreasing option indices
    let mut same_as_prev = vec![false; k];
    for run in config.identical_runs() {
        for flag in &mut same_as_prev[run.start + 1..run.end] {
            *flag = true;
        }
    }

    let search = ProductSearch {
        options: &options,
        min_suffix: &min_suffix,
        max_suffix: &max_suffix,
        same_as_prev: &same_as_prev,
        budget,
    };
    let mut found = BTreeSet::new();
    let mut choice = Vec::with_capacity(k);
    search.run(0, FixedPointCount::default(), &mut choice, &mut |choice: &[usize]| {
        let raw = Labeling {
            index,
            components: choice
                .iter()
                .enumerate()
                .map(|(i, &j)| options[i][j].0.clone())
                .collect(),
        };
        found.insert(canonical_labeling(config, &raw));
    });
    found.into_iter().collect()
}

struct ProductSearch<'a> {
    options: &'a [Vec<(Fragment, FixedPointCount)>],
    min_suffix: &'a [FixedPointCount],
    max_suffix: &'a [FixedPointCount],
    same_as_prev: &'a [bool],
    budget: GlobalBudget,
}

impl ProductSearch<'_> {
    fn run(&self, i: usize, acc: FixedPointCount, choice: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
        let b = &self.budget;
        let lo = acc + self.min_suffix[i];
        let hi = acc + self.max_suffix[i];
        if lo.n_delta > b.fixed_curves
            || hi.n_delta < b.fixed_curves
            || lo.h_delta > b.h_curves
            || hi.h_delta < b.h_curves
            || lo.m_delta > b.max_isolated_points
        {
            return;
        }
        if i == self.options.len() {
            if b.admits(&acc) {
                emit(choice);
            }
            return;
        }
        let start = if self.same_as_prev[i] { choice[i - 1] } else { 0 };
        for j in start..self.options[i].len() {
            choice.push(j);
            self.run(i + 1, acc + self.options[i][j].1, choice, emit);
            choice.pop();
        }
    }
}
