//! Candidate configurations per canonical index.
//!
//! Index 3 is driven by the block system: a configuration is built from
//! `a` blocks `D_{3l+1}`, `b` blocks `D_{3m}`, `c` blocks `A_{3p}`, `d` blocks
//! `A_{3q-1}` and `e` blocks `A_{3r-2}`, whose size parameters count the
//! fixed curves of each block and therefore sum to 6. The isolated-point
//! budget turns into `d + 2e = a` and `2a + b + c - e ≤ 3`.

use crate::cyclotomic::euler_phi;
use crate::dynkin::{make_component, Configuration, DynkinComponent, Kind};
use crate::labeling::{component_fixed_points, enumerate_labelings, label_component, GlobalBudget, Labeling};
use crate::lefschetz::{order6_trace, Order6Trace};
use crate::{CanonicalIndex, Execution, Result, TARGET_RANK};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Canonical indices allowed by `φ(I) ≤ rank T_S ≤ 3`, excluding `I = 1`.
pub fn index_candidates() -> BTreeSet<u32> {
    // rank T_S = 22 - ρ(S) with ρ ∈ {19, 20}
    let max_transcendental_rank = 22 - 19;
    (2..=4 * max_transcendental_rank)
        .filter(|&n| euler_phi(n) <= max_transcendental_rank)
        .collect()
}

/// Block counts `(a, b, c, d, e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilySolution {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
}

impl FamilySolution {
    pub fn is_valid(&self) -> bool {
        self.d + 2 * self.e == self.a && 2 * self.a + self.b + self.c <= 3 + self.e
    }

    pub fn block_count(&self) -> u32 {
        self.a + self.b + self.c + self.d + self.e
    }

    /// `(kind, rank multiplier, offset, minimum parameter)` per block, in
    /// the order a, b, c, d, e.
    fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        let mut push = |n: u32, block: Block| out.extend(std::iter::repeat_n(block, n as usize));
        push(
            self.a,
            Block {
                kind: Kind::D,
                offset: 1,
                min: 1,
            },
        );
        push(
            self.b,
            Block {
                kind: Kind::D,
                offset: 0,
                min: 2,
            },
        );
        push(
            self.c,
            Block {
                kind: Kind::A,
                offset: 0,
                min: 1,
            },
        );
        push(
            self.d,
            Block {
                kind: Kind::A,
                offset: -1,
                min: 1,
            },
        );
        push(
            self.e,
            Block {
                kind: Kind::A,
                offset: -2,
                min: 1,
            },
        );
        out
    }
}

impl fmt::Display for FamilySolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.a, self.b, self.c, self.d, self.e)
    }
}

#[derive(Clone, Copy, Debug)]
struct Block {
    kind: Kind,
    offset: i64,
    min: u32,
}

impl Block {
    fn component(&self, param: u32) -> DynkinComponent {
        make_component(self.kind, (3 * param as i64 + self.offset) as usize).expect("block ranks are valid")
    }
}

/// Nonempty solutions of the block system, in lexicographic order.
pub fn enumerate_family_solutions() -> Vec<FamilySolution> {
    let mut out = Vec::new();
    // 2a ≤ 3 + e and d + 2e = a bound every count by 3
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                for e in 0..=3 {
                    for d in 0..=3 {
                        let s = FamilySolution { a, b, c, d, e };
                        if s.is_valid() && s.block_count() > 0 {
                            out.push(s);
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
    XIII,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::I,
        Family::II,
        Family::III,
        Family::IV,
        Family::V,
        Family::VI,
        Family::VII,
        Family::VIII,
        Family::IX,
        Family::X,
        Family::XI,
        Family::XII,
        Family::XIII,
    ];

    pub fn solution(self) -> FamilySolution {
        let (a, b, c, d, e) = match self {
            Family::I => (0, 0, 1, 0, 0),
            Family::II => (0, 1, 0, 0, 0),
            Family::III => (0, 0, 2, 0, 0),
            Family::IV => (0, 1, 1, 0, 0),
            Family::V => (0, 2, 0, 0, 0),
            Family::VI => (1, 0, 0, 1, 0),
            Family::VII => (0, 0, 3, 0, 0),
            Family::VIII => (0, 3, 0, 0, 0),
            Family::IX => (0, 2, 1, 0, 0),
            Family::X => (0, 1, 2, 0, 0),
            Family::XI => (1, 0, 1, 1, 0),
            Family::XII => (2, 0, 0, 0, 1),
            Family::XIII => (1, 1, 0, 1, 0),
        };
        FamilySolution { a, b, c, d, e }
    }

    pub fn from_solution(s: &FamilySolution) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.solution() == *s)
    }

    pub fn numeral(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
            Family::V => "V",
            Family::VI => "VI",
            Family::VII => "VII",
            Family::VIII => "VIII",
            Family::IX => "IX",
            Family::X => "X",
            Family::XI => "XI",
            Family::XII => "XII",
            Family::XIII => "XIII",
        }
    }

    /// All rank-18 configurations of this family.
    pub fn expand(self) -> Vec<Configuration> {
        let blocks = self.solution().blocks();
        let budget = 6u32;
        let mut found = BTreeSet::new();
        let mut params = Vec::with_capacity(blocks.len());
        expand_params(&blocks, budget, &mut params, &mut |ps| {
            let components = blocks.iter().zip(ps).map(|(b, &p)| b.component(p)).collect();
            let config = Configuration::new(components).expect("nonempty");
            debug_assert_eq!(config.rank(), TARGET_RANK);
            found.insert(config);
        });
        found.into_iter().collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.numeral())
    }
}

fn expand_params(blocks: &[Block], remaining: u32, params: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    let i = params.len();
    if i == blocks.len() {
        if remaining == 0 {
            emit(params);
        }
        return;
    }
    let rest_min: u32 = blocks[i + 1..].iter().map(|b| b.min).sum();
    for p in blocks[i].min..=remaining.saturating_sub(rest_min) {
        params.push(p);
        expand_params(blocks, remaining - p, params, emit);
        params.pop();
    }
}

/// One candidate type with its family (index 3) and labelings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateType {
    #[serde(flatten)]
    pub configuration: Configuration,
    pub family: Option<Family>,
    pub labelings: Vec<Labeling>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateList {
    pub index: CanonicalIndex,
    pub types: Vec<CandidateType>,
    pub trace: Option<Order6Trace>,
}

impl CandidateList {
    pub fn names(&self) -> BTreeSet<String> {
        self.types.iter().map(|t| t.configuration.name()).collect()
    }

    pub fn family_counts(&self) -> Vec<(Family, usize)> {
        Family::ALL
            .iter()
            .map(|&f| (f, self.types.iter().filter(|t| t.family == Some(f)).count()))
            .collect()
    }
}

/// Rank-18 configurations made of `A_{odd}` components carrying exactly
/// `fixed_curves` fixed curves under the alternating pattern.
fn odd_a_pairs(fixed_curves: usize) -> Vec<Configuration> {
    // A_{2k-1} carries k fixed curves, so ranks sum to 2·fixed_curves - #components
    let parts = 2 * fixed_curves - TARGET_RANK;
    let mut out = BTreeSet::new();
    let mut ks = Vec::new();
    odd_a_split(fixed_curves, parts, 1, &mut ks, &mut |ks| {
        let comps = ks
            .iter()
            .map(|&k| make_component(Kind::A, 2 * k - 1).expect("positive rank"))
            .collect();
        out.insert(Configuration::new(comps).expect("nonempty"));
    });
    out.into_iter().collect()
}

fn odd_a_split(total: usize, parts: usize, min: usize, ks: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if parts == 0 {
        if total == 0 {
            emit(ks);
        }
        return;
    }
    for k in min..=total {
        ks.push(k);
        odd_a_split(total - k, parts - 1, k, ks, emit);
        ks.pop();
    }
}

/// Candidate list for `index`.
///
/// Index 2 lists the odd-rank `A` pairs with ten fixed curves; index 3
/// expands the thirteen families; index 4 keeps the index-2 candidates that
/// admit a labeling with four fixed and six square-fixed curves; index 6 is
/// empty and carries the impossibility trace.
pub fn enumerate_types(index: CanonicalIndex) -> CandidateList {
    let with_labelings = |configuration: Configuration, family: Option<Family>| CandidateType {
        labelings: enumerate_labelings(&configuration, index),
        configuration,
        family,
    };
    let mut types: Vec<CandidateType> = match index {
        CanonicalIndex::Two => odd_a_pairs(10).into_iter().map(|c| with_labelings(c, None)).collect(),
        CanonicalIndex::Three => Family::ALL
            .iter()
            .flat_map(|&f| f.expand().into_iter().map(move |c| (c, f)))
            .map(|(c, f)| with_labelings(c, Some(f)))
            .collect(),
        CanonicalIndex::Four => odd_a_pairs(10)
            .into_iter()
            .map(|c| with_labelings(c, None))
            .filter(|t| !t.labelings.is_empty())
            .collect(),
        CanonicalIndex::Six => Vec::new(),
    };
    types.sort_by_key(|x| (x.family, x.configuration.name()));
    CandidateList {
        index,
        types,
        trace: (index == CanonicalIndex::Six).then(order6_trace),
    }
}

/// Like [`enumerate_types`] but from a raw index value.
pub fn enumerate_types_for(index: u32) -> Result<CandidateList> {
    Ok(enumerate_types(CanonicalIndex::try_from(index)?))
}

/// Which constraint rules a configuration out for an index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExclusionReason {
    RankMismatch {
        rank: usize,
    },
    IndexImpossible,
    ComponentHasNoLabeling {
        component: String,
        rule: String,
    },
    FixedCurveExcess {
        minimum: usize,
        budget: usize,
        per_component: Vec<usize>,
    },
    FixedCurveShortfall {
        maximum: usize,
        budget: usize,
    },
    SquareFixedCurveMismatch {
        minimum: usize,
        maximum: usize,
        budget: usize,
    },
    IsolatedPointExcess {
        minimum: usize,
        budget: usize,
    },
    NoGlobalCombination,
}

impl fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExclusionReason::RankMismatch { rank } => write!(f, "total rank {rank} is not 18"),
            ExclusionReason::IndexImpossible => write!(f, "index 6 is impossible"),
            ExclusionReason::ComponentHasNoLabeling { component, rule } => write!(f, "{rule} ({component})"),
            ExclusionReason::FixedCurveExcess {
                minimum,
                budget,
                per_component,
            } => write!(
                f,
                "f-count minimum {minimum} exceeds N={budget} ({})",
                per_component.iter().map(usize::to_string).collect::<Vec<_>>().join("+")
            ),
            ExclusionReason::FixedCurveShortfall { maximum, budget } => {
                write!(f, "f-count maximum {maximum} is below N={budget}")
            }
            ExclusionReason::SquareFixedCurveMismatch {
                minimum,
                maximum,
                budget,
            } => write!(f, "h-count range {minimum}..={maximum} misses {budget}"),
            ExclusionReason::IsolatedPointExcess { minimum, budget } => {
                write!(f, "isolated-point minimum {minimum} exceeds {budget}")
            }
            ExclusionReason::NoGlobalCombination => {
                write!(f, "no combination of component labelings meets the global budget")
            }
        }
    }
}

fn unlabelable_rule(component: &DynkinComponent, index: CanonicalIndex) -> String {
    match (index, component.kind()) {
        (CanonicalIndex::Three, Kind::E) => "E-component is excluded for index 3".into(),
        (CanonicalIndex::Three, _) => "D-component of rank 2 mod 3 has no index-3 labeling".into(),
        (_, Kind::A) => format!("even rank A-component has no index-{index} labeling"),
        (_, k) => format!("{}-component has no index-{index} labeling", k.letter()),
    }
}

/// The first constraint that excludes `config` for `index`, or `None` when a
/// labeling exists.
pub fn exclusion_reason(config: &Configuration, index: CanonicalIndex) -> Option<ExclusionReason> {
    if config.rank() != TARGET_RANK {
        return Some(ExclusionReason::RankMismatch { rank: config.rank() });
    }
    let Some(budget) = GlobalBudget::for_index(index) else {
        return Some(ExclusionReason::IndexImpossible);
    };
    let mut counts = Vec::new();
    for c in config.components() {
        let fragments = label_component(c, index);
        if fragments.is_empty() {
            return Some(ExclusionReason::ComponentHasNoLabeling {
                component: c.name(),
                rule: unlabelable_rule(c, index),
            });
        }
        counts.push(
            fragments
                .iter()
                .map(|m| component_fixed_points(c, m))
                .collect::<Vec<_>>(),
        );
    }
    let min = |f: fn(&crate::labeling::FixedPointCount) -> usize| -> Vec<usize> {
        counts.iter().map(|cs| cs.iter().map(f).min().unwrap()).collect()
    };
    let max = |f: fn(&crate::labeling::FixedPointCount) -> usize| -> usize {
        counts.iter().map(|cs| cs.iter().map(f).max().unwrap()).sum()
    };
    let n_min = min(|c| c.n_delta);
    let n_min_total: usize = n_min.iter().sum();
    if n_min_total > budget.fixed_curves {
        return Some(ExclusionReason::FixedCurveExcess {
            minimum: n_min_total,
            budget: budget.fixed_curves,
            per_component: n_min,
        });
    }
    let n_max = max(|c| c.n_delta);
    if n_max < budget.fixed_curves {
        return Some(ExclusionReason::FixedCurveShortfall {
            maximum: n_max,
            budget: budget.fixed_curves,
        });
    }
    let h_min: usize = min(|c| c.h_delta).iter().sum();
    let h_max = max(|c| c.h_delta);
    if h_min > budget.h_curves || h_max < budget.h_curves {
        return Some(ExclusionReason::SquareFixedCurveMismatch {
            minimum: h_min,
            maximum: h_max,
            budget: budget.h_curves,
        });
    }
    let m_min: usize = min(|c| c.m_delta).iter().sum();
    if m_min > budget.max_isolated_points {
        return Some(ExclusionReason::IsolatedPointExcess {
            minimum: m_min,
            budget: budget.max_isolated_points,
        });
    }
    if enumerate_labelings(config, index).is_empty() {
        return Some(ExclusionReason::NoGlobalCombination);
    }
    None
}

/// Every multiset of ADE components with total rank `rank`, sorted by name.
pub fn all_ade_multisets(rank: usize) -> Vec<Configuration> {
    let mut shapes: Vec<(Kind, usize)> = Vec::new();
    shapes.extend((1..=rank).map(|n| (Kind::A, n)));
    shapes.extend((4..=rank).map(|n| (Kind::D, n)));
    shapes.extend([6, 7, 8].into_iter().filter(|&n| n <= rank).map(|n| (Kind::E, n)));
    let mut out = Vec::new();
    let mut current = Vec::new();
    multisets(&shapes, 0, rank, &mut current, &mut out);
    out.sort();
    out
}

fn multisets(
    shapes: &[(Kind, usize)],
    start: usize,
    remaining: usize,
    current: &mut Vec<(Kind, usize)>,
    out: &mut Vec<Configuration>,
) {
    if remaining == 0 {
        let comps = current
            .iter()
            .map(|&(k, n)| make_component(k, n).expect("valid shape"))
            .collect();
        out.push(Configuration::new(comps).expect("nonempty"));
        return;
    }
    for i in start..shapes.len() {
        let (k, n) = shapes[i];
        if n <= remaining {
            current.push((k, n));
            multisets(shapes, i, remaining - n, current, out);
            current.pop();
        }
    }
}

/// Names of all rank-18 multisets admitting a labeling for `index`.
pub fn labelable_types(index: CanonicalIndex, exec: Execution) -> BTreeSet<String> {
    exec.map(all_ade_multisets(TARGET_RANK), |c| {
        (!enumerate_labelings(&c, index).is_empty()).then(|| c.name())
    })
    .into_iter()
    .flatten()
    .collect()
}
