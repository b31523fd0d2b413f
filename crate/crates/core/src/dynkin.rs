//! ADE Dynkin diagrams and rank-18 configurations.
//!
//! Vertex order conventions (positional, relied on by labelings and chains):
//!
//! * `A_n`: `0 - 1 - ... - (n-1)` along the path.
//! * `D_n`: vertices `0` and `1` are the two length-one twigs, `2` is the
//!   center, `3..n` run outward along the long arm.
//! * `E_n`: `0` is the length-one twig, `1` the center, `2, 3` the
//!   length-two arm and `4..n` the remaining arm.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    D,
    E,
}

impl Kind {
    /// Position of the kind in configuration names: `D` components are
    /// written before `A` components (`D7+A11`), `E` last.
    fn name_order(self) -> u8 {
        match self {
            Kind::D => 0,
            Kind::A => 1,
            Kind::E => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Kind::A => 'A',
            Kind::D => 'D',
            Kind::E => 'E',
        }
    }
}

impl Ord for Kind {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name_order().cmp(&other.name_order())
    }
}

impl PartialOrd for Kind {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One connected ADE diagram. Vertices are `0..rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinComponent {
    kind: Kind,
    rank: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

/// Builds the canonical diagram of the given kind and rank.
pub fn make_component(kind: Kind, rank: usize) -> Result<DynkinComponent> {
    let valid = match kind {
        Kind::A => rank >= 1,
        Kind::D => rank >= 4,
        Kind::E => (6..=8).contains(&rank),
    };
    if !valid {
        return Err(Error::InvalidRank {
            kind: kind.letter(),
            rank,
        });
    }
    let edges: Vec<(usize, usize)> = match kind {
        Kind::A => (1..rank).map(|v| (v - 1, v)).collect(),
        Kind::D => {
            let mut e = vec![(0, 2), (1, 2)];
            e.extend((3..rank).map(|v| (v - 1, v)));
            e
        }
        Kind::E => {
            let mut e = vec![(0, 1), (1, 2), (2, 3), (1, 4)];
            e.extend((5..rank).map(|v| (v - 1, v)));
            e
        }
    };
    let mut neighbors = vec![Vec::new(); rank];
    for &(u, v) in &edges {
        neighbors[u].push(v);
        neighbors[v].push(u);
    }
    for n in &mut neighbors {
        n.sort_unstable();
    }
    Ok(DynkinComponent {
        kind,
        rank,
        edges,
        neighbors,
    })
}

impl DynkinComponent {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.rank
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind.letter(), self.rank)
    }

    /// Vertex permutations preserving the edge set. The identity comes first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank;
        let identity: Vec<usize> = (0..n).collect();
        let mut out = vec![identity.clone()];
        match (self.kind, n) {
            (Kind::A, 1) => {}
            (Kind::A, _) => out.push((0..n).rev().collect()),
            (Kind::D, 4) => {
                // every permutation of the outer vertices {0, 1, 3}
                let outer = [0usize, 1, 3];
                for p in permutations3() {
                    if p == [0, 1, 2] {
                        continue;
                    }
                    let mut perm = identity.clone();
                    for (i, &src) in outer.iter().enumerate() {
                        perm[src] = outer[p[i]];
                    }
                    out.push(perm);
                }
            }
            (Kind::D, _) => {
                let mut perm = identity;
                perm.swap(0, 1);
                out.push(perm);
            }
            (Kind::E, 6) => {
                let mut perm = identity;
                perm.swap(2, 4);
                perm.swap(3, 5);
                out.push(perm);
            }
            (Kind::E, _) => {}
        }
        out
    }
}

fn permutations3() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

impl fmt::Display for DynkinComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

impl FromStr for DynkinComponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfigurationName(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().ok_or_else(bad)? {
            'A' | 'a' => Kind::A,
            'D' | 'd' => Kind::D,
            'E' | 'e' => Kind::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        make_component(kind, rank)
    }
}

/// Sort key for components inside a configuration.
fn component_key(c: &DynkinComponent) -> (Kind, usize) {
    (c.kind, c.rank)
}

/// A diagram automorphism of one component of a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    pub component: usize,
    pub permutation: Vec<usize>,
}

/// A multiset of Dynkin components, stored in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    components: Vec<DynkinComponent>,
}

impl Configuration {
    pub fn new(mut components: Vec<DynkinComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidConfigurationName(String::new()));
        }
        components.sort_by_key(component_key);
        Ok(Configuration { components })
    }

    /// Parses names like `D7+A11`; component order in the input is free.
    pub fn parse(name: &str) -> Result<Self> {
        let components = name
            .split(['+', '⊕'])
            .map(str::parse)
            .collect::<Result<Vec<DynkinComponent>>>()
            .map_err(|_| Error::InvalidConfigurationName(name.to_string()))?;
        Self::new(components)
    }

    pub fn components(&self) -> &[DynkinComponent] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(DynkinComponent::rank).sum()
    }

    pub fn name(&self) -> String {
        configuration_name(&self.components)
    }

    pub fn component_automorphisms(&self, component: usize) -> Vec<DiagramAutomorphism> {
        self.components[component]
            .automorphisms()
            .into_iter()
            .map(|permutation| DiagramAutomorphism { component, permutation })
            .collect()
    }

    /// Runs of identical components as `start..end` ranges.
    pub fn identical_runs(&self) -> Vec<std::ops::Range<usize>> {
        let mut runs = Vec::new();
        let mut start = 0;
        for i in 1..=self.components.len() {
            if i == self.components.len()
                || component_key(&self.components[i]) != component_key(&self.components[start])
            {
                runs.push(start..i);
                start = i;
            }
        }
        runs
    }
}

/// Canonical, order-independent name of a component multiset.
pub fn configuration_name(components: &[DynkinComponent]) -> String {
    let mut keys: Vec<(Kind, usize)> = components.iter().map(component_key).collect();
    keys.sort();
    keys.iter()
        .map(|(k, r)| format!("{}{}", k.letter(), r))
        .collect::<Vec<_>>()
        .join("+")
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Ord for Configuration {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name().cmp(&other.name())
    }
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    kind: Kind,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationJson {
    name: String,
    components: Vec<ComponentJson>,
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ConfigurationJson {
            name: self.name(),
            components: self
                .components
                .iter()
                .map(|c| ComponentJson {
                    kind: c.kind,
                    rank: c.rank,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ConfigurationJson::deserialize(deserializer)?;
        let components = raw
            .components
            .iter()
            .map(|c| make_component(c.kind, c.rank))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let config = Configuration::new(components).map_err(D::Error::custom)?;
        if config.name() != raw.name {
            return Err(D::Error::custom(format!(
                "name {:?} disagrees with components {}",
                raw.name,
                config.name()
            )));
        }
        Ok(config)
    }
}
