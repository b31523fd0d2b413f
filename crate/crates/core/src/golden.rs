//! Reference witness tables shipped with the crate.
//!
//! `index3.json` lists the realized index-3 types with witness chains and the
//! types whose realizability the 24-curve search cannot settle;
//! `index2_4.json` lists the index-2 and index-4 witnesses. Chains are given
//! in the vertex order of their component. Entries whose printed data needed
//! repair carry a `corrected` note, and the original reading is kept in
//! `printed_marks` or `printed_curves`.

use crate::dynkin::{Configuration, DynkinComponent};
use crate::labeling::{parse_marks, Fragment, Labeling};
use crate::realizability::Embedding;
use crate::shioda_inose::CurveGraph;
use crate::{CanonicalIndex, Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const INDEX3_FILE: &str = "index3.json";
pub const INDEX2_4_FILE: &str = "index2_4.json";

const EMBEDDED_INDEX3: &str = include_str!("../golden/index3.json");
const EMBEDDED_INDEX2_4: &str = include_str!("../golden/index2_4.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub component: String,
    pub marks: String,
    pub curves: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_marks: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_curves: Option<Vec<String>>,
    /// The chain is absent from the printed table.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub supplied: bool,
}

impl ChainRecord {
    pub fn component(&self) -> Result<DynkinComponent> {
        self.component.parse()
    }

    pub fn parsed_marks(&self) -> Result<Fragment> {
        parse_marks(&self.marks).ok_or_else(|| Error::GoldenFileMalformed(format!("bad marks {:?}", self.marks)))
    }

    pub fn is_corrected(&self) -> bool {
        self.printed_marks.is_some() || self.printed_curves.is_some() || self.supplied
    }

    /// Whether the chain spans an induced, correctly labeled copy of its
    /// component in `host`.
    pub fn validates(&self, host: &CurveGraph) -> Result<bool> {
        let curves: Vec<&str> = self.curves.iter().map(String::as_str).collect();
        host.validate_diagram(&self.component()?, &curves, &self.parsed_marks()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub item: Option<u32>,
    #[serde(rename = "type")]
    pub type_name: String,
    pub chains: Vec<ChainRecord>,
    pub corrected: Option<String>,
}

impl WitnessRecord {
    pub fn configuration(&self) -> Result<Configuration> {
        Configuration::parse(&self.type_name)
    }

    /// The witness as a labeled embedding, with chains matched to the
    /// configuration's component order.
    pub fn as_embedding(&self, index: CanonicalIndex) -> Result<(Configuration, Labeling, Embedding)> {
        let config = self.configuration()?;
        let mut chains: Vec<&ChainRecord> = self.chains.iter().collect();
        let mut components = Vec::new();
        let mut images = Vec::new();
        for c in config.components() {
            let pos = chains
                .iter()
                .position(|ch| ch.component().is_ok_and(|x| x == *c))
                .ok_or_else(|| Error::GoldenFileMalformed(format!("{}: no chain for {c}", self.type_name)))?;
            let ch = chains.remove(pos);
            components.push(ch.parsed_marks()?);
            images.push(ch.curves.clone());
        }
        if !chains.is_empty() {
            return Err(Error::GoldenFileMalformed(format!("{}: extra chains", self.type_name)));
        }
        Ok((config, Labeling { index, components }, Embedding { components: images }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMarks {
    pub component: String,
    pub marks: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndeterminateRecord {
    pub family: String,
    pub item: u32,
    #[serde(rename = "type")]
    pub type_name: String,
    pub marks: Vec<ComponentMarks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Index3Golden {
    pub index: u32,
    pub realized: Vec<WitnessRecord>,
    pub indeterminate: Vec<IndeterminateRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Index24Golden {
    pub index2: Vec<WitnessRecord>,
    pub index4: Vec<WitnessRecord>,
}

/// Realized witnesses and indeterminate type names for one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenIndex<'a> {
    pub realized: &'a [WitnessRecord],
    pub indeterminate: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTables {
    pub index3: Index3Golden,
    pub index2_4: Index24Golden,
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::GoldenFileMalformed(format!("{what}: {e}")))
}

impl GoldenTables {
    /// Tables compiled into the crate.
    pub fn embedded() -> GoldenTables {
        GoldenTables {
            index3: parse(EMBEDDED_INDEX3, INDEX3_FILE).expect("embedded golden parses"),
            index2_4: parse(EMBEDDED_INDEX2_4, INDEX2_4_FILE).expect("embedded golden parses"),
        }
    }

    /// Tables read from `dir`, which must hold both files.
    pub fn load(dir: &Path) -> Result<GoldenTables> {
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|_| Error::GoldenFileMissing(path.display().to_string()))
        };
        Ok(GoldenTables {
            index3: parse(&read(INDEX3_FILE)?, INDEX3_FILE)?,
            index2_4: parse(&read(INDEX2_4_FILE)?, INDEX2_4_FILE)?,
        })
    }

    /// Embedded tables, or those in `dir` when given.
    pub fn resolve(dir: Option<&Path>) -> Result<GoldenTables> {
        match dir {
            Some(d) => Self::load(d),
            None => Ok(Self::embedded()),
        }
    }

    /// Writes both files into `dir`.
    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::write(dir.join(INDEX3_FILE), serde_json::to_string_pretty(&self.index3)?)?;
        std::fs::write(dir.join(INDEX2_4_FILE), serde_json::to_string_pretty(&self.index2_4)?)
    }

    pub fn for_index(&self, index: CanonicalIndex) -> GoldenIndex<'_> {
        match index {
            CanonicalIndex::Two => GoldenIndex {
                realized: &self.index2_4.index2,
                indeterminate: Vec::new(),
            },
            CanonicalIndex::Three => GoldenIndex {
                realized: &self.index3.realized,
                indeterminate: self.index3.indeterminate.iter().map(|r| r.type_name.clone()).collect(),
            },
            CanonicalIndex::Four => GoldenIndex {
                realized: &self.index2_4.index4,
                indeterminate: Vec::new(),
            },
            CanonicalIndex::Six => GoldenIndex {
                realized: &[],
                indeterminate: Vec::new(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_sizes() {
        let g = GoldenTables::embedded();
        assert_eq!(g.index3.realized.len(), 40);
        assert_eq!(g.index3.indeterminate.len(), 8);
        assert_eq!(g.index2_4.index2.len(), 5);
        assert_eq!(g.index2_4.index4.len(), 3);
    }

    #[test]
    fn missing_dir() {
        let err = GoldenTables::load(Path::new("/nonexistent/golden")).unwrap_err();
        assert!(matches!(err, Error::GoldenFileMissing(_)));
    }

    #[test]
    fn chain_marks_match_ranks() {
        let g = GoldenTables::embedded();
        let all = g
            .index3
            .realized
            .iter()
            .chain(&g.index2_4.index2)
            .chain(&g.index2_4.index4);
        for w in all {
            for ch in &w.chains {
                let c = ch.component().unwrap();
                assert_eq!(ch.parsed_marks().unwrap().len(), c.rank(), "{}", w.type_name);
                assert_eq!(ch.curves.len(), c.rank(), "{}", w.type_name);
            }
        }
    }
}
