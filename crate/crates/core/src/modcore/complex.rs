use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

use super::{homology_at, homology_at_end, homology_at_start, same_presentation, ModuleMap, Subquotient};

/// A finite complex `C_0 -> C_1 -> ... -> C_k` of subquotients. Each module
/// carries a label (its homological or cohomological position).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    modules: Vec<Arc<Subquotient>>,
    maps: Vec<ModuleMap>,
    labels: Vec<i64>,
}

impl ChainComplex {
    /// Certifies that consecutive maps meet and compose to zero.
    pub fn new(maps: Vec<ModuleMap>, labels: Vec<i64>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Structural("a complex needs at least one map".into()));
        }
        if labels.len() != maps.len() + 1 {
            return Err(Error::Structural("one label per module expected".into()));
        }
        let mut modules = vec![maps[0].source().clone()];
        for (i, f) in maps.iter().enumerate() {
            if i > 0 && !same_presentation(maps[i - 1].target(), f.source()) {
                return Err(Error::Structural(format!("maps {} and {} do not meet", i - 1, i)));
            }
            modules.push(f.target().clone());
        }
        for (i, w) in maps.windows(2).enumerate() {
            if !w[1].compose(&w[0]).map(|c| c.is_zero()).unwrap_or(false) {
                return Err(Error::NotAComplex { position: i + 1 });
            }
        }
        Ok(ChainComplex {
            modules,
            maps,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn modules(&self) -> &[Arc<Subquotient>] {
        &self.modules
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Index of the module with the given label.
    pub fn index_of(&self, label: i64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Homology at module index `i`.
    pub fn homology(&self, i: usize) -> Result<Subquotient> {
        if i >= self.modules.len() {
            return Err(Error::InvalidArgument(format!("no module at index {i}")));
        }
        match (i.checked_sub(1).map(|k| &self.maps[k]), self.maps.get(i)) {
            (Some(inc), Some(out)) => homology_at(inc, out),
            (Some(inc), None) => homology_at_end(inc),
            (None, Some(out)) => homology_at_start(out),
            (None, None) => unreachable!("complexes have at least one map"),
        }
    }

    /// Serializable description: labels, twists and matrices as strings.
    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            labels: self.labels.clone(),
            modules: self
                .modules
                .iter()
                .map(|m| ModuleJson {
                    ambient_twists: m.ambient().twists().to_vec(),
                    generators: m.generators().to_strings(),
                    relations: m.relations().to_strings(),
                })
                .collect(),
            maps: self.maps.iter().map(|f| f.matrix().to_strings()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleJson {
    pub ambient_twists: Vec<i64>,
    pub generators: Vec<Vec<String>>,
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexJson {
    pub labels: Vec<i64>,
    pub modules: Vec<ModuleJson>,
    pub maps: Vec<Vec<Vec<String>>>,
}
