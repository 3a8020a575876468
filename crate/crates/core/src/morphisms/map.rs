use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitset::EventSet;
use crate::error::{Error, Result};
use crate::ground::{EventId, Ground};

/// A total function between two ground sets, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundMap {
    images: Vec<usize>,
    target_len: usize,
}

impl GroundMap {
    pub fn new(images: Vec<usize>, target_len: usize) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&y| y >= target_len) {
            return Err(Error::Domain(format!(
                "image {bad} outside a target of {target_len} events"
            )));
        }
        Ok(Self { images, target_len })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
            target_len: n,
        }
    }

    /// Every source element sent to `y`.
    pub fn constant(source_len: usize, y: usize, target_len: usize) -> Result<Self> {
        Self::new(vec![y; source_len], target_len)
    }

    /// Builds from label pairs; every source label must appear exactly once.
    pub fn from_labels<S: AsRef<str>>(source: &Ground, target: &Ground, pairs: &[(S, S)]) -> Result<Self> {
        let mut images = vec![None; source.len()];
        for (x, y) in pairs {
            let x = source.id(x.as_ref())?;
            let y = target.id(y.as_ref())?;
            if images[x.0].replace(y.0).is_some() {
                return Err(Error::Parse(format!("`{}` mapped twice", source.label(x))));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| Error::Parse(format!("`{}` is not mapped", source.label(EventId(i)))))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images, target.len())
    }

    pub fn source_len(&self) -> usize {
        self.images.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `f*(Y) = {x : f(x) ∈ Y}`.
    pub fn preimage(&self, y: &EventSet) -> EventSet {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, &fx)| y.contains(fx))
            .map(|(x, _)| x)
            .collect()
    }

    /// `f_*(X) = {f(x) : x ∈ X}`.
    pub fn image(&self, x: &EventSet) -> EventSet {
        x.iter().map(|i| self.images[i]).collect()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &GroundMap) -> Result<GroundMap> {
        if self.target_len != then.source_len() {
            return Err(Error::Domain("maps do not compose".into()));
        }
        Ok(GroundMap {
            images: self.images.iter().map(|&y| then.images[y]).collect(),
            target_len: then.target_len,
        })
    }

    pub fn is_injective(&self) -> bool {
        let img: EventSet = self.images.iter().copied().collect();
        img.len() == self.images.len()
    }

    pub fn is_surjective(&self) -> bool {
        let img: EventSet = self.images.iter().copied().collect();
        img.len() == self.target_len
    }

    pub fn to_json(&self, source: &Ground, target: &Ground) -> MapJson {
        MapJson {
            source: None,
            target: None,
            map: self
                .images
                .iter()
                .enumerate()
                .map(|(x, &y)| {
                    (
                        source.label(EventId(x)).to_string(),
                        target.label(EventId(y)).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_json(j: &MapJson, source: &Ground, target: &Ground) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = j.map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Self::from_labels(source, target, &pairs)
    }
}

/// `{"map": {"a": "r", ...}}`, optionally naming the source and target files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub map: BTreeMap<String, String>,
}
