//! Maps between DSCs and their classification.
//!
//! A ground map `f: E → E'` is a morphism when every depset of `f(e)` pulls
//! back (together with `f(e)`) around some depset of `e`, and a comorphism
//! when every depset of `e` pushes forward (together with `e`) around some
//! depset of `f(e)`. Each condition is also decided a second way, by checking
//! that `f*` (resp. `f_*`) sends complete sets to complete sets.

mod enumerate;
mod lattice_map;
mod map;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::bitset::EventSet;
use crate::dsc::Dsc;
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::ground::EventId;

pub use enumerate::{enumerate_morphisms, enumerate_morphisms_with, MorphismClass};
pub use lattice_map::LatticeMap;
pub use map::{GroundMap, MapJson};

/// Why a map fails a class: an event and the depset with no partner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapWitness {
    pub event: String,
    pub depset: Vec<String>,
}

impl fmt::Display for MapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with depset {{{}}}", self.event, self.depset.join(","))
    }
}

/// First `(e, D')` with `D' ∈ dep'(f(e))` and no `D ∈ dep(e)` inside
/// `f*(D' ∪ {f(e)})`.
pub fn morphism_witness(source: &Dsc, target: &Dsc, f: &GroundMap) -> Option<(EventId, EventSet)> {
    source.ground().ids().find_map(|e| morphism_failure_at(source, target, f.images(), e.0))
}

pub(crate) fn morphism_failure_at(
    source: &Dsc,
    target: &Dsc,
    images: &[usize],
    e: usize,
) -> Option<(EventId, EventSet)> {
    let fe = images[e];
    target.deps()[fe].iter().find_map(|dt| {
        let ok = source.deps()[e]
            .iter()
            .any(|d| d.iter().all(|x| images[x] == fe || dt.contains(images[x])));
        (!ok).then(|| (EventId(e), dt.clone()))
    })
}

/// First `(e, D)` with `D ∈ dep(e)` and no `D' ∈ dep'(f(e))` inside
/// `f_*(D ∪ {e})`.
pub fn comorphism_witness(source: &Dsc, target: &Dsc, f: &GroundMap) -> Option<(EventId, EventSet)> {
    source.ground().ids().find_map(|e| comorphism_failure_at(source, target, f.images(), e.0))
}

pub(crate) fn comorphism_failure_at(
    source: &Dsc,
    target: &Dsc,
    images: &[usize],
    e: usize,
) -> Option<(EventId, EventSet)> {
    let fe = images[e];
    source.deps()[e].iter().find_map(|d| {
        let pushed: EventSet = d.iter().map(|x| images[x]).chain([fe]).collect();
        let ok = target.deps()[fe].iter().any(|dt| dt.is_subset(&pushed));
        (!ok).then(|| (EventId(e), d.clone()))
    })
}

/// A complete set of `target` whose preimage is not complete.
pub fn preimage_completeness_witness(
    source: &Dsc,
    target: &Dsc,
    f: &GroundMap,
    settings: &Settings,
) -> Result<Option<EventSet>> {
    let sets = target.complete_sets_with(settings)?;
    Ok(settings.find_map(&sets, |y| {
        (!source.complete_unchecked(&f.preimage(y))).then(|| y.clone())
    }))
}

/// A complete set of `source` whose image is not complete.
pub fn image_completeness_witness(
    source: &Dsc,
    target: &Dsc,
    f: &GroundMap,
    settings: &Settings,
) -> Result<Option<EventSet>> {
    let sets = source.complete_sets_with(settings)?;
    Ok(settings.find_map(&sets, |x| {
        (!target.complete_unchecked(&f.image(x))).then(|| x.clone())
    }))
}

/// A ground map between two DSCs with its classification.
///
/// The definitional morphism and comorphism verdicts are computed when the
/// value is built; distributive preservation needs both lattices and is
/// computed on first request.
#[derive(Clone)]
pub struct DscMorphism {
    source: Arc<Dsc>,
    target: Arc<Dsc>,
    map: GroundMap,
    morphism: Option<MapWitness>,
    comorphism: Option<MapWitness>,
    distributive_preserving: OnceLock<bool>,
}

impl fmt::Debug for DscMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DscMorphism")
            .field("map", &self.map)
            .field("morphism", &self.morphism.is_none())
            .field("comorphism", &self.comorphism.is_none())
            .finish()
    }
}

impl PartialEq for DscMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.map == other.map
    }
}

impl Eq for DscMorphism {}

impl DscMorphism {
    pub fn new(source: impl Into<Arc<Dsc>>, target: impl Into<Arc<Dsc>>, map: GroundMap) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        if map.source_len() != source.len() || map.target_len() != target.len() {
            return Err(Error::Domain(format!(
                "map of shape {}→{} between DSCs of sizes {} and {}",
                map.source_len(),
                map.target_len(),
                source.len(),
                target.len()
            )));
        }
        let morphism = morphism_witness(&source, &target, &map).map(|(e, d)| MapWitness {
            event: source.label(e).to_string(),
            depset: target.ground().names(&d),
        });
        let comorphism = comorphism_witness(&source, &target, &map).map(|(e, d)| MapWitness {
            event: source.label(e).to_string(),
            depset: source.ground().names(&d),
        });
        Ok(Self {
            source,
            target,
            map,
            morphism,
            comorphism,
            distributive_preserving: OnceLock::new(),
        })
    }

    /// Builds the map from `(source label, target label)` pairs.
    pub fn from_labels<S: AsRef<str>>(
        source: impl Into<Arc<Dsc>>,
        target: impl Into<Arc<Dsc>>,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        let map = GroundMap::from_labels(source.ground(), target.ground(), pairs)?;
        Self::new(source, target, map)
    }

    pub fn identity(d: impl Into<Arc<Dsc>>) -> Self {
        let d = d.into();
        let n = d.len();
        Self::new(d.clone(), d, GroundMap::identity(n)).expect("identity has the right shape")
    }

    pub fn source(&self) -> &Arc<Dsc> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Dsc> {
        &self.target
    }

    pub fn map(&self) -> &GroundMap {
        &self.map
    }

    pub fn apply(&self, e: EventId) -> EventId {
        EventId(self.map.apply(e.0))
    }

    pub fn is_morphism(&self) -> bool {
        self.morphism.is_none()
    }

    pub fn morphism_failure(&self) -> Option<&MapWitness> {
        self.morphism.as_ref()
    }

    pub fn is_comorphism(&self) -> bool {
        self.comorphism.is_none()
    }

    pub fn comorphism_failure(&self) -> Option<&MapWitness> {
        self.comorphism.as_ref()
    }

    pub fn is_bimorphism(&self) -> bool {
        self.is_morphism() && self.is_comorphism()
    }

    /// The morphism verdict recomputed through complete-set preservation.
    pub fn preserves_complete_preimages(&self, settings: &Settings) -> Result<bool> {
        Ok(preimage_completeness_witness(&self.source, &self.target, &self.map, settings)?.is_none())
    }

    /// The comorphism verdict recomputed through complete-set preservation.
    pub fn preserves_complete_images(&self, settings: &Settings) -> Result<bool> {
        Ok(image_completeness_witness(&self.source, &self.target, &self.map, settings)?.is_none())
    }

    /// Runs both routes for both classes; disagreement is a contract error.
    pub fn verify(&self, settings: &Settings) -> Result<()> {
        let by_sets = self.preserves_complete_preimages(settings)?;
        if by_sets != self.is_morphism() {
            return Err(Error::Contract(format!(
                "morphism verdicts disagree: definition {}, complete sets {}",
                self.is_morphism(),
                by_sets
            )));
        }
        let by_sets = self.preserves_complete_images(settings)?;
        if by_sets != self.is_comorphism() {
            return Err(Error::Contract(format!(
                "comorphism verdicts disagree: definition {}, complete sets {}",
                self.is_comorphism(),
                by_sets
            )));
        }
        Ok(())
    }

    /// A bimorphism whose `f*: rdp(target) → rdp(source)` is onto.
    pub fn is_distributive_preserving(&self) -> Result<bool> {
        self.is_distributive_preserving_with(&Settings::default())
    }

    pub fn is_distributive_preserving_with(&self, settings: &Settings) -> Result<bool> {
        if let Some(&v) = self.distributive_preserving.get() {
            return Ok(v);
        }
        let v = self.is_bimorphism() && self.preimage_is_onto(settings)?;
        let _ = self.distributive_preserving.set(v);
        Ok(v)
    }

    fn preimage_is_onto(&self, settings: &Settings) -> Result<bool> {
        let mut hit: Vec<EventSet> = self
            .target
            .complete_sets_with(settings)?
            .iter()
            .map(|y| self.map.preimage(y))
            .collect();
        hit.sort();
        hit.dedup();
        let mut all = self.source.complete_sets_with(settings)?;
        all.sort();
        Ok(hit == all)
    }

    /// Injective ground map. Requires a morphism.
    pub fn is_mono(&self) -> Result<bool> {
        self.require_morphism("is_mono")?;
        Ok(self.map.is_injective())
    }

    /// Surjective ground map. Requires a morphism.
    pub fn is_epi(&self) -> Result<bool> {
        self.require_morphism("is_epi")?;
        Ok(self.map.is_surjective())
    }

    pub(crate) fn require_morphism(&self, what: &str) -> Result<()> {
        match &self.morphism {
            None => Ok(()),
            Some(w) => Err(Error::Contract(format!("{what} needs a morphism; fails at {w}"))),
        }
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &DscMorphism) -> Result<DscMorphism> {
        if self.target != then.source {
            return Err(Error::Domain("morphisms do not compose".into()));
        }
        DscMorphism::new(self.source.clone(), then.target.clone(), self.map.then(&then.map)?)
    }

    /// `X ↦ f*(X)` from `rdp(target)` to `rdp(source)`.
    pub fn induced_preimage_map(&self) -> Result<LatticeMap> {
        self.require_morphism("induced_preimage_map")?;
        let domain = self.target.rdp()?;
        let codomain = self.source.rdp()?;
        LatticeMap::from_fn(domain, codomain, |y| self.map.preimage(y))
    }

    /// `X ↦ f_*(X)` from `rdp(source)` to `rdp(target)`.
    pub fn induced_image_map(&self) -> Result<LatticeMap> {
        if let Some(w) = &self.comorphism {
            return Err(Error::Contract(format!(
                "induced_image_map needs a comorphism; fails at {w}"
            )));
        }
        let domain = self.source.rdp()?;
        let codomain = self.target.rdp()?;
        LatticeMap::from_fn(domain, codomain, |x| self.map.image(x))
    }

    pub fn to_json(&self) -> MapJson {
        self.map.to_json(self.source.ground(), self.target.ground())
    }

    pub fn classification(&self) -> Result<Classification> {
        Ok(Classification {
            morphism: self.is_morphism(),
            comorphism: self.is_comorphism(),
            bimorphism: self.is_bimorphism(),
            distributive_preserving: self.is_distributive_preserving()?,
            injective: self.map.is_injective(),
            surjective: self.map.is_surjective(),
            morphism_failure: self.morphism.clone(),
            comorphism_failure: self.comorphism.clone(),
        })
    }
}

/// Every class flag of a map, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub morphism: bool,
    pub comorphism: bool,
    pub bimorphism: bool,
    pub distributive_preserving: bool,
    pub injective: bool,
    pub surjective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morphism_failure: Option<MapWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comorphism_failure: Option<MapWitness>,
}
