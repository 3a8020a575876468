use std::sync::Arc;

use crate::dsc::Dsc;
use crate::error::{Error, Result};
use crate::exec::Settings;

use super::{comorphism_failure_at, morphism_failure_at, DscMorphism, GroundMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismClass {
    /// Every total ground map.
    All,
    Morphism,
    Comorphism,
    Bimorphism,
    DistributivePreserving,
}

impl MorphismClass {
    fn needs_morphism(self) -> bool {
        matches!(self, Self::Morphism | Self::Bimorphism | Self::DistributivePreserving)
    }

    fn needs_comorphism(self) -> bool {
        matches!(self, Self::Comorphism | Self::Bimorphism | Self::DistributivePreserving)
    }
}

/// All maps `source → target` in `class`, in lexicographic order of images.
pub fn enumerate_morphisms(
    source: &Arc<Dsc>,
    target: &Arc<Dsc>,
    class: MorphismClass,
) -> Result<Vec<DscMorphism>> {
    enumerate_morphisms_with(source, target, class, &Settings::default())
}

/// Depth-first over events in label order. Each event's condition is
/// checked as soon as it and every member of its depsets have an image.
pub fn enumerate_morphisms_with(
    source: &Arc<Dsc>,
    target: &Arc<Dsc>,
    class: MorphismClass,
    settings: &Settings,
) -> Result<Vec<DscMorphism>> {
    let (n, m) = (source.len(), target.len());
    let candidates = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if candidates > settings.caps.morphisms {
        return Err(Error::cap(
            "morphism candidate space",
            candidates.min(usize::MAX as u64) as usize,
            settings.caps.morphisms as usize,
        ));
    }
    let maps: Vec<Vec<usize>> = if n == 0 {
        vec![Vec::new()]
    } else {
        let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in 0..n {
            let last = source.deps()[e]
                .iter()
                .filter_map(|d| d.iter().last())
                .fold(e, usize::max);
            checks[last].push(e);
        }
        let search = Search {
            source,
            target,
            class,
            checks: &checks,
        };
        let firsts: Vec<usize> = (0..m).collect();
        settings
            .map(&firsts, |&y| {
                let mut images = vec![0; n];
                images[0] = y;
                let mut out = Vec::new();
                if search.ok_at(0, &images) {
                    search.dfs(1, &mut images, &mut out);
                }
                out
            })
            .into_iter()
            .flatten()
            .collect()
    };
    let mut result = Vec::with_capacity(maps.len());
    for images in maps {
        let f = DscMorphism::new(source.clone(), target.clone(), GroundMap::new(images, m)?)?;
        if class != MorphismClass::DistributivePreserving || f.is_distributive_preserving_with(settings)? {
            result.push(f);
        }
    }
    Ok(result)
}

struct Search<'a> {
    source: &'a Dsc,
    target: &'a Dsc,
    class: MorphismClass,
    checks: &'a [Vec<usize>],
}

impl Search<'_> {
    fn ok_at(&self, k: usize, images: &[usize]) -> bool {
        self.checks[k].iter().all(|&e| {
            (!self.class.needs_morphism()
                || morphism_failure_at(self.source, self.target, images, e).is_none())
                && (!self.class.needs_comorphism()
                    || comorphism_failure_at(self.source, self.target, images, e).is_none())
        })
    }

    fn dfs(&self, k: usize, images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == images.len() {
            out.push(images.clone());
            return;
        }
        for y in 0..self.target.len() {
            images[k] = y;
            if self.ok_at(k, images) {
                self.dfs(k + 1, images, out);
            }
        }
    }
}
