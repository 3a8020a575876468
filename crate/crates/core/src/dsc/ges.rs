use std::fmt;
use std::sync::Arc;

use crate::bitset::EventSet;
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::ground::{EventId, Ground};

use super::{minimal_sets, PreDsc};

type Enabling = dyn Fn(&EventSet, EventId) -> bool + Send + Sync;

/// A conflict-free event structure given by an upward-closed enabling
/// predicate. The predicate is never materialized.
#[derive(Clone)]
pub struct GeneralEventStructure {
    ground: Ground,
    enabling: Arc<Enabling>,
}

impl fmt::Debug for GeneralEventStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralEventStructure")
            .field("ground", &self.ground)
            .finish_non_exhaustive()
    }
}

impl GeneralEventStructure {
    pub fn new<F>(ground: Ground, enabling: F) -> Self
    where
        F: Fn(&EventSet, EventId) -> bool + Send + Sync + 'static,
    {
        Self {
            ground,
            enabling: Arc::new(enabling),
        }
    }

    /// `X ⊢ e` iff some depset of `e` lies inside `X`.
    pub fn from_predsc(p: &PreDsc) -> Self {
        let q = p.clone();
        Self::new(p.ground().clone(), move |x, e| q.upward_closure_enabling_unchecked(x, e))
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn enables(&self, x: &EventSet, e: EventId) -> bool {
        (self.enabling)(x, e)
    }

    /// `dep(e)` = the minimal enabling sets of `e`.
    pub fn minimal_enablings(&self) -> Result<PreDsc> {
        self.minimal_enablings_with(&Settings::default())
    }

    pub fn minimal_enablings_with(&self, settings: &Settings) -> Result<PreDsc> {
        let n = self.ground.len();
        if n > settings.caps.enumeration {
            return Err(Error::cap("ground set", n, settings.caps.enumeration));
        }
        let ids: Vec<EventId> = self.ground.ids().collect();
        let dep = settings.map(&ids, |&e| {
            let enabled: Vec<EventSet> = (0..1u64 << n)
                .map(EventSet::from_mask)
                .filter(|x| self.enables(x, e))
                .collect();
            minimal_sets(enabled)
        });
        PreDsc::new(self.ground.clone(), dep)
    }
}

impl PreDsc {
    pub(crate) fn upward_closure_enabling_unchecked(&self, x: &EventSet, e: EventId) -> bool {
        self.dep(e).iter().any(|d| d.is_subset(x))
    }

    /// Whether `x` contains a depset of `e`.
    pub fn upward_closure_enabling(&self, x: &EventSet, e: EventId) -> Result<bool> {
        self.ground().check(x)?;
        self.ground().check_id(e)?;
        Ok(self.upward_closure_enabling_unchecked(x, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_enabling_examples() {
        let g = Ground::new(["a", "b", "c"]).unwrap();
        let ges = GeneralEventStructure::new(g.clone(), |x, e| {
            e.0 != 0 || x.contains(1) || x.contains(2)
        });
        let p = ges.minimal_enablings().unwrap();
        assert_eq!(p.to_string(), "a: b | c; b; c");
        assert!(p.is_irredundant());

        let always = GeneralEventStructure::new(g.clone(), |_, _| true);
        assert_eq!(always.minimal_enablings().unwrap().to_string(), "a; b; c");
        let never = GeneralEventStructure::new(g, |_, _| false);
        assert_eq!(never.minimal_enablings().unwrap().to_string(), "a:; b:; c:");
    }

    #[test]
    fn upward_closure_examples() {
        let p: PreDsc = "a: b | c; b; c".parse().unwrap();
        let a = p.id("a").unwrap();
        let b = p.id("b").unwrap();
        assert!(p.upward_closure_enabling(&p.set(&["b", "c"]).unwrap(), a).unwrap());
        assert!(!p.upward_closure_enabling(&EventSet::new(), a).unwrap());
        assert!(p.upward_closure_enabling(&p.set(&["b"]).unwrap(), b).unwrap());
        let back = GeneralEventStructure::from_predsc(&p).minimal_enablings().unwrap();
        assert_eq!(back, p);
    }
}
