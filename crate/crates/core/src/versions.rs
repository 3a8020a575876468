//! The higher-version relation `◂` and the closure operators it induces on
//! `rdp(d)` and on its Bruns-Lakser completion.

use serde::Serialize;

use crate::bitset::EventSet;
use crate::completion::{bruns_lakser_with, DistributiveLatticeView};
use crate::dsc::Dsc;
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::ground::EventId;
use crate::lattice::SetLattice;

/// Why `e ◂ e'` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum VersionFailure {
    /// A depset of `e` that `e'` lacks.
    MissingDepset(Vec<String>),
    /// `D ∈ dep(x)` contains `e` but the swapped set is not a depset of `x`.
    NoSwap { event: String, depset: Vec<String> },
}

pub fn version_failure(d: &Dsc, e: EventId, e2: EventId) -> Result<Option<VersionFailure>> {
    d.ground().check_id(e)?;
    d.ground().check_id(e2)?;
    let names = |s: &EventSet| d.ground().names(s);
    if let Some(missing) = d.dep(e).iter().find(|s| !d.dep(e2).contains(s)) {
        return Ok(Some(VersionFailure::MissingDepset(names(missing))));
    }
    for x in d.ground().ids() {
        for s in d.dep(x).iter().filter(|s| s.contains(e.0)) {
            let swapped = s.without(e.0).with(e2.0);
            if !d.dep(x).contains(&swapped) {
                return Ok(Some(VersionFailure::NoSwap {
                    event: d.label(x).to_string(),
                    depset: names(s),
                }));
            }
        }
    }
    Ok(None)
}

/// `e ◂ e'`: `dep(e) ⊆ dep(e')` and every depset using `e` also works with
/// `e'` in its place.
pub fn higher_version(d: &Dsc, e: EventId, e2: EventId) -> Result<bool> {
    Ok(version_failure(d, e, e2)?.is_none())
}

/// `Vers(e) = {e' : e ◂ e'}`.
pub fn vers(d: &Dsc, e: EventId) -> Result<EventSet> {
    d.ground().check_id(e)?;
    let mut out = EventSet::new();
    for e2 in d.ground().ids() {
        if higher_version(d, e, e2)? {
            out.insert(e2.0);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VersionRelation {
    /// `vers[e]` is `Vers(e)`.
    vers: Vec<EventSet>,
}

impl VersionRelation {
    pub fn new(d: &Dsc) -> Result<Self> {
        Ok(Self {
            vers: d.ground().ids().map(|e| vers(d, e)).collect::<Result<_>>()?,
        })
    }

    pub fn holds(&self, e: usize, e2: usize) -> bool {
        self.vers[e].contains(e2)
    }

    pub fn vers(&self, e: usize) -> &EventSet {
        &self.vers[e]
    }

    /// Pairs `(e, e')` with `e ≠ e'`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vers
            .iter()
            .enumerate()
            .flat_map(|(e, v)| v.iter().filter(move |&f| f != e).map(move |f| (e, f)))
            .collect()
    }

    pub fn reflexivity_failure(&self) -> Option<usize> {
        (0..self.vers.len()).find(|&e| !self.holds(e, e))
    }

    pub fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        for (x, y) in self.edges() {
            for z in self.vers[y].iter() {
                if !self.holds(x, z) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    /// Classes of mutual `◂`, each sorted, ordered by smallest member.
    pub fn equivalence_classes(&self) -> Vec<EventSet> {
        let mut seen = EventSet::new();
        let mut out = Vec::new();
        for e in 0..self.vers.len() {
            if seen.contains(e) {
                continue;
            }
            let class: EventSet = self.vers[e].iter().filter(|&f| self.holds(f, e)).collect();
            seen.union_with(&class);
            out.push(class);
        }
        out
    }
}

/// `V` on `rdp(d)` and bold `V` on `BL(rdp(d))`, with everything they need
/// computed once.
#[derive(Clone, Debug)]
pub struct VersionClosure {
    relation: VersionRelation,
    rdp: SetLattice,
    bl: DistributiveLatticeView,
}

impl VersionClosure {
    pub fn new(d: &Dsc) -> Result<Self> {
        Self::new_with(d, &Settings::default())
    }

    pub fn new_with(d: &Dsc, settings: &Settings) -> Result<Self> {
        let rdp = d.rdp_with(settings)?;
        let bl = bruns_lakser_with(rdp.lattice(), settings)?;
        Ok(Self {
            relation: VersionRelation::new(d)?,
            rdp,
            bl,
        })
    }

    pub fn relation(&self) -> &VersionRelation {
        &self.relation
    }

    pub fn rdp(&self) -> &SetLattice {
        &self.rdp
    }

    pub fn bl(&self) -> &DistributiveLatticeView {
        &self.bl
    }

    /// `V(X) = ⋃_{x ∈ X} Vers(x)`.
    pub fn v(&self, x: &EventSet) -> Result<EventSet> {
        if !self.rdp.contains(x) {
            return Err(Error::Contract(format!("{} is not complete", self.rdp.render(x))));
        }
        Ok(x.iter().fold(EventSet::new(), |acc, e| acc.union(self.relation.vers(e))))
    }

    fn embedded_v(&self, x: usize) -> Result<&EventSet> {
        let vx = self.v(self.rdp.set(x))?;
        let i = self
            .rdp
            .index_of(&vx)
            .ok_or_else(|| Error::Contract(format!("V gave {}, which is not complete", self.rdp.render(&vx))))?;
        Ok(self.bl.embed(i))
    }

    fn check_bl(&self, s: &EventSet) -> Result<()> {
        if self.bl.base.contains(s) {
            Ok(())
        } else {
            Err(Error::Contract(format!("{} is not a downset of join-irreducibles", self.bl.render(s))))
        }
    }

    /// Bold `V(S) = ⋃_{j ∈ S} φ_L(V(j))` over the join-irreducibles in `S`.
    pub fn v_bl(&self, s: &EventSet) -> Result<EventSet> {
        self.check_bl(s)?;
        let mut out = EventSet::new();
        for j in self.bl.members(s) {
            out.union_with(self.embedded_v(j)?);
        }
        Ok(out)
    }

    /// The same union taken over every lattice element `x` with
    /// `φ_L(x) ⊆ S`.
    pub fn v_bl_all_members(&self, s: &EventSet) -> Result<EventSet> {
        self.check_bl(s)?;
        let mut out = EventSet::new();
        for x in 0..self.rdp.len() {
            if self.bl.embed(x).is_subset(s) {
                out.union_with(self.embedded_v(x)?);
            }
        }
        Ok(out)
    }
}

/// One-shot `V(x)`; errors unless `x` is complete.
pub fn v_closure(d: &Dsc, x: &EventSet) -> Result<EventSet> {
    d.ground().check(x)?;
    if !d.is_complete(x)? {
        return Err(Error::Contract(format!("{} is not complete", d.render(x))));
    }
    x.iter().try_fold(EventSet::new(), |acc, e| Ok(acc.union(&vers(d, EventId(e))?)))
}

/// One-shot bold `V(s)` for a downset `s` of `J(rdp(d))`.
pub fn v_closure_bl(d: &Dsc, s: &EventSet) -> Result<EventSet> {
    VersionClosure::new(d)?.v_bl(s)
}
