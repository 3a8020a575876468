use std::collections::{HashMap, HashSet};

use crate::bitset::EventSet;
use crate::error::{Error, Result};
use crate::exec::Settings;

use super::finite::FiniteLattice;
use super::poset::FinitePoset;

/// A lattice of subsets of a labelled ground set, ordered by inclusion.
///
/// Elements are sorted by cardinality, then lexicographically, so element 0
/// is the least set.
#[derive(Clone, Debug)]
pub struct SetLattice {
    ground: Vec<String>,
    sets: Vec<EventSet>,
    index: HashMap<EventSet, usize>,
    lattice: FiniteLattice,
}

impl SetLattice {
    pub fn new(ground: Vec<String>, sets: Vec<EventSet>) -> Result<Self> {
        Self::new_with(ground, sets, &Settings::default())
    }

    /// Sorts and deduplicates `sets`; fails unless inclusion makes them a lattice.
    pub fn new_with(ground: Vec<String>, mut sets: Vec<EventSet>, settings: &Settings) -> Result<Self> {
        if sets.len() > settings.caps.lattice {
            return Err(Error::cap("lattice", sets.len(), settings.caps.lattice));
        }
        sets.sort_by(EventSet::graded_cmp);
        sets.dedup();
        let labels = sets.iter().map(|s| render(&ground, s)).collect();
        let rows: Vec<usize> = (0..sets.len()).collect();
        let up = settings.map(&rows, |&i| {
            (i..sets.len())
                .filter(|&j| sets[i].is_subset(&sets[j]))
                .collect::<EventSet>()
        });
        let poset = FinitePoset::from_up_sets(labels, up)?;
        let lattice = FiniteLattice::from_poset_with(poset, settings)?;
        let index = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(Self {
            ground,
            sets,
            index,
            lattice,
        })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> FiniteLattice {
        self.lattice
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn sets(&self) -> &[EventSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, i: usize) -> &EventSet {
        &self.sets[i]
    }

    pub fn index_of(&self, s: &EventSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &EventSet) -> bool {
        self.index.contains_key(s)
    }

    pub fn render(&self, s: &EventSet) -> String {
        render(&self.ground, s)
    }

    /// Join in the lattice, by set.
    pub fn join_sets(&self, a: &EventSet, b: &EventSet) -> Option<&EventSet> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Some(&self.sets[self.lattice.join(i, j)])
    }

    pub fn meet_sets(&self, a: &EventSet, b: &EventSet) -> Option<&EventSet> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Some(&self.sets[self.lattice.meet(i, j)])
    }

    pub fn is_union_closed(&self) -> bool {
        (0..self.len()).all(|i| {
            (i..self.len()).all(|j| self.sets[self.lattice.join(i, j)] == self.sets[i].union(&self.sets[j]))
        })
    }

    pub fn is_intersection_closed(&self) -> bool {
        (0..self.len()).all(|i| {
            (i..self.len())
                .all(|j| self.sets[self.lattice.meet(i, j)] == self.sets[i].intersection(&self.sets[j]))
        })
    }
}

fn render(ground: &[String], s: &EventSet) -> String {
    let names: Vec<&str> = s.iter().map(|i| ground[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

/// All down-closed subsets of `p` under inclusion.
pub fn downsets(p: &FinitePoset) -> Result<SetLattice> {
    downsets_with(p, &Settings::default())
}

pub fn downsets_with(p: &FinitePoset, settings: &Settings) -> Result<SetLattice> {
    let sets = downset_family(p, settings.caps.lattice)?;
    SetLattice::new_with(p.labels().to_vec(), sets, settings)
}

/// Grows downsets from `∅` by adding one element whose strict down-set is
/// already present; every downset arises this way.
pub(crate) fn downset_family(p: &FinitePoset, cap: usize) -> Result<Vec<EventSet>> {
    let strict: Vec<EventSet> = (0..p.len()).map(|x| p.down_set(x).without(x)).collect();
    let mut seen: HashSet<EventSet> = HashSet::new();
    let mut frontier = vec![EventSet::new()];
    seen.insert(EventSet::new());
    while let Some(s) = frontier.pop() {
        for (x, below) in strict.iter().enumerate() {
            if !s.contains(x) && below.is_subset(&s) {
                let t = s.with(x);
                if seen.insert(t.clone()) {
                    if seen.len() > cap {
                        return Err(Error::cap("downset lattice", seen.len(), cap));
                    }
                    frontier.push(t);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}
