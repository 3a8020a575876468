use std::collections::HashSet;

use crate::bitset::{masks, EventSet};
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::ground::EventId;
use crate::lattice::SetLattice;

use super::{minimal_sets, PreDsc};

impl PreDsc {
    pub(crate) fn complete_unchecked(&self, x: &EventSet) -> bool {
        x.iter()
            .all(|e| self.deps()[e].iter().any(|d| d.is_subset(x)))
    }

    /// Every member of `x` has a depset inside `x`.
    pub fn is_complete(&self, x: &EventSet) -> Result<bool> {
        self.ground().check(x)?;
        Ok(self.complete_unchecked(x))
    }

    /// `x ⊆ y` and every member of `y` has a depset inside `x`.
    pub fn rch(&self, x: &EventSet, y: &EventSet) -> Result<bool> {
        self.ground().check(x)?;
        self.ground().check(y)?;
        Ok(x.is_subset(y)
            && y
                .iter()
                .all(|e| self.deps()[e].iter().any(|d| d.is_subset(x))))
    }

    /// Reachable from `∅` by a chain of `rch` steps; coincides with
    /// completeness on DSCs.
    pub fn is_reachable(&self, x: &EventSet) -> Result<bool> {
        Ok(self.reachability_chain(x)?.is_some())
    }

    /// A chain `∅ = X₀, X₁, …, Xₙ = x` with `rch(Xᵢ, Xᵢ₊₁)`, built by
    /// repeatedly removing the smallest-labelled element that leaves a
    /// complete set. `None` when `x` is not complete.
    pub fn reachability_chain(&self, x: &EventSet) -> Result<Option<Vec<EventSet>>> {
        if !self.is_complete(x)? {
            return Ok(None);
        }
        let mut chain = vec![x.clone()];
        let mut current = x.clone();
        while !current.is_empty() {
            let next = current
                .iter()
                .map(|a| current.without(a))
                .find(|s| self.complete_unchecked(s));
            match next {
                Some(s) => {
                    chain.push(s.clone());
                    current = s;
                }
                // Cannot happen on a DSC; a preDSC may get stuck.
                None => return Ok(None),
            }
        }
        chain.reverse();
        Ok(Some(chain))
    }

    /// All complete subsets of the ground set, in graded order.
    pub fn complete_sets(&self) -> Result<Vec<EventSet>> {
        self.complete_sets_with(&Settings::default())
    }

    /// Power-set scan up to the scan threshold; above it, union-closure of
    /// the e-minimal complete sets.
    pub fn complete_sets_with(&self, settings: &Settings) -> Result<Vec<EventSet>> {
        let n = self.len();
        if n > settings.caps.enumeration {
            return Err(Error::cap("ground set", n, settings.caps.enumeration));
        }
        let mut sets = if n <= settings.caps.scan_threshold {
            let dep: Vec<Vec<u64>> = self
                .deps()
                .iter()
                .map(|f| f.iter().map(|d| d.as_mask().expect("small ground")).collect())
                .collect();
            let found = settings.filter_range(masks(n).end, |m| {
                let mut rest = m;
                while rest != 0 {
                    let e = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if !dep[e].iter().any(|d| d & !m == 0) {
                        return None;
                    }
                }
                Some(EventSet::from_mask(m))
            });
            if found.len() > settings.caps.lattice {
                return Err(Error::cap("complete-set family", found.len(), settings.caps.lattice));
            }
            found
        } else {
            self.union_closure(settings.caps.lattice)?
        };
        sets.sort_by(EventSet::graded_cmp);
        Ok(sets)
    }

    fn union_closure(&self, cap: usize) -> Result<Vec<EventSet>> {
        let generators = self.e_minimal_sets_all();
        let mut seen: HashSet<EventSet> = HashSet::new();
        seen.insert(EventSet::new());
        let mut frontier = vec![EventSet::new()];
        while let Some(s) = frontier.pop() {
            for g in &generators {
                if g.is_subset(&s) {
                    continue;
                }
                let t = s.union(g);
                if seen.insert(t.clone()) {
                    if seen.len() > cap {
                        return Err(Error::cap("complete-set family", seen.len(), cap));
                    }
                    frontier.push(t);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// The reachable dependency lattice: complete sets under inclusion.
    pub fn rdp(&self) -> Result<SetLattice> {
        self.rdp_with(&Settings::default())
    }

    pub fn rdp_with(&self, settings: &Settings) -> Result<SetLattice> {
        let sets = self.complete_sets_with(settings)?;
        SetLattice::new_with(self.ground().labels().to_vec(), sets, settings)
    }

    /// The largest complete subset of `a ∩ b`: members of `a ∩ b` with a
    /// depset inside `a ∩ b`.
    pub fn meet(&self, a: &EventSet, b: &EventSet) -> Result<EventSet> {
        for x in [a, b] {
            if !self.is_complete(x)? {
                return Err(Error::Domain(format!("{} is not complete", self.render(x))));
            }
        }
        let both = a.intersection(b);
        Ok(both
            .iter()
            .filter(|&x| self.deps()[x].iter().any(|d| d.is_subset(&both)))
            .collect())
    }

    /// `{D ∪ {e} : D ∈ dep(e)}`.
    pub fn e_minimal_complete_sets(&self, e: EventId) -> Result<Vec<EventSet>> {
        self.ground().check_id(e)?;
        let mut sets: Vec<EventSet> = self.dep(e).iter().map(|d| d.with(e.0)).collect();
        sets.sort();
        Ok(sets)
    }

    fn e_minimal_sets_all(&self) -> Vec<EventSet> {
        let mut all: Vec<EventSet> = self
            .ground()
            .ids()
            .flat_map(|e| self.dep(e).iter().map(move |d| d.with(e.0)))
            .collect();
        all.sort_by(EventSet::graded_cmp);
        all.dedup();
        all
    }

    /// Join-irreducible elements of the rdp, in graded order.
    pub fn join_irreducibles_of_rdp(&self) -> Vec<EventSet> {
        self.e_minimal_sets_all()
    }

    /// Inclusion-minimal complete sets containing `e`, by exhaustive search.
    /// Test-oriented; prefer [`PreDsc::e_minimal_complete_sets`].
    pub fn e_minimal_complete_sets_brute(&self, e: EventId) -> Result<Vec<EventSet>> {
        self.ground().check_id(e)?;
        let with_e: Vec<EventSet> = self
            .complete_sets()?
            .into_iter()
            .filter(|s| s.contains(e.0))
            .collect();
        Ok(minimal_sets(with_e))
    }
}

#[cfg(test)]
mod tests {
    use crate::dsc::Dsc;

    use super::*;

    fn e1() -> Dsc {
        "a: b | c; b; c".parse().unwrap()
    }

    fn e2() -> Dsc {
        "a: b,c; b; c".parse().unwrap()
    }

    fn e3() -> Dsc {
        "a: b; b; c: b".parse().unwrap()
    }

    fn s(d: &Dsc, labels: &[&str]) -> EventSet {
        d.set(labels).unwrap()
    }

    #[test]
    fn completeness_examples() {
        let d = e1();
        assert!(d.is_complete(&s(&d, &["a", "b"])).unwrap());
        assert!(!d.is_complete(&s(&d, &["a"])).unwrap());
        assert!(d.is_complete(&EventSet::new()).unwrap());
        assert!(!e2().is_complete(&s(&e2(), &["a", "b"])).unwrap());
        assert!(matches!(d.is_complete(&EventSet::singleton(7)), Err(Error::Domain(_))));
    }

    #[test]
    fn rch_examples() {
        let d = e1();
        assert!(d.rch(&s(&d, &["b"]), &s(&d, &["a", "b"])).unwrap());
        assert!(!d.rch(&s(&d, &["a", "b"]), &s(&d, &["b"])).unwrap());
        assert!(d.rch(&EventSet::new(), &s(&d, &["b", "c"])).unwrap());
    }

    #[test]
    fn chains_are_rch_steps() {
        let d = e1();
        let top = s(&d, &["a", "b", "c"]);
        let chain = d.reachability_chain(&top).unwrap().unwrap();
        assert_eq!(chain.first(), Some(&EventSet::new()));
        assert_eq!(chain.last(), Some(&top));
        for w in chain.windows(2) {
            assert!(d.rch(&w[0], &w[1]).unwrap());
            assert_eq!(w[1].len(), w[0].len() + 1);
        }
        assert!(!d.is_reachable(&s(&d, &["a"])).unwrap());
        assert!(e2().is_reachable(&s(&e2(), &["b", "c"])).unwrap());
    }

    #[test]
    fn rdp_sizes() {
        let l = e1().rdp().unwrap();
        let labels: Vec<&str> = l.lattice().labels().iter().map(String::as_str).collect();
        assert_eq!(labels, ["{}", "{b}", "{c}", "{a,b}", "{a,c}", "{b,c}", "{a,b,c}"]);
        assert_eq!(l.lattice().covers().len(), 9);
        assert_eq!(e2().rdp().unwrap().len(), 5);
        assert_eq!(e3().rdp().unwrap().len(), 5);
        assert_eq!(Dsc::discrete(["x", "y"]).unwrap().rdp().unwrap().len(), 4);
        assert_eq!(Dsc::empty().rdp().unwrap().len(), 1);
    }

    #[test]
    fn scan_and_closure_agree() {
        let mut closure = Settings::default();
        closure.caps.scan_threshold = 0;
        for d in [e1(), e2(), e3()] {
            assert_eq!(
                d.complete_sets().unwrap(),
                d.complete_sets_with(&closure).unwrap()
            );
        }
    }

    #[test]
    fn meet_examples() {
        let d = e1();
        assert_eq!(d.meet(&s(&d, &["a", "b"]), &s(&d, &["a", "c"])).unwrap(), EventSet::new());
        let ab = s(&d, &["a", "b"]);
        assert_eq!(d.meet(&ab, &ab).unwrap(), ab);
        let d3 = e3();
        assert_eq!(
            d3.meet(&s(&d3, &["a", "b"]), &s(&d3, &["b", "c"])).unwrap(),
            s(&d3, &["b"])
        );
        assert!(d.meet(&s(&d, &["a"]), &ab).is_err());
        let l = d.rdp().unwrap();
        assert_eq!(
            l.meet_sets(&s(&d, &["a", "b"]), &s(&d, &["a", "c"])),
            Some(&EventSet::new())
        );
    }

    #[test]
    fn e_minimal_examples() {
        let d = e1();
        let a = d.id("a").unwrap();
        assert_eq!(
            d.e_minimal_complete_sets(a).unwrap(),
            vec![s(&d, &["a", "b"]), s(&d, &["a", "c"])]
        );
        assert_eq!(d.e_minimal_complete_sets_brute(a).unwrap(), d.e_minimal_complete_sets(a).unwrap());
        let b = d.id("b").unwrap();
        assert_eq!(d.e_minimal_complete_sets(b).unwrap(), vec![s(&d, &["b"])]);
        let d2 = e2();
        assert_eq!(
            d2.e_minimal_complete_sets(d2.id("a").unwrap()).unwrap(),
            vec![s(&d2, &["a", "b", "c"])]
        );
    }

    #[test]
    fn join_irreducible_examples() {
        let d = e1();
        let render: Vec<String> = d.join_irreducibles_of_rdp().iter().map(|x| d.render(x)).collect();
        assert_eq!(render, ["{b}", "{c}", "{a,b}", "{a,c}"]);
        let d2 = e2();
        let render: Vec<String> = d2.join_irreducibles_of_rdp().iter().map(|x| d2.render(x)).collect();
        assert_eq!(render, ["{b}", "{c}", "{a,b,c}"]);
        let disc = Dsc::discrete(["x", "y"]).unwrap();
        assert_eq!(disc.join_irreducibles_of_rdp().len(), 2);
    }

    #[test]
    fn enumeration_cap() {
        let labels: Vec<String> = (0..21).map(|i| format!("e{i}")).collect();
        let d = Dsc::discrete(labels).unwrap();
        assert!(matches!(d.rdp(), Err(Error::SizeCap { .. })));
    }
}
