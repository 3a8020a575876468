//! Antimatroids and their correspondence with DSCs.
//!
//! [`phi`] sends a DSC to its family of complete sets; [`psi`] recovers
//! `dep(e)` from the `e`-minimal feasible sets. The two are mutually inverse.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::EventSet;
use crate::dsc::{minimal_sets, Dsc, PreDsc};
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::ground::{EventId, Ground};
use crate::lattice::{downset_family, FinitePoset, SetLattice};
use crate::morphisms::GroundMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AntimatroidAxiom {
    /// Closed under union.
    A1,
    /// Every nonempty feasible set has a removable element; `∅` is feasible.
    A2,
    /// The feasible sets cover the ground set.
    A3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntimatroidViolation {
    pub axiom: AntimatroidAxiom,
    pub sets: Vec<Vec<String>>,
    pub detail: String,
}

/// One witness per failed axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AntimatroidReport {
    pub violations: Vec<AntimatroidViolation>,
}

impl AntimatroidReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed(&self, axiom: AntimatroidAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn witness(&self, axiom: AntimatroidAxiom) -> Option<&AntimatroidViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AntimatroidReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            let sets: Vec<String> = v.sets.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
            writeln!(f, "{:?} at {}: {}", v.axiom, sets.join(" "), v.detail)?;
        }
        Ok(())
    }
}

/// Checks the antimatroid axioms for `family` over `ground`.
pub fn validate_antimatroid(ground: &Ground, family: &[EventSet]) -> Result<AntimatroidReport> {
    for s in family {
        ground.check(s)?;
    }
    let members: HashSet<&EventSet> = family.iter().collect();
    let mut violations = Vec::new();
    let names = |s: &EventSet| ground.names(s);

    let union_gap = family.iter().enumerate().find_map(|(i, a)| {
        family[i + 1..]
            .iter()
            .find(|b| !members.contains(&a.union(b)))
            .map(|b| (a, b))
    });
    if let Some((a, b)) = union_gap {
        violations.push(AntimatroidViolation {
            axiom: AntimatroidAxiom::A1,
            sets: vec![names(a), names(b)],
            detail: format!("union {} is not feasible", ground.render(&a.union(b))),
        });
    }

    let empty_missing = !members.contains(&EventSet::new());
    let stuck = family
        .iter()
        .filter(|s| !s.is_empty())
        .find(|s| s.iter().all(|x| !members.contains(&s.without(x))));
    match (stuck, empty_missing) {
        (Some(s), missing) => violations.push(AntimatroidViolation {
            axiom: AntimatroidAxiom::A2,
            sets: vec![names(s)],
            detail: if missing {
                "no element can be removed; ∅ is not feasible".into()
            } else {
                "no element can be removed".into()
            },
        }),
        (None, true) => violations.push(AntimatroidViolation {
            axiom: AntimatroidAxiom::A2,
            sets: vec![Vec::new()],
            detail: "∅ is not feasible".into(),
        }),
        (None, false) => {}
    }

    let covered = family.iter().fold(EventSet::new(), |acc, s| acc.union(s));
    let missing = ground.all().difference(&covered);
    if !missing.is_empty() {
        violations.push(AntimatroidViolation {
            axiom: AntimatroidAxiom::A3,
            sets: vec![names(&missing)],
            detail: "in no feasible set".into(),
        });
    }
    Ok(AntimatroidReport { violations })
}

/// A ground set with a validated family of feasible sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antimatroid {
    ground: Ground,
    feasible: Vec<EventSet>,
}

impl Antimatroid {
    /// Sorts, deduplicates and validates.
    pub fn new(ground: Ground, mut feasible: Vec<EventSet>) -> Result<Self> {
        feasible.sort();
        feasible.dedup();
        let report = validate_antimatroid(&ground, &feasible)?;
        if !report.is_ok() {
            return Err(Error::InvalidAntimatroid(report));
        }
        Ok(Self { ground, feasible })
    }

    /// The power set of `ground`.
    pub fn maximal(ground: Ground) -> Result<Self> {
        let n = ground.len();
        if n > Settings::default().caps.enumeration {
            return Err(Error::cap("ground set", n, Settings::default().caps.enumeration));
        }
        let feasible = (0..1u64 << n).map(EventSet::from_mask).collect();
        Self::new(ground, feasible)
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    /// Feasible sets in canonical (lexicographic) order.
    pub fn feasible(&self) -> &[EventSet] {
        &self.feasible
    }

    pub fn is_feasible(&self, s: &EventSet) -> bool {
        self.feasible.binary_search(s).is_ok()
    }

    /// Inclusion-minimal feasible sets containing `e`.
    pub fn e_minimal_feasible_sets(&self, e: EventId) -> Result<Vec<EventSet>> {
        self.ground.check_id(e)?;
        let with_e = self.feasible.iter().filter(|s| s.contains(e.0)).cloned().collect();
        Ok(minimal_sets(with_e))
    }

    /// Closed under intersection; exactly the antimatroids of downsets.
    pub fn is_poset_antimatroid(&self) -> bool {
        self.feasible.iter().enumerate().all(|(i, a)| {
            self.feasible[i + 1..]
                .iter()
                .all(|b| self.is_feasible(&a.intersection(b)))
        })
    }

    /// The feasible sets ordered by inclusion.
    pub fn lattice(&self) -> Result<SetLattice> {
        SetLattice::new(self.ground.labels().to_vec(), self.feasible.clone())
    }

    pub fn to_json(&self) -> AntimatroidJson {
        AntimatroidJson {
            events: self.ground.labels().to_vec(),
            feasible: self.feasible.iter().map(|s| self.ground.names(s)).collect(),
        }
    }

    pub fn from_json(j: &AntimatroidJson) -> Result<Self> {
        let ground = Ground::new(j.events.clone())?;
        let feasible = j
            .feasible
            .iter()
            .map(|s| ground.set(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, feasible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntimatroidJson {
    pub events: Vec<String>,
    pub feasible: Vec<Vec<String>>,
}

/// The complete sets of `d` as an antimatroid.
pub fn phi(d: &Dsc) -> Result<Antimatroid> {
    phi_with(d, &Settings::default())
}

pub fn phi_with(d: &Dsc, settings: &Settings) -> Result<Antimatroid> {
    let mut feasible = d.complete_sets_with(settings)?;
    feasible.sort();
    Ok(Antimatroid {
        ground: d.ground().clone(),
        feasible,
    })
}

/// `dep(e) = {M ∖ {e} : M an e-minimal feasible set}`.
pub fn psi(m: &Antimatroid) -> Result<Dsc> {
    let dep = m
        .ground
        .ids()
        .map(|e| {
            Ok(m.e_minimal_feasible_sets(e)?
                .into_iter()
                .map(|s| s.without(e.0))
                .collect())
        })
        .collect::<Result<Vec<Vec<EventSet>>>>()?;
    Dsc::new(PreDsc::new(m.ground.clone(), dep)?)
}

/// The downsets of `p`. Poset labels become the ground set.
pub fn poset_antimatroid(p: &FinitePoset) -> Result<Antimatroid> {
    let ground = Ground::new(p.labels().to_vec())?;
    let to_ground: Vec<usize> = p
        .labels()
        .iter()
        .map(|l| ground.id(l).map(EventId::index))
        .collect::<Result<_>>()?;
    let feasible = downset_family(p, Settings::default().caps.lattice)?
        .into_iter()
        .map(|s| s.iter().map(|i| to_ground[i]).collect())
        .collect();
    Antimatroid::new(ground, feasible)
}

/// `f*` sends feasible sets of `target` to feasible sets of `source`.
pub fn is_antimatroid_morphism(f: &GroundMap, source: &Antimatroid, target: &Antimatroid) -> bool {
    antimatroid_morphism_witness(f, source, target).is_none()
}

/// A feasible set of `target` whose preimage is not feasible.
pub fn antimatroid_morphism_witness(
    f: &GroundMap,
    source: &Antimatroid,
    target: &Antimatroid,
) -> Option<EventSet> {
    target
        .feasible
        .iter()
        .find(|a| !source.is_feasible(&f.preimage(a)))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> Dsc {
        "a: b | c; b; c".parse().unwrap()
    }

    fn rendered(m: &Antimatroid, sets: &[EventSet]) -> Vec<String> {
        sets.iter().map(|s| m.ground().render(s)).collect()
    }

    #[test]
    fn validation_examples() {
        let g = Ground::new(["a", "b"]).unwrap();
        let power = Antimatroid::maximal(g.clone()).unwrap();
        assert_eq!(power.feasible().len(), 4);

        let r = validate_antimatroid(&g, &[g.set(&["a", "b"]).unwrap()]).unwrap();
        let w = r.witness(AntimatroidAxiom::A2).unwrap();
        assert_eq!(w.sets, vec![vec!["a", "b"]]);
        assert!(w.detail.contains('∅'));

        let g3 = Ground::new(["a", "b", "d"]).unwrap();
        let fam: Vec<EventSet> = Antimatroid::maximal(g.clone()).unwrap().feasible().to_vec();
        let r = validate_antimatroid(&g3, &fam).unwrap();
        assert_eq!(r.witness(AntimatroidAxiom::A3).unwrap().sets, vec![vec!["d"]]);
        assert!(!r.failed(AntimatroidAxiom::A1));

        let r = validate_antimatroid(&g, &[EventSet::new(), g.set(&["a"]).unwrap(), g.set(&["b"]).unwrap()])
            .unwrap();
        assert!(r.failed(AntimatroidAxiom::A1));
    }

    #[test]
    fn phi_examples() {
        let m = phi(&e1()).unwrap();
        let mut sets = m.feasible().to_vec();
        sets.sort_by(EventSet::graded_cmp);
        assert_eq!(
            rendered(&m, &sets),
            ["{}", "{b}", "{c}", "{a,b}", "{a,c}", "{b,c}", "{a,b,c}"]
        );
        let disc = Dsc::discrete(["x", "y", "z"]).unwrap();
        assert_eq!(phi(&disc).unwrap(), Antimatroid::maximal(disc.ground().clone()).unwrap());
        let empty = phi(&Dsc::empty()).unwrap();
        assert_eq!(empty.feasible(), &[EventSet::new()]);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&phi(&e1()).unwrap()).unwrap(), e1());
        let g = Ground::new(["x", "y"]).unwrap();
        assert_eq!(psi(&Antimatroid::maximal(g).unwrap()).unwrap(), Dsc::discrete(["x", "y"]).unwrap());
        let chain = FinitePoset::from_pairs(vec!["b".into(), "a".into()], &[(0, 1)]).unwrap();
        let d = psi(&poset_antimatroid(&chain).unwrap()).unwrap();
        assert_eq!(d.to_string(), "a: b; b");
    }

    #[test]
    fn minimal_feasible_examples() {
        let m = phi(&e1()).unwrap();
        let a = m.ground().id("a").unwrap();
        assert_eq!(rendered(&m, &m.e_minimal_feasible_sets(a).unwrap()), ["{a,b}", "{a,c}"]);
        let p = FinitePoset::from_pairs(
            vec!["b".into(), "a".into(), "c".into()],
            &[(0, 1), (0, 2)],
        )
        .unwrap();
        let pm = poset_antimatroid(&p).unwrap();
        let a = pm.ground().id("a").unwrap();
        assert_eq!(rendered(&pm, &pm.e_minimal_feasible_sets(a).unwrap()), ["{a,b}"]);
        assert!(m.e_minimal_feasible_sets(EventId(9)).is_err());
    }

    #[test]
    fn poset_antimatroid_examples() {
        let anti = poset_antimatroid(&FinitePoset::antichain(2)).unwrap();
        assert_eq!(anti, Antimatroid::maximal(anti.ground().clone()).unwrap());
        let chain = FinitePoset::from_pairs(vec!["b".into(), "a".into()], &[(0, 1)]).unwrap();
        let m = poset_antimatroid(&chain).unwrap();
        assert_eq!(rendered(&m, m.feasible()), ["{}", "{a,b}", "{b}"]);
        let e3: Dsc = "a: b; b; c: b".parse().unwrap();
        let p = FinitePoset::from_pairs(vec!["a".into(), "b".into(), "c".into()], &[(1, 0), (1, 2)])
            .unwrap();
        assert_eq!(poset_antimatroid(&p).unwrap(), phi(&e3).unwrap());
    }

    #[test]
    fn intersection_closure() {
        assert!(!phi(&e1()).unwrap().is_poset_antimatroid());
        assert!(phi(&"a: b; b; c: b".parse().unwrap()).unwrap().is_poset_antimatroid());
        assert!(Antimatroid::maximal(Ground::new(["x", "y"]).unwrap())
            .unwrap()
            .is_poset_antimatroid());
    }

    #[test]
    fn morphism_examples() {
        let m = phi(&e1()).unwrap();
        assert!(is_antimatroid_morphism(&GroundMap::identity(3), &m, &m));
        // Preimages under a constant map are `∅` or everything, both feasible.
        let f = GroundMap::constant(3, 0, 3).unwrap();
        assert!(is_antimatroid_morphism(&f, &m, &m));
        // `{a}` is feasible in the power set but not in `m`.
        let power = Antimatroid::maximal(m.ground().clone()).unwrap();
        let id = GroundMap::identity(3);
        assert_eq!(antimatroid_morphism_witness(&id, &m, &power), Some(EventSet::singleton(0)));
        assert!(is_antimatroid_morphism(&id, &power, &m));
    }

    #[test]
    fn json_round_trip() {
        let m = phi(&e1()).unwrap();
        let j = m.to_json();
        assert_eq!(j.feasible[0], Vec::<String>::new());
        assert_eq!(Antimatroid::from_json(&j).unwrap(), m);
    }
}
