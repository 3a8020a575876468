//! Bruns-Lakser completion, Birkhoff duality between DSNCs and finite
//! distributive lattices, and Merkle hashing of DSNCs.

mod merkle;

use crate::bitset::EventSet;
use crate::dsc::{Dsc, PreDsc};
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::ground::Ground;
use crate::lattice::{downset_family, downsets_with, FiniteLattice, FinitePoset, SetLattice};

pub use merkle::{merkle_dot, merkle_hashes, MerkleNode, MerkleStore};

/// `b ≤ a` iff `b = a` or `b` is in the single depset of `a`.
pub fn r_poset(d: &Dsc) -> Result<FinitePoset> {
    if !d.is_dsnc() {
        return Err(Error::Contract("R(E) needs a DSNC".into()));
    }
    FinitePoset::new(d.ground().labels().to_vec(), |b, a| {
        a == b || d.deps()[a][0].contains(b)
    })
}

/// An element `x` with `x ∧ ⋁S ≠ ⋁(x ∧ s)`, if any.
pub fn distributive_subset_witness(l: &FiniteLattice, s: &[usize]) -> Option<usize> {
    let top = l.join_all(s.iter().copied());
    (0..l.len()).find(|&x| l.meet(x, top) != l.join_all(s.iter().map(|&y| l.meet(x, y))))
}

pub fn is_distributive_subset(l: &FiniteLattice, s: &[usize]) -> bool {
    distributive_subset_witness(l, s).is_none()
}

/// Brute-force lattice of distributive ideals: nonempty downsets containing
/// the join of each of their distributive subsets. Sets are of element
/// indices of `l`.
///
/// Only antichains are tested. The maximal elements of a distributive subset
/// form a distributive subset with the same join.
pub fn distributive_ideals(l: &FiniteLattice) -> Result<SetLattice> {
    distributive_ideals_with(l, &Settings::default())
}

pub fn distributive_ideals_with(l: &FiniteLattice, settings: &Settings) -> Result<SetLattice> {
    if l.len() > settings.caps.ideals {
        return Err(Error::cap("distributive ideal oracle", l.len(), settings.caps.ideals));
    }
    let downs = downset_family(l.poset(), usize::MAX)?;
    let antichains: Vec<(EventSet, usize)> = downs
        .iter()
        .map(|d| {
            let max: EventSet = d.iter().filter(|&x| d.iter().all(|y| y == x || !l.leq(x, y))).collect();
            max
        })
        .filter(|a| {
            let members: Vec<usize> = a.iter().collect();
            is_distributive_subset(l, &members)
        })
        .map(|a| {
            let j = l.join_all(a.iter());
            (a, j)
        })
        .collect();
    let ideals: Vec<EventSet> = settings
        .map(&downs, |d| {
            (!d.is_empty() && antichains.iter().all(|(a, j)| !a.is_subset(d) || d.contains(*j))).then(|| d.clone())
        })
        .into_iter()
        .flatten()
        .collect();
    SetLattice::new_with(l.labels().to_vec(), ideals, settings)
}

/// `BL(L)` presented as the downsets of the join-irreducibles of `L`.
#[derive(Clone, Debug)]
pub struct DistributiveLatticeView {
    /// Sets are of positions in `join_irreducibles`.
    pub base: SetLattice,
    /// Element indices of the original lattice, ascending.
    pub join_irreducibles: Vec<usize>,
    /// Original element index to index in `base`.
    pub embedding: Vec<usize>,
}

impl DistributiveLatticeView {
    pub fn lattice(&self) -> &FiniteLattice {
        self.base.lattice()
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// `φ_L(x) = {j ∈ J(L) : j ≤ x}`.
    pub fn embed(&self, x: usize) -> &EventSet {
        self.base.set(self.embedding[x])
    }

    /// The join-irreducibles of the original lattice in `s`, as element
    /// indices.
    pub fn members(&self, s: &EventSet) -> Vec<usize> {
        s.iter().map(|k| self.join_irreducibles[k]).collect()
    }

    pub fn render(&self, s: &EventSet) -> String {
        self.base.render(s)
    }
}

pub fn bruns_lakser(l: &FiniteLattice) -> Result<DistributiveLatticeView> {
    bruns_lakser_with(l, &Settings::default())
}

pub fn bruns_lakser_with(l: &FiniteLattice, settings: &Settings) -> Result<DistributiveLatticeView> {
    let (join_irreducibles, poset) = l.join_irreducible_poset();
    let base = downsets_with(&poset, settings)?;
    let embedding = (0..l.len())
        .map(|x| {
            let below: EventSet = (0..join_irreducibles.len())
                .filter(|&k| l.leq(join_irreducibles[k], x))
                .collect();
            base.index_of(&below).expect("principal downsets are downsets")
        })
        .collect();
    Ok(DistributiveLatticeView {
        base,
        join_irreducibles,
        embedding,
    })
}

/// The DSNC with events the elements of `p` and `dep(x) = {{y : y < x}}`.
pub fn poset_to_dsnc(p: &FinitePoset) -> Result<Dsc> {
    let ground = Ground::new(p.labels().iter().cloned())?;
    let slot: Vec<usize> = p.labels().iter().map(|l| ground.id(l).expect("own label").0).collect();
    let mut dep = vec![Vec::new(); p.len()];
    for x in 0..p.len() {
        dep[slot[x]] = vec![p.down_set(x).without(x).iter().map(|y| slot[y]).collect()];
    }
    Dsc::new(PreDsc::new(ground, dep)?)
}

/// `τ(L)`: the DSNC on `J(L)` with the inherited strict order.
pub fn dlattice_to_dsnc(l: &FiniteLattice) -> Result<Dsc> {
    if !l.is_distributive() {
        return Err(Error::Contract("τ needs a distributive lattice".into()));
    }
    poset_to_dsnc(&l.join_irreducible_poset().1)
}

/// `τ(BL(rdp(d)))`, built directly from `J(rdp(d))`. Events are the sets
/// `D ∪ {e}` for `D ∈ dep(e)`, labelled like `{a,b}`.
pub fn merkle_dsnc(d: &Dsc) -> Result<Dsc> {
    merkle_dsnc_with(d, &Settings::default())
}

pub fn merkle_dsnc_with(d: &Dsc, settings: &Settings) -> Result<Dsc> {
    let rdp = d.rdp_with(settings)?;
    poset_to_dsnc(&rdp.lattice().join_irreducible_poset().1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dsc {
        s.parse().unwrap()
    }

    fn at(l: &SetLattice, g: &Dsc, names: &[&str]) -> usize {
        l.index_of(&g.set(names).unwrap()).unwrap()
    }

    #[test]
    fn r_poset_examples() {
        let e3 = d("a: b; b; c: b");
        let p = r_poset(&e3).unwrap();
        assert_eq!(p.covers().pairs, vec![(1, 0), (1, 2)]);
        let ab = r_poset(&d("a: b; b")).unwrap();
        assert!(ab.lt(1, 0));
        assert!(r_poset(&d("a: b | c; b; c")).is_err());
    }

    #[test]
    fn distributive_subsets_of_e1() {
        let e1 = d("a: b | c; b; c");
        let rdp = e1.rdp().unwrap();
        let l = rdp.lattice();
        let (b, ab, ac) = (at(&rdp, &e1, &["b"]), at(&rdp, &e1, &["a", "b"]), at(&rdp, &e1, &["a", "c"]));
        assert!(is_distributive_subset(l, &[ab]));
        assert!(is_distributive_subset(l, &[ab, ac]));
        assert!(!is_distributive_subset(l, &[b, ac]));
        assert_eq!(distributive_subset_witness(l, &[b, ac]), Some(ab));
        let bool3 = FiniteLattice::boolean(3);
        assert!(is_distributive_subset(&bool3, &[1, 2, 4, 6]));
    }

    #[test]
    fn ideals_and_bl_of_e1() {
        let e1 = d("a: b | c; b; c");
        let rdp = e1.rdp().unwrap();
        let ideals = distributive_ideals(rdp.lattice()).unwrap();
        assert_eq!(ideals.len(), 9);
        let bl = bruns_lakser(rdp.lattice()).unwrap();
        assert_eq!(bl.len(), 9);
        assert!(bl.lattice().is_distributive());
        assert!(bl.lattice().is_isomorphic(ideals.lattice(), 64).unwrap());
        let names: Vec<&str> = bl.join_irreducibles.iter().map(|&j| rdp.lattice().label(j)).collect();
        assert_eq!(names, ["{b}", "{c}", "{a,b}", "{a,c}"]);
        let top = bl.base.set(bl.lattice().top());
        assert_eq!(bl.render(top), "{{b},{c},{a,b},{a,c}}");
        let bc = at(&rdp, &e1, &["b", "c"]);
        assert_eq!(bl.render(bl.embed(bc)), "{{b},{c}}");
    }

    #[test]
    fn ideals_of_a_chain() {
        let ideals = distributive_ideals(&FiniteLattice::chain(3)).unwrap();
        assert_eq!(ideals.len(), 3);
    }

    #[test]
    fn tau_examples() {
        let t = dlattice_to_dsnc(&FiniteLattice::boolean(2)).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.deps().iter().all(|f| f == &vec![EventSet::new()]));
        let chain = dlattice_to_dsnc(&FiniteLattice::chain(3)).unwrap();
        assert_eq!(chain.to_string(), "1; 2: 1");
        assert!(dlattice_to_dsnc(&FiniteLattice::n5()).is_err());
        let e3 = d("a: b; b; c: b");
        let back = dlattice_to_dsnc(e3.rdp().unwrap().lattice()).unwrap();
        assert!(crate::category::is_isomorphic(&back, &e3).unwrap());
    }

    #[test]
    fn merkle_dsnc_of_e1() {
        let m = merkle_dsnc(&d("a: b | c; b; c")).unwrap();
        assert_eq!(m.to_string(), "{a,b}: {b}; {a,c}: {c}; {b}; {c}");
        let disc = d("x; y");
        let md = merkle_dsnc(&disc).unwrap();
        assert!(crate::category::is_isomorphic(&md, &disc).unwrap());
    }
}
