use crate::bitset::EventSet;
use crate::error::{Error, Result};
use crate::lattice::SetLattice;

/// A function between two set lattices, tabulated by element index.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    domain: SetLattice,
    codomain: SetLattice,
    table: Vec<usize>,
}

impl LatticeMap {
    /// Fails if some image is not an element of `codomain`.
    pub fn from_fn<F>(domain: SetLattice, codomain: SetLattice, f: F) -> Result<Self>
    where
        F: Fn(&EventSet) -> EventSet,
    {
        let table = domain
            .sets()
            .iter()
            .map(|s| {
                let t = f(s);
                codomain.index_of(&t).ok_or_else(|| {
                    Error::Contract(format!(
                        "{} is sent to {}, which is not an element",
                        domain.render(s),
                        codomain.render(&t)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            domain,
            codomain,
            table,
        })
    }

    pub fn domain(&self) -> &SetLattice {
        &self.domain
    }

    pub fn codomain(&self) -> &SetLattice {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn preserves_joins(&self) -> bool {
        let (d, c) = (self.domain.lattice(), self.codomain.lattice());
        (0..d.len()).all(|i| {
            (0..d.len()).all(|j| self.table[d.join(i, j)] == c.join(self.table[i], self.table[j]))
        })
    }

    pub fn preserves_meets(&self) -> bool {
        let (d, c) = (self.domain.lattice(), self.codomain.lattice());
        (0..d.len()).all(|i| {
            (0..d.len()).all(|j| self.table[d.meet(i, j)] == c.meet(self.table[i], self.table[j]))
        })
    }

    pub fn is_order_preserving(&self) -> bool {
        let (d, c) = (self.domain.lattice(), self.codomain.lattice());
        (0..d.len()).all(|i| {
            (0..d.len()).all(|j| !d.leq(i, j) || c.leq(self.table[i], self.table[j]))
        })
    }

    pub fn is_surjective(&self) -> bool {
        let hit: EventSet = self.table.iter().copied().collect();
        hit.len() == self.codomain.len()
    }

    /// Same lattice on both sides and every element fixed.
    pub fn is_identity(&self) -> bool {
        self.domain.sets() == self.codomain.sets()
            && self.table.iter().enumerate().all(|(i, &j)| i == j)
    }
}
