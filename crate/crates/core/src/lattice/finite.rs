use crate::bitset::EventSet;
use crate::error::{Error, Result};
use crate::exec::Settings;

use super::poset::{CoverRelation, FinitePoset};

/// A finite lattice with precomputed join and meet tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
    upper_covers: Vec<EventSet>,
    lower_covers: Vec<EventSet>,
}

impl FiniteLattice {
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        Self::from_poset_with(poset, &Settings::default())
    }

    /// Fails with [`Error::NotALattice`] when some pair lacks a join or meet.
    pub fn from_poset_with(poset: FinitePoset, settings: &Settings) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NotALattice("no elements".into()));
        }
        if n > settings.caps.lattice {
            return Err(Error::cap("lattice", n, settings.caps.lattice));
        }
        let order = poset.linear_extension();
        let mut pos = vec![0; n];
        for (p, &x) in order.iter().enumerate() {
            pos[x] = p;
        }
        let permute = |s: &EventSet| -> EventSet { s.iter().map(|x| pos[x]).collect() };
        let up: Vec<EventSet> = (0..n).map(|x| permute(poset.up_set(x))).collect();
        let down: Vec<EventSet> = (0..n).map(|x| permute(poset.down_set(x))).collect();

        let rows: Vec<usize> = (0..n).collect();
        let computed = settings.map(&rows, |&i| -> Result<(Vec<u32>, Vec<u32>)> {
            let mut jrow = Vec::with_capacity(n);
            let mut mrow = Vec::with_capacity(n);
            for j in 0..n {
                let lub = up[i]
                    .first_common(&up[j])
                    .map(|p| order[p])
                    .filter(|&k| up[i].intersection_within(&up[j], &up[k]))
                    .ok_or_else(|| {
                        Error::NotALattice(format!(
                            "`{}` and `{}` have no least upper bound",
                            poset.label(i),
                            poset.label(j)
                        ))
                    })?;
                let glb = down[i]
                    .last_common(&down[j])
                    .map(|p| order[p])
                    .filter(|&k| down[i].intersection_within(&down[j], &down[k]))
                    .ok_or_else(|| {
                        Error::NotALattice(format!(
                            "`{}` and `{}` have no greatest lower bound",
                            poset.label(i),
                            poset.label(j)
                        ))
                    })?;
                jrow.push(lub as u32);
                mrow.push(glb as u32);
            }
            Ok((jrow, mrow))
        });
        let mut join = Vec::with_capacity(n * n);
        let mut meet = Vec::with_capacity(n * n);
        for row in computed {
            let (j, m) = row?;
            join.extend(j);
            meet.extend(m);
        }

        let bottom = order[0];
        let top = order[n - 1];
        let mut upper_covers = vec![EventSet::new(); n];
        let mut lower_covers = vec![EventSet::new(); n];
        for (x, y) in poset.covers().pairs {
            upper_covers[x].insert(y);
            lower_covers[y].insert(x);
        }
        Ok(Self {
            poset,
            join,
            meet,
            bottom,
            top,
            upper_covers,
            lower_covers,
        })
    }

    pub fn from_leq<F>(labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        Self::from_poset(FinitePoset::new(labels, leq)?)
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_poset(FinitePoset::chain(n)).expect("chains are lattices")
    }

    /// The subsets of a `k`-element set.
    pub fn boolean(k: usize) -> Self {
        let labels = (0..1u64 << k)
            .map(|m| format!("{m:0width$b}", width = k.max(1)))
            .collect();
        Self::from_leq(labels, |a, b| a & !b == 0).expect("power sets are lattices")
    }

    /// The diamond: bottom, three atoms, top.
    pub fn m3() -> Self {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        Self::from_leq(labels, |x, y| x == y || x == 0 || y == 4).expect("M3")
    }

    /// The pentagon `0 < e < d < 1`, `0 < f < 1`.
    pub fn n5() -> Self {
        let labels = ["0", "e", "d", "f", "1"].map(String::from).to_vec();
        Self::from_leq(labels, |x, y| x == y || x == 0 || y == 4 || (x, y) == (1, 2))
            .expect("N5")
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.label(x)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.poset.lt(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    /// Join of a family; the bottom for an empty family.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a family; the top for an empty family.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Whether `y` covers `x`.
    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper_covers[x].contains(y)
    }

    pub fn upper_covers(&self, x: usize) -> &EventSet {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &EventSet {
        &self.lower_covers[x]
    }

    pub fn covers(&self) -> CoverRelation {
        let mut pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| self.upper_covers[x].iter().map(move |y| (x, y)))
            .collect();
        pairs.sort();
        CoverRelation { pairs }
    }

    pub fn heights(&self) -> Vec<usize> {
        self.poset.heights()
    }

    /// Elements with exactly one lower cover, ascending.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.lower_covers[x].len() == 1)
            .collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.upper_covers[x].len() == 1)
            .collect()
    }

    /// The subposet of join-irreducibles with the inherited order.
    pub fn join_irreducible_poset(&self) -> (Vec<usize>, FinitePoset) {
        let j = self.join_irreducibles();
        let p = self.poset.subposet(&j);
        (j, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_tables() {
        let l = FiniteLattice::boolean(2);
        assert_eq!(l.len(), 4);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 3);
        assert_eq!(l.join_irreducibles(), vec![1, 2]);
        assert_eq!(l.covers().len(), 4);
    }

    #[test]
    fn pentagon_and_diamond() {
        let n5 = FiniteLattice::n5();
        assert_eq!(n5.join(1, 3), 4);
        assert_eq!(n5.meet(2, 3), 0);
        assert_eq!(n5.join_irreducibles(), vec![1, 2, 3]);
        let m3 = FiniteLattice::m3();
        assert_eq!(m3.join(1, 2), 4);
        assert_eq!(m3.join_irreducibles(), vec![1, 2, 3]);
    }

    #[test]
    fn rejects_non_lattices() {
        // Two maximal elements.
        let r = FiniteLattice::from_leq(vec!["0".into(), "a".into(), "b".into()], |x, y| {
            x == y || x == 0
        });
        assert!(matches!(r, Err(Error::NotALattice(_))));
        // Two minimal upper bounds of a and b.
        let r = FiniteLattice::from_leq(
            ["0", "a", "b", "c", "d", "1"].map(String::from).to_vec(),
            |x, y| x == y || x == 0 || y == 5 || (x < 3 && x > 0 && (y == 3 || y == 4)),
        );
        assert!(matches!(r, Err(Error::NotALattice(_))));
    }

    #[test]
    fn lattice_cap() {
        let mut s = Settings::default();
        s.caps.lattice = 3;
        assert!(matches!(
            FiniteLattice::from_poset_with(FinitePoset::chain(4), &s),
            Err(Error::SizeCap { .. })
        ));
    }
}
