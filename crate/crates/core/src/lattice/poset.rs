use crate::bitset::EventSet;
use crate::error::{Error, Result};

/// A finite partial order on labelled elements, stored as up- and down-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<EventSet>,
    down: Vec<EventSet>,
}

/// Pairs `(x, y)` with `x ≺ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverRelation {
    pub pairs: Vec<(usize, usize)>,
}

impl CoverRelation {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.binary_search(&(x, y)).is_ok()
    }
}

impl FinitePoset {
    /// Builds a poset from a `≤` predicate and checks the partial-order laws.
    pub fn new<F>(labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let up: Vec<EventSet> = (0..n)
            .map(|i| (0..n).filter(|&j| leq(i, j)).collect())
            .collect();
        Self::from_up_sets(labels, up)
    }

    /// Reflexive-transitive closure of the given strict pairs.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut up: Vec<EventSet> = (0..n).map(EventSet::singleton).collect();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::Domain(format!("pair ({x},{y}) outside {n} elements")));
            }
            up[x].insert(y);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row = up[k].clone();
            for u in up.iter_mut() {
                if u.contains(k) {
                    u.union_with(&row);
                }
            }
        }
        Self::from_up_sets(labels, up)
    }

    pub(crate) fn from_up_sets(labels: Vec<String>, up: Vec<EventSet>) -> Result<Self> {
        let n = labels.len();
        let mut down = vec![EventSet::new(); n];
        for (i, u) in up.iter().enumerate() {
            if !u.contains(i) {
                return Err(Error::NotAPoset(format!("`{}` is not ≤ itself", labels[i])));
            }
            for j in u {
                if j >= n {
                    return Err(Error::Domain(format!("index {j} outside {n} elements")));
                }
                down[j].insert(i);
            }
        }
        for i in 0..n {
            for j in &up[i] {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAPoset(format!(
                        "`{}` and `{}` are mutually ≤",
                        labels[i], labels[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::NotAPoset(format!(
                        "transitivity fails above `{}` ≤ `{}`",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Self { labels, up, down })
    }

    pub fn chain(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect(), |i, j| i == j).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{y : x ≤ y}`.
    pub fn up_set(&self, x: usize) -> &EventSet {
        &self.up[x]
    }

    /// `{y : y ≤ x}`.
    pub fn down_set(&self, x: usize) -> &EventSet {
        &self.down[x]
    }

    pub fn is_down_closed(&self, s: &EventSet) -> bool {
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    /// Transitive reduction of `<`, sorted.
    pub fn covers(&self) -> CoverRelation {
        let mut pairs = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].iter().filter(|&y| y != x) {
                // y covers x iff nothing strictly between.
                let between = self.up[x].intersection(&self.down[y]);
                if between.len() == 2 {
                    pairs.push((x, y));
                }
            }
        }
        CoverRelation { pairs }
    }

    /// Elements sorted so every element follows everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].len(), i));
        order
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for x in self.linear_extension() {
            h[x] = self.down[x]
                .iter()
                .filter(|&y| y != x)
                .map(|y| h[y] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// The induced order on the listed elements, in the given order.
    pub fn subposet(&self, elements: &[usize]) -> FinitePoset {
        let labels = elements.iter().map(|&i| self.labels[i].clone()).collect();
        FinitePoset::new(labels, |a, b| self.leq(elements[a], elements[b]))
            .expect("restriction of a partial order")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn chain_covers() {
        let p = FinitePoset::chain(3);
        assert_eq!(p.covers().pairs, vec![(0, 1), (1, 2)]);
        assert!(FinitePoset::antichain(3).covers().is_empty());
        assert_eq!(p.heights(), vec![0, 1, 2]);
    }

    #[test]
    fn rejects_non_orders() {
        assert!(matches!(
            FinitePoset::new(labels(2), |_, _| true),
            Err(Error::NotAPoset(_))
        ));
        assert!(matches!(
            FinitePoset::new(labels(3), |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2)),
            Err(Error::NotAPoset(_))
        ));
        assert!(FinitePoset::from_pairs(labels(2), &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn closure_from_pairs() {
        let p = FinitePoset::from_pairs(labels(3), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p, FinitePoset::chain(3));
        assert!(p.is_down_closed(&[0, 1].into_iter().collect()));
        assert!(!p.is_down_closed(&EventSet::singleton(1)));
    }
}
