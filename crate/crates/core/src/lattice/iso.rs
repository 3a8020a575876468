use crate::error::{Error, Result};

use super::finite::FiniteLattice;
use super::poset::FinitePoset;

/// Per-element invariants preserved by order isomorphisms.
fn invariants(p: &FinitePoset) -> Vec<(usize, usize, usize, usize, usize)> {
    let heights = p.heights();
    let covers = p.covers();
    let mut lower = vec![0; p.len()];
    let mut upper = vec![0; p.len()];
    for &(x, y) in &covers.pairs {
        upper[x] += 1;
        lower[y] += 1;
    }
    (0..p.len())
        .map(|x| {
            (
                heights[x],
                p.down_set(x).len(),
                p.up_set(x).len(),
                lower[x],
                upper[x],
            )
        })
        .collect()
}

/// An order isomorphism `a → b` as an index table, if one exists.
///
/// Backtracks over a linear extension of `a`, matching invariant classes.
pub fn poset_isomorphism(a: &FinitePoset, b: &FinitePoset, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = a.len();
    if n > cap || b.len() > cap {
        return Err(Error::cap("isomorphism search", n.max(b.len()), cap));
    }
    if n != b.len() {
        return Ok(None);
    }
    let (ia, ib) = (invariants(a), invariants(b));
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let order = a.linear_extension();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &ia, &ib, &order, 0, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &FinitePoset,
    b: &FinitePoset,
    ia: &[(usize, usize, usize, usize, usize)],
    ib: &[(usize, usize, usize, usize, usize)],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == order.len() {
        return true;
    }
    let x = order[k];
    for y in 0..b.len() {
        if used[y] || ia[x] != ib[y] {
            continue;
        }
        let consistent = order[..k].iter().all(|&x2| {
            let y2 = map[x2];
            a.leq(x2, x) == b.leq(y2, y) && a.leq(x, x2) == b.leq(y, y2)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ia, ib, order, k + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

impl FiniteLattice {
    /// Order isomorphism to `other` (lattice isomorphisms are exactly these).
    pub fn isomorphism(&self, other: &FiniteLattice, cap: usize) -> Result<Option<Vec<usize>>> {
        poset_isomorphism(self.poset(), other.poset(), cap)
    }

    pub fn is_isomorphic(&self, other: &FiniteLattice, cap: usize) -> Result<bool> {
        Ok(self.isomorphism(other, cap)?.is_some())
    }

    /// Componentwise product; element `(i, j)` has index `i * other.len() + j`.
    pub fn product(&self, other: &FiniteLattice) -> Result<FiniteLattice> {
        let m = other.len();
        let labels = (0..self.len() * m)
            .map(|k| format!("({},{})", self.label(k / m), other.label(k % m)))
            .collect();
        FiniteLattice::from_leq(labels, |x, y| {
            self.leq(x / m, y / m) && other.leq(x % m, y % m)
        })
    }
}
