//! Order-theoretic property checks with witnesses.

use crate::exec::Settings;

use super::finite::FiniteLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// The diamond.
    M3,
    /// The pentagon.
    N5,
}

/// A five-element sublattice `(bottom, x, y, z, top)`.
///
/// For N5 the middle entries are `(e, d, f)` with `e < d` and `f`
/// incomparable to both; for M3 they are the three atoms in index order.
pub type Sublattice = [usize; 5];

impl FiniteLattice {
    /// A triple `(x, y, z)` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_witness_with(&self, settings: &Settings) -> Option<(usize, usize, usize)> {
        let n = self.len();
        settings.find_index(n, |x| {
            for y in 0..n {
                for z in (y + 1)..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
    }

    pub fn is_distributive_with(&self, settings: &Settings) -> bool {
        self.distributivity_witness_with(settings).is_none()
    }

    pub fn is_distributive(&self) -> bool {
        self.is_distributive_with(&Settings::default())
    }

    /// First witness of the shape, scanning middle elements in index order.
    pub fn find_forbidden_sublattice(&self, shape: Shape) -> Option<Sublattice> {
        self.find_forbidden_sublattice_with(shape, &Settings::default())
    }

    pub fn find_forbidden_sublattice_with(
        &self,
        shape: Shape,
        settings: &Settings,
    ) -> Option<Sublattice> {
        let n = self.len();
        match shape {
            Shape::N5 => settings.find_index(n, |e| {
                for d in self.poset().up_set(e).iter().filter(|&d| d != e) {
                    for f in 0..n {
                        if self.poset().comparable(f, e) || self.poset().comparable(f, d) {
                            continue;
                        }
                        let top = self.join(d, f);
                        let bot = self.meet(e, f);
                        if self.join(e, f) == top && self.meet(d, f) == bot {
                            return Some([bot, e, d, f, top]);
                        }
                    }
                }
                None
            }),
            Shape::M3 => settings.find_index(n, |a| {
                for b in (a + 1)..n {
                    if self.poset().comparable(a, b) {
                        continue;
                    }
                    let top = self.join(a, b);
                    let bot = self.meet(a, b);
                    for c in (b + 1)..n {
                        if self.join(a, c) == top
                            && self.join(b, c) == top
                            && self.meet(a, c) == bot
                            && self.meet(b, c) == bot
                            && c != top
                            && c != bot
                        {
                            return Some([bot, a, b, c, top]);
                        }
                    }
                }
                None
            }),
        }
    }

    /// A triple `(x, a, b)` with `x ≤ b` but `x ∨ (a ∧ b) ≠ (x ∨ a) ∧ b`.
    pub fn modularity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        Settings::default().find_index(n, |x| {
            for b in self.poset().up_set(x).iter() {
                for a in 0..n {
                    if self.join(x, self.meet(a, b)) != self.meet(self.join(x, a), b) {
                        return Some((x, a, b));
                    }
                }
            }
            None
        })
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_witness().is_none()
    }

    /// A pair `(a, b)` with `a ∧ b ≺ a` but not `b ≺ a ∨ b`.
    pub fn upper_semimodularity_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        Settings::default().find_index(n, |a| {
            (0..n).find_map(|b| {
                let m = self.meet(a, b);
                (self.is_cover(m, a) && !self.is_cover(b, self.join(a, b))).then_some((a, b))
            })
        })
    }

    /// A pair `(a, b)` with `a ≺ a ∨ b` but not `a ∧ b ≺ b`.
    pub fn lower_semimodularity_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        Settings::default().find_index(n, |a| {
            (0..n).find_map(|b| {
                let j = self.join(a, b);
                (self.is_cover(a, j) && !self.is_cover(self.meet(a, b), b)).then_some((a, b))
            })
        })
    }

    pub fn is_upper_semimodular(&self) -> bool {
        self.upper_semimodularity_witness().is_none()
    }

    pub fn is_lower_semimodular(&self) -> bool {
        self.lower_semimodularity_witness().is_none()
    }

    /// Upper semimodular with no diamond sublattice.
    pub fn is_diamond_free_semimodular(&self) -> bool {
        self.is_upper_semimodular() && self.find_forbidden_sublattice(Shape::M3).is_none()
    }
}
