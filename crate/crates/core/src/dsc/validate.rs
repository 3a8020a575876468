use std::fmt;

use serde::Serialize;

use crate::bitset::EventSet;

use super::PreDsc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    /// `dep(e)` is an antichain.
    D0,
    /// `dep(e)` is nonempty.
    D1,
    /// `e` is in none of its depsets.
    D2,
    /// Every depset is complete.
    D3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub event: String,
    /// The offending depset; empty for D1.
    pub depset: Vec<String>,
    pub detail: String,
}

/// Axiom failures, at most one per axiom and event.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            writeln!(
                f,
                "{:?} at {} {{{}}}: {}",
                v.axiom,
                v.event,
                v.depset.join(","),
                v.detail
            )?;
        }
        Ok(())
    }
}

pub(super) fn validate(p: &PreDsc) -> ValidationReport {
    let g = p.ground();
    let mut violations = Vec::new();
    let mut push = |axiom, e, d: &EventSet, detail: String| {
        violations.push(Violation {
            axiom,
            event: g.label(e).to_string(),
            depset: g.names(d),
            detail,
        })
    };
    for e in g.ids() {
        let family = p.dep(e);
        if let Some((small, big)) = family.iter().enumerate().find_map(|(i, a)| {
            family
                .iter()
                .enumerate()
                .find(|&(j, b)| i != j && a.is_subset(b))
                .map(|(_, b)| (a, b))
        }) {
            push(
                Axiom::D0,
                e,
                big,
                format!("contains the alternative {}", g.render(small)),
            );
        }
        if family.is_empty() {
            push(Axiom::D1, e, &EventSet::new(), "no depsets".into());
        }
        if let Some(d) = family.iter().find(|d| d.contains(e.0)) {
            push(Axiom::D2, e, d, "contains the event itself".into());
        }
        if let Some((d, x)) = family.iter().find_map(|d| {
            d.iter()
                .find(|&x| !p.deps()[x].iter().any(|dx| dx.is_subset(d)))
                .map(|x| (d, x))
        }) {
            push(
                Axiom::D3,
                e,
                d,
                format!("not complete: no depset of `{}` inside it", g.label(crate::EventId(x))),
            );
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(src: &str) -> ValidationReport {
        src.parse::<PreDsc>().unwrap().validate()
    }

    #[test]
    fn e1_passes() {
        assert!(report("a: b | c; b; c").is_ok());
        assert!(report("").is_ok());
    }

    #[test]
    fn self_dependency() {
        let r = report("a: a");
        let w = r.witness(Axiom::D2).unwrap();
        assert_eq!((w.event.as_str(), w.depset.clone()), ("a", vec!["a".to_string()]));
    }

    #[test]
    fn mutual_dependency_is_incomplete() {
        let r = report("a: b; b: a");
        let w = r.witness(Axiom::D3).unwrap();
        assert_eq!(w.event, "a");
        assert_eq!(w.depset, vec!["b"]);
        assert!(!r.failed(Axiom::D2));
    }

    #[test]
    fn redundant_and_empty_families() {
        let r = report("a: b | b,c; b; c; d:");
        assert_eq!(r.witness(Axiom::D0).unwrap().depset, vec!["b", "c"]);
        assert_eq!(r.witness(Axiom::D1).unwrap().event, "d");
        assert_eq!(r.violations.len(), 2);
    }
}
