//! Dependency structures with choice.
//!
//! A [`PreDsc`] assigns to every event a family of alternative dependency
//! sets ("depsets"). A [`Dsc`] is a preDSC that passes [`PreDsc::validate`].
//!
//! Both parse from a compact notation: entries separated by `;` or newlines,
//! `name` alone for an event with the single depset `∅`, `name: b,c | d` for
//! alternatives, `{}` for an explicit empty depset and `name:` for an empty
//! family.
//!
//! ```
//! use dsc_core::Dsc;
//! let e1: Dsc = "a: b | c; b; c".parse().unwrap();
//! assert_eq!(e1.rdp().unwrap().len(), 7);
//! ```

mod ges;
mod json;
mod reach;
mod validate;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::bitset::EventSet;
use crate::error::{Error, Result};
use crate::ground::{EventId, Ground};

pub use ges::GeneralEventStructure;
pub use json::DscJson;
pub use validate::{Axiom, ValidationReport, Violation};

/// Ground set plus a total dependency function. No axioms are enforced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreDsc {
    ground: Ground,
    dep: Vec<Vec<EventSet>>,
}

impl PreDsc {
    /// Families are sorted and deduplicated. Fails if a depset leaves the
    /// ground set or the family count does not match.
    pub fn new(ground: Ground, dep: Vec<Vec<EventSet>>) -> Result<Self> {
        if dep.len() != ground.len() {
            return Err(Error::Domain(format!(
                "{} dependency families for {} events",
                dep.len(),
                ground.len()
            )));
        }
        let mut dep = dep;
        for family in &mut dep {
            for d in family.iter() {
                ground.check(d)?;
            }
            family.sort();
            family.dedup();
        }
        Ok(Self { ground, dep })
    }

    /// Builds from labels, e.g. `[("a", vec![vec!["b"], vec!["c"]]), ("b", vec![vec![]])]`.
    pub fn from_labels<S: AsRef<str>>(entries: &[(S, Vec<Vec<S>>)]) -> Result<Self> {
        let ground = Ground::new(entries.iter().map(|(l, _)| l.as_ref().to_string()))?;
        let mut dep = vec![Vec::new(); ground.len()];
        for (label, family) in entries {
            let e = ground.id(label.as_ref())?;
            dep[e.0] = family
                .iter()
                .map(|d| ground.set(d))
                .collect::<Result<Vec<_>>>()?;
        }
        Self::new(ground, dep)
    }

    /// The DSC with no events.
    pub fn empty() -> Self {
        Self {
            ground: Ground::default(),
            dep: Vec::new(),
        }
    }

    /// Every event has the single depset `∅`.
    pub fn discrete<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ground = Ground::new(labels)?;
        let dep = vec![vec![EventSet::new()]; ground.len()];
        Self::new(ground, dep)
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn label(&self, e: EventId) -> &str {
        self.ground.label(e)
    }

    pub fn id(&self, label: &str) -> Result<EventId> {
        self.ground.id(label)
    }

    pub fn set<S: AsRef<str>>(&self, labels: &[S]) -> Result<EventSet> {
        self.ground.set(labels)
    }

    pub fn render(&self, x: &EventSet) -> String {
        self.ground.render(x)
    }

    pub fn dep(&self, e: EventId) -> &[EventSet] {
        &self.dep[e.0]
    }

    pub fn deps(&self) -> &[Vec<EventSet>] {
        &self.dep
    }

    /// Each family replaced by its inclusion-minimal members.
    pub fn irredundant_hull(&self) -> PreDsc {
        PreDsc {
            ground: self.ground.clone(),
            dep: self.dep.iter().map(|f| minimal_sets(f.clone())).collect(),
        }
    }

    pub fn is_irredundant(&self) -> bool {
        self.dep.iter().all(|f| is_antichain(f))
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    pub fn into_dsc(self) -> Result<Dsc> {
        Dsc::new(self)
    }

    /// Whether every event has exactly one depset.
    pub fn is_dsnc(&self) -> bool {
        self.dep.iter().all(|f| f.len() == 1)
    }
}

/// Inclusion-minimal members of a family, canonically sorted.
pub fn minimal_sets(mut family: Vec<EventSet>) -> Vec<EventSet> {
    family.sort_by(EventSet::graded_cmp);
    family.dedup();
    let mut kept: Vec<EventSet> = Vec::with_capacity(family.len());
    for s in family {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

pub(crate) fn is_antichain(family: &[EventSet]) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(i, a)| family.iter().skip(i + 1).all(|b| !a.is_subset(b) && !b.is_subset(a)))
}

/// A preDSC satisfying the irredundancy, nonemptiness, irreflexivity and
/// completeness axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dsc(PreDsc);

impl Dsc {
    pub fn new(p: PreDsc) -> Result<Self> {
        let report = p.validate();
        if report.is_ok() {
            Ok(Dsc(p))
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn empty() -> Self {
        Dsc(PreDsc::empty())
    }

    pub fn discrete<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Dsc(PreDsc::discrete(labels)?))
    }

    pub fn as_predsc(&self) -> &PreDsc {
        &self.0
    }

    pub fn into_predsc(self) -> PreDsc {
        self.0
    }
}

impl Deref for Dsc {
    type Target = PreDsc;

    fn deref(&self) -> &PreDsc {
        &self.0
    }
}

impl FromStr for PreDsc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries: Vec<(String, Vec<Vec<String>>)> = Vec::new();
        for raw in s.split([';', '\n']) {
            let entry = raw.trim();
            if entry.is_empty() || entry.starts_with('#') {
                continue;
            }
            let (name, family) = match split_name(entry) {
                None => (entry, vec![Vec::new()]),
                Some((name, rest)) => {
                    let rest = rest.trim();
                    let family = if rest.is_empty() {
                        Vec::new()
                    } else {
                        rest.split('|').map(parse_depset).collect::<Result<_>>()?
                    };
                    (name.trim(), family)
                }
            };
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(Error::Parse(format!("bad event name in `{entry}`")));
            }
            entries.push((name.to_string(), family));
        }
        Self::from_labels(&entries)
    }
}

/// Splits at the first `:` that ends the name (followed by a space or the
/// end of the entry), so labels such as `L:a` survive.
fn split_name(entry: &str) -> Option<(&str, &str)> {
    entry.char_indices().find_map(|(i, c)| {
        let rest = &entry[i + 1..];
        (c == ':' && (rest.is_empty() || rest.starts_with(char::is_whitespace)))
            .then(|| (&entry[..i], rest))
    })
}

fn parse_depset(alt: &str) -> Result<Vec<String>> {
    let alt = alt.trim();
    if alt == "{}" || alt == "∅" {
        return Ok(Vec::new());
    }
    let members: Vec<String> = alt
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|m| !m.is_empty())
        .map(String::from)
        .collect();
    if members.is_empty() {
        return Err(Error::Parse("empty alternative; write `{}` for ∅".into()));
    }
    Ok(members)
}

impl FromStr for Dsc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Dsc::new(s.parse()?)
    }
}

impl fmt::Display for PreDsc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .ground
            .ids()
            .map(|e| {
                let family = self.dep(e);
                let label = self.label(e);
                if family.len() == 1 && family[0].is_empty() {
                    label.to_string()
                } else if family.is_empty() {
                    format!("{label}:")
                } else {
                    let alts: Vec<String> = family
                        .iter()
                        .map(|d| {
                            if d.is_empty() {
                                "{}".to_string()
                            } else {
                                self.ground.names(d).join(",")
                            }
                        })
                        .collect();
                    format!("{label}: {}", alts.join(" | "))
                }
            })
            .collect();
        f.write_str(&entries.join("; "))
    }
}

impl fmt::Display for Dsc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
