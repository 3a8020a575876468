//! Package manifests and their translation into DSCs.
//!
//! One event per package version, labelled `name-version`. A requirement with
//! several matching versions is a disjunction, and the dependency sets of a
//! package are the ways of picking one match per requirement.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use dsc_core::dsc::minimal_sets;
use dsc_core::{Caps, Error, EventSet, Ground, PreDsc, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub packages: Vec<Package>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Package {
    pub name: String,
    pub version: String,
    #[serde(default)]
    pub dependencies: Vec<Requirement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Requirement {
    pub name: String,
    pub version: String,
}

/// Numeric dotted version; missing trailing components count as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Version(Vec<u64>);

impl Version {
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split('.')
            .map(|p| p.parse::<u64>().map_err(|_| Error::Parse(format!("bad version `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() || parts.len() > 3 {
            return Err(Error::Parse(format!("bad version `{s}`")));
        }
        Ok(Self(parts))
    }

    fn part(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl Ord for Version {
    fn cmp(&self, other: &Self) -> Ordering {
        (0..3).map(|i| self.part(i).cmp(&other.part(i))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for Version {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VersionSpec {
    /// `1.2.3` or `=1.2.3`.
    Exact(Version),
    /// `^1.2.3`: same major, at least `1.2.3`.
    Caret(Version),
    Any,
}

impl VersionSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "*" {
            Ok(Self::Any)
        } else if let Some(rest) = s.strip_prefix('^') {
            Ok(Self::Caret(Version::parse(rest)?))
        } else {
            Ok(Self::Exact(Version::parse(s.strip_prefix('=').unwrap_or(s))?))
        }
    }

    pub fn matches(&self, v: &Version) -> bool {
        match self {
            Self::Exact(w) => v == w,
            Self::Caret(w) => v.part(0) == w.part(0) && v >= w,
            Self::Any => true,
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name, self.version)
    }
}

pub fn event_label(name: &str, version: &str) -> String {
    format!("{name}-{version}")
}

impl Manifest {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Expands requirements into depsets, then closes them under D3 by
    /// substituting the depsets of members until nothing changes.
    pub fn to_predsc(&self, caps: &Caps) -> Result<PreDsc> {
        let labels: Vec<String> = self.packages.iter().map(|p| event_label(&p.name, &p.version)).collect();
        let unique: BTreeSet<(&str, &str)> =
            self.packages.iter().map(|p| (p.name.as_str(), p.version.as_str())).collect();
        if unique.len() != self.packages.len() {
            return Err(Error::Parse("a package version is listed twice".into()));
        }
        let ground = Ground::new(labels.clone())?;
        if ground.len() > caps.enumeration {
            return Err(Error::cap("manifest events", ground.len(), caps.enumeration));
        }
        let versions = self
            .packages
            .iter()
            .map(|p| Version::parse(&p.version))
            .collect::<Result<Vec<_>>>()?;
        let slot: Vec<usize> = labels.iter().map(|l| ground.id(l).expect("own label").0).collect();

        let mut dep = vec![Vec::new(); ground.len()];
        for (i, p) in self.packages.iter().enumerate() {
            let mut family = vec![EventSet::new()];
            for r in &p.dependencies {
                let spec = VersionSpec::parse(&r.version)?;
                let matches: Vec<usize> = self
                    .packages
                    .iter()
                    .enumerate()
                    .filter(|(k, q)| q.name == r.name && spec.matches(&versions[*k]))
                    .map(|(k, _)| slot[k])
                    .collect();
                if matches.is_empty() {
                    return Err(Error::Resolution(format!(
                        "{} requires {r}, which no listed version satisfies",
                        labels[i]
                    )));
                }
                family = family
                    .iter()
                    .flat_map(|d| matches.iter().map(move |&m| d.with(m)))
                    .collect();
                if family.len() > caps.morphisms as usize {
                    return Err(Error::cap("dependency alternatives", family.len(), caps.morphisms as usize));
                }
            }
            dep[slot[i]] = minimal_sets(family);
        }
        close(&mut dep, caps)?;
        PreDsc::new(ground, dep)
    }
}

/// Replaces each depset missing a dependency of one of its members by its
/// extensions with each depset of that member. At most `|E|` rounds are
/// needed on acyclic input; cycles stop there and fail D2 or D3 later.
fn close(dep: &mut [Vec<EventSet>], caps: &Caps) -> Result<()> {
    for _ in 0..=dep.len() {
        let mut changed = false;
        for e in 0..dep.len() {
            let mut next = Vec::new();
            for d in &dep[e] {
                match d.iter().find(|&x| !dep[x].iter().any(|dx| dx.is_subset(d))) {
                    Some(x) => {
                        changed = true;
                        next.extend(dep[x].iter().map(|dx| d.union(dx)));
                    }
                    None => next.push(d.clone()),
                }
            }
            if next.len() > caps.morphisms as usize {
                return Err(Error::cap("dependency alternatives", next.len(), caps.morphisms as usize));
            }
            dep[e] = minimal_sets(next);
        }
        if !changed {
            break;
        }
    }
    Ok(())
}
