use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::EventSet;
use crate::error::{Error, Result};

/// Index of an event in its ground set's canonical (lexicographic) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EventId(pub usize);

impl EventId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite set of uniquely labelled events, sorted by label.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ground {
    labels: Vec<String>,
}

impl Ground {
    /// Sorts and deduplicates; empty labels are rejected.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.iter().any(String::is_empty) {
            return Err(Error::Parse("event labels must be nonempty".into()));
        }
        labels.sort();
        let before = labels.len();
        labels.dedup();
        if labels.len() != before {
            return Err(Error::Parse("duplicate event label".into()));
        }
        Ok(Self { labels })
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

    pub fn label(&self, e: EventId) -> &str {
        &self.labels[e.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = EventId> + '_ {
        (0..self.labels.len()).map(EventId)
    }

    pub fn all(&self) -> EventSet {
        EventSet::full(self.len())
    }

    pub fn id(&self, label: &str) -> Result<EventId> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map(EventId)
            .map_err(|_| Error::UnknownEvent(label.to_string()))
    }

    pub fn set<S: AsRef<str>>(&self, labels: &[S]) -> Result<EventSet> {
        labels
            .iter()
            .map(|l| self.id(l.as_ref()).map(EventId::index))
            .collect()
    }

    /// Errors when `x` has members outside the ground set.
    pub fn check(&self, x: &EventSet) -> Result<()> {
        match x.iter().find(|&i| i >= self.len()) {
            Some(i) => Err(Error::Domain(format!(
                "index {i} outside a ground set of {} events",
                self.len()
            ))),
            None => Ok(()),
        }
    }

    pub fn check_id(&self, e: EventId) -> Result<()> {
        if e.0 < self.len() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "event {e} outside a ground set of {} events",
                self.len()
            )))
        }
    }

    pub fn names(&self, x: &EventSet) -> Vec<String> {
        x.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a,b}` style rendering; `{}` for the empty set.
    pub fn render(&self, x: &EventSet) -> String {
        format!("{{{}}}", self.names(x).join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_sorted_and_looked_up() {
        let g = Ground::new(["c", "a", "b"]).unwrap();
        assert_eq!(g.labels(), ["a", "b", "c"]);
        assert_eq!(g.id("c").unwrap(), EventId(2));
        assert!(matches!(g.id("z"), Err(Error::UnknownEvent(_))));
        let s = g.set(&["c", "a"]).unwrap();
        assert_eq!(g.render(&s), "{a,c}");
        assert_eq!(g.render(&EventSet::new()), "{}");
    }

    #[test]
    fn rejects_duplicates_and_empty_labels() {
        assert!(Ground::new(["a", "a"]).is_err());
        assert!(Ground::new([""]).is_err());
    }

    #[test]
    fn domain_checks() {
        let g = Ground::new(["a"]).unwrap();
        assert!(g.check(&EventSet::singleton(0)).is_ok());
        assert!(matches!(g.check(&EventSet::singleton(1)), Err(Error::Domain(_))));
    }
}
