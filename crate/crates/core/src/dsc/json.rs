use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ground::Ground;

use super::{Dsc, PreDsc};

/// Serialized form: sorted events and, per event, its sorted depsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DscJson {
    pub events: Vec<String>,
    pub dep: BTreeMap<String, Vec<Vec<String>>>,
}

impl From<&PreDsc> for DscJson {
    fn from(p: &PreDsc) -> Self {
        let g = p.ground();
        let dep = g
            .ids()
            .map(|e| {
                let family = p.dep(e).iter().map(|d| g.names(d)).collect();
                (g.label(e).to_string(), family)
            })
            .collect();
        DscJson {
            events: g.labels().to_vec(),
            dep,
        }
    }
}

impl TryFrom<DscJson> for PreDsc {
    type Error = Error;

    fn try_from(j: DscJson) -> Result<Self> {
        let ground = Ground::new(j.events)?;
        for key in j.dep.keys() {
            ground.id(key)?;
        }
        let dep = ground
            .labels()
            .iter()
            .map(|l| {
                let family = j
                    .dep
                    .get(l)
                    .ok_or_else(|| Error::Parse(format!("no dep entry for `{l}`")))?;
                family.iter().map(|d| ground.set(d)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PreDsc::new(ground, dep)
    }
}

impl PreDsc {
    /// Compact JSON with sorted events and depsets. Byte-stable.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&DscJson::from(self)).expect("plain data serializes")
    }

    pub fn pretty_json(&self) -> String {
        serde_json::to_string_pretty(&DscJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: DscJson = serde_json::from_str(s)?;
        j.try_into()
    }

    /// Hex SHA-256 of [`PreDsc::canonical_json`].
    pub fn canonical_digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}

impl Dsc {
    pub fn from_json(s: &str) -> Result<Self> {
        Dsc::new(PreDsc::from_json(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let p: PreDsc = "a: c | b; b; c".parse().unwrap();
        assert_eq!(
            p.canonical_json(),
            r#"{"events":["a","b","c"],"dep":{"a":[["b"],["c"]],"b":[[]],"c":[[]]}}"#
        );
        assert_eq!(PreDsc::from_json(&p.canonical_json()).unwrap(), p);
        assert_eq!(PreDsc::from_json(&p.pretty_json()).unwrap(), p);
        assert_eq!(p.canonical_digest().len(), 64);
    }

    #[test]
    fn rejects_bad_json() {
        assert!(PreDsc::from_json(r#"{"events":["a"],"dep":{}}"#).is_err());
        assert!(matches!(
            PreDsc::from_json(r#"{"events":["a"],"dep":{"a":[["z"]]}}"#),
            Err(Error::UnknownEvent(_))
        ));
        assert!(matches!(PreDsc::from_json("{"), Err(Error::Json(_))));
    }
}
