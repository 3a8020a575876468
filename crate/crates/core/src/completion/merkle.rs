use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dsc::Dsc;
use crate::error::{Error, Result};
use crate::ground::EventId;

use super::r_poset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MerkleNode {
    pub label: String,
    /// Hashes of the members of the depset, sorted.
    pub deps: Vec<String>,
    pub hash: String,
}

/// Content hashes of a DSNC, keyed by event label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MerkleStore {
    pub nodes: BTreeMap<String, MerkleNode>,
}

#[derive(Serialize, Deserialize)]
struct StoreJson {
    nodes: Vec<MerkleNode>,
}

impl MerkleStore {
    pub fn hash(&self, label: &str) -> Option<&str> {
        self.nodes.get(label).map(|n| n.hash.as_str())
    }

    /// `{"nodes":[{"label","deps","hash"}]}` sorted by hash, pretty-printed.
    pub fn to_json(&self) -> String {
        let mut nodes: Vec<MerkleNode> = self.nodes.values().cloned().collect();
        nodes.sort_by(|a, b| (&a.hash, &a.label).cmp(&(&b.hash, &b.label)));
        serde_json::to_string_pretty(&StoreJson { nodes }).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: StoreJson = serde_json::from_str(s)?;
        Ok(Self {
            nodes: j.nodes.into_iter().map(|n| (n.label.clone(), n)).collect(),
        })
    }
}

/// `SHA-256(label ‖ "\n" ‖ h₁ ‖ "\n" ‖ … )` with child hex hashes sorted.
fn node_hash(label: &str, children: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(label.as_bytes());
    h.update(b"\n");
    for c in children {
        h.update(c.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// Hashes every event of a DSNC over the members of its single depset.
pub fn merkle_hashes(d: &Dsc) -> Result<MerkleStore> {
    if !d.is_dsnc() {
        return Err(Error::Contract("Merkle hashing needs a DSNC".into()));
    }
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    // A member of a depset has a strictly smaller depset (D3 plus D2).
    order.sort_by_key(|&e| d.deps()[e][0].len());
    let mut hashes: Vec<Option<String>> = vec![None; n];
    let mut nodes = BTreeMap::new();
    for e in order {
        let mut deps: Vec<String> = d.deps()[e][0]
            .iter()
            .map(|x| hashes[x].clone().expect("members are hashed first"))
            .collect();
        deps.sort();
        let label = d.label(EventId(e)).to_string();
        let hash = node_hash(&label, &deps);
        hashes[e] = Some(hash.clone());
        nodes.insert(label.clone(), MerkleNode { label, deps, hash });
    }
    Ok(MerkleStore { nodes })
}

/// The order of the DSNC with nodes labelled `<first 8 hex digits> <label>`.
pub fn merkle_dot(d: &Dsc, store: &MerkleStore) -> Result<String> {
    let p = r_poset(d)?;
    Ok(p.to_dot_labelled("merkle", |i| {
        let label = p.label(i);
        let h = store.hash(label).unwrap_or("");
        format!("{} {}", &h[..h.len().min(8)], label)
    }))
}
