//! Exhaustive search for a coequalizer of two parallel morphisms.
//!
//! A coequalizer `q: T → Q` is epi, hence surjective, so up to isomorphism it
//! is a partition of `T` that `f` and `g` respect together with a DSC on the
//! blocks making `q` a morphism. The DSCs on a quotient that make `q` a
//! morphism are exactly the antimatroids inside `{S : q*(S) complete}`.
//!
//! Every candidate is tested against every other candidate as a cocone. That
//! suffices: a cocone `k: T → Z` corestricts to a morphism onto the subset DSC
//! on `k(T)`, which is again a candidate, and the subset inclusion is a
//! morphism.

use std::sync::Arc;

use serde::Serialize;

use crate::antimatroid::{psi, Antimatroid};
use crate::bitset::EventSet;
use crate::dsc::Dsc;
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::ground::{EventId, Ground};
use crate::morphisms::{morphism_witness, DscMorphism, GroundMap};

use super::iso::is_isomorphic;

const MAX_CANDIDATES: usize = 50_000;

#[derive(Clone, Debug)]
pub struct CoequalizerCandidate {
    pub object: Arc<Dsc>,
    pub quotient: DscMorphism,
    /// Index of a candidate cocone that does not factor through this one.
    pub refuted_by: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CoequalizerReport {
    pub candidates: Vec<CoequalizerCandidate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateSummary {
    pub object: String,
    pub map: std::collections::BTreeMap<String, String>,
    pub refuted_by: Option<usize>,
}

impl CoequalizerReport {
    /// The first candidate no cocone refutes. All such candidates are
    /// isomorphic.
    pub fn coequalizer(&self) -> Option<&CoequalizerCandidate> {
        self.candidates.iter().find(|c| c.refuted_by.is_none())
    }

    pub fn exists(&self) -> bool {
        self.coequalizer().is_some()
    }

    /// Candidate objects, one per isomorphism class.
    pub fn shapes(&self) -> Result<Vec<Arc<Dsc>>> {
        distinct(self.candidates.iter().map(|c| &c.object))
    }

    pub fn refuted_shapes(&self) -> Result<Vec<Arc<Dsc>>> {
        distinct(
            self.candidates
                .iter()
                .filter(|c| c.refuted_by.is_some())
                .map(|c| &c.object),
        )
    }

    pub fn summary(&self) -> Vec<CandidateSummary> {
        self.candidates
            .iter()
            .map(|c| CandidateSummary {
                object: c.object.to_string(),
                map: c.quotient.to_json().map,
                refuted_by: c.refuted_by,
            })
            .collect()
    }
}

fn distinct<'a>(objects: impl Iterator<Item = &'a Arc<Dsc>>) -> Result<Vec<Arc<Dsc>>> {
    let mut out: Vec<Arc<Dsc>> = Vec::new();
    for o in objects {
        let mut seen = false;
        for p in &out {
            if is_isomorphic(o, p)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(o.clone());
        }
    }
    Ok(out)
}

pub fn coequalizer_search(f: &DscMorphism, g: &DscMorphism) -> Result<CoequalizerReport> {
    coequalizer_search_with(f, g, &Settings::default())
}

pub fn coequalizer_search_with(f: &DscMorphism, g: &DscMorphism, settings: &Settings) -> Result<CoequalizerReport> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Contract("maps must share source and target".into()));
    }
    f.require_morphism("coequalizer")?;
    g.require_morphism("coequalizer")?;
    let target = f.target();
    let n = target.len();
    if n > settings.caps.coequalizer {
        return Err(Error::cap("coequalizer target", n, settings.caps.coequalizer));
    }
    let mut candidates = Vec::new();
    for blocks in partitions(n) {
        let respects = (0..f.source().len()).all(|e| blocks[f.map().apply(e)] == blocks[g.map().apply(e)]);
        if respects {
            quotient_candidates(target, &blocks, &mut candidates)?;
        }
    }
    let verdicts = settings.map(&candidates, |c| {
        candidates.iter().position(|k| !factors(c, k))
    });
    Ok(CoequalizerReport {
        candidates: candidates
            .into_iter()
            .zip(verdicts)
            .map(|((object, quotient), refuted_by)| CoequalizerCandidate {
                object,
                quotient,
                refuted_by,
            })
            .collect(),
    })
}

/// Whether the cocone `k` factors through `c` by a morphism.
fn factors(c: &(Arc<Dsc>, DscMorphism), k: &(Arc<Dsc>, DscMorphism)) -> bool {
    let (q, kq) = (c.1.map(), k.1.map());
    let mut m = vec![None; c.0.len()];
    for t in 0..q.source_len() {
        match m[q.apply(t)] {
            None => m[q.apply(t)] = Some(kq.apply(t)),
            Some(z) if z != kq.apply(t) => return false,
            Some(_) => {}
        }
    }
    let images = m.into_iter().map(|z| z.expect("quotient is onto")).collect();
    let m = GroundMap::new(images, k.0.len()).expect("images come from a map into Z");
    morphism_witness(&c.0, &k.0, &m).is_none()
}

/// Restricted growth strings: `blocks[i]` is the block of element `i`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, blocks: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<usize>>) {
        if k == blocks.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..=used {
            blocks[k] = b;
            go(k + 1, blocks, used.max(b + 1), out);
        }
    }
    let mut out = Vec::new();
    go(0, &mut vec![0; n], 0, &mut out);
    out
}

fn quotient_candidates(
    target: &Arc<Dsc>,
    blocks: &[usize],
    out: &mut Vec<(Arc<Dsc>, DscMorphism)>,
) -> Result<()> {
    let k = blocks.iter().map(|&b| b + 1).max().unwrap_or(0);
    let names: Vec<String> = (0..k)
        .map(|b| {
            (0..blocks.len())
                .filter(|&t| blocks[t] == b)
                .map(|t| target.label(EventId(t)))
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    let ground = Ground::new(names.clone())?;
    let slot: Vec<usize> = names.iter().map(|l| ground.id(l).expect("own label").0).collect();
    let q = GroundMap::new(blocks.iter().map(|&b| slot[b]).collect(), k)?;
    let allowed: Vec<bool> = (0..1u64 << k)
        .map(|mask| target.complete_unchecked(&q.preimage(&EventSet::from_mask(mask))))
        .collect();
    for family in antimatroids_within(k, &allowed, MAX_CANDIDATES.saturating_sub(out.len()))? {
        let feasible = family.into_iter().map(EventSet::from_mask).collect();
        let object = Arc::new(psi(&Antimatroid::new(ground.clone(), feasible)?)?);
        let quotient = DscMorphism::new(target.clone(), object.clone(), q.clone())?;
        debug_assert!(quotient.is_morphism());
        out.push((object, quotient));
    }
    Ok(())
}

/// Every antimatroid on `k` points whose feasible sets all satisfy `allowed`.
fn antimatroids_within(k: usize, allowed: &[bool], cap: usize) -> Result<Vec<Vec<u64>>> {
    let mut order: Vec<u64> = (0..1u64 << k).filter(|&m| allowed[m as usize]).collect();
    order.sort_by_key(|m| (m.count_ones(), *m));
    let full = (1u64 << k) - 1;
    let mut st = Enum {
        order: &order,
        allowed,
        included: vec![false; 1 << k],
        chosen: Vec::new(),
        out: Vec::new(),
        full,
        cap,
    };
    st.go(0)?;
    Ok(st.out)
}

struct Enum<'a> {
    order: &'a [u64],
    allowed: &'a [bool],
    included: Vec<bool>,
    chosen: Vec<u64>,
    out: Vec<Vec<u64>>,
    full: u64,
    cap: usize,
}

impl Enum<'_> {
    fn go(&mut self, idx: usize) -> Result<()> {
        if idx == self.order.len() {
            if self.included[self.full as usize] {
                if self.out.len() >= self.cap {
                    return Err(Error::cap("coequalizer candidates", self.out.len() + 1, MAX_CANDIDATES));
                }
                self.out.push(self.chosen.clone());
            }
            return Ok(());
        }
        let s = self.order[idx];
        let below = self
            .chosen
            .iter()
            .filter(|&&a| a & s == a && a != s)
            .fold(0, |acc, &a| acc | a);
        let forced = below == s;
        let accessible = s == 0 || (0..64).any(|x| s >> x & 1 == 1 && self.included[(s & !(1 << x)) as usize]);
        let closed = self.chosen.iter().all(|&a| self.allowed[(a | s) as usize]);
        if accessible && closed {
            self.included[s as usize] = true;
            self.chosen.push(s);
            self.go(idx + 1)?;
            self.chosen.pop();
            self.included[s as usize] = false;
        }
        if !forced {
            self.go(idx + 1)?;
        }
        Ok(())
    }
}
