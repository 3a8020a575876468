//! Brute-force checks of universal properties against a finite set of test
//! objects. Every cone (or cocone) from a test object must factor through the
//! construction in exactly one way.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::dsc::Dsc;
use crate::error::Result;
use crate::exec::Settings;
use crate::morphisms::{enumerate_morphisms_with, DscMorphism, MorphismClass};

use super::{free, ConstructionResult};

#[derive(Clone, Debug, Default, Serialize)]
pub struct UniversalReport {
    /// Cones examined.
    pub cases: usize,
    pub failures: Vec<String>,
}

impl UniversalReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, z: &Dsc, what: impl FnOnce() -> String, count: usize) {
        self.cases += 1;
        if count != 1 {
            self.failures
                .push(format!("from `{z}`: {} factors {count} times", what()));
        }
    }
}

fn morphisms(s: &Arc<Dsc>, t: &Arc<Dsc>, settings: &Settings) -> Result<Vec<DscMorphism>> {
    enumerate_morphisms_with(s, t, MorphismClass::Morphism, settings)
}

fn after(first: &DscMorphism, second: &DscMorphism) -> Vec<usize> {
    first.map().images().iter().map(|&y| second.map().apply(y)).collect()
}

fn show(f: &DscMorphism) -> String {
    serde_json::to_string(&f.to_json().map).unwrap_or_default()
}

fn tally<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> HashMap<K, usize> {
    let mut counts = HashMap::new();
    for k in keys {
        *counts.entry(k).or_insert(0) += 1;
    }
    counts
}

pub fn verify_product(
    x: &Arc<Dsc>,
    y: &Arc<Dsc>,
    product: &ConstructionResult,
    tests: &[Arc<Dsc>],
    settings: &Settings,
) -> Result<UniversalReport> {
    let (p1, p2) = (&product.legs[0], &product.legs[1]);
    let mut report = UniversalReport::default();
    for z in tests {
        let counts = tally(
            morphisms(z, &product.object, settings)?
                .iter()
                .map(|m| (after(m, p1), after(m, p2))),
        );
        let gs = morphisms(z, y, settings)?;
        for f in morphisms(z, x, settings)? {
            for g in &gs {
                let key = (f.map().images().to_vec(), g.map().images().to_vec());
                let count = counts.get(&key).copied().unwrap_or(0);
                report.record(z, || format!("pair {} / {}", show(&f), show(g)), count);
            }
        }
    }
    Ok(report)
}

pub fn verify_coproduct(
    x: &Arc<Dsc>,
    y: &Arc<Dsc>,
    coproduct: &ConstructionResult,
    tests: &[Arc<Dsc>],
    settings: &Settings,
) -> Result<UniversalReport> {
    let (i1, i2) = (&coproduct.legs[0], &coproduct.legs[1]);
    let mut report = UniversalReport::default();
    for z in tests {
        let counts = tally(
            morphisms(&coproduct.object, z, settings)?
                .iter()
                .map(|m| (after(i1, m), after(i2, m))),
        );
        let gs = morphisms(y, z, settings)?;
        for f in morphisms(x, z, settings)? {
            for g in &gs {
                let key = (f.map().images().to_vec(), g.map().images().to_vec());
                let count = counts.get(&key).copied().unwrap_or(0);
                report.record(z, || format!("copair {} / {}", show(&f), show(g)), count);
            }
        }
    }
    Ok(report)
}

pub fn verify_equalizer(
    f: &DscMorphism,
    g: &DscMorphism,
    equalizer: &ConstructionResult,
    tests: &[Arc<Dsc>],
    settings: &Settings,
) -> Result<UniversalReport> {
    let inc = &equalizer.legs[0];
    let mut report = UniversalReport::default();
    for z in tests {
        let counts = tally(
            morphisms(z, &equalizer.object, settings)?
                .iter()
                .map(|m| after(m, inc)),
        );
        for h in morphisms(z, f.source(), settings)? {
            if after(&h, f) != after(&h, g) {
                continue;
            }
            let count = counts.get(h.map().images()).copied().unwrap_or(0);
            report.record(z, || format!("map {}", show(&h)), count);
        }
    }
    Ok(report)
}

pub fn verify_pullback(
    f: &DscMorphism,
    g: &DscMorphism,
    pullback: &ConstructionResult,
    tests: &[Arc<Dsc>],
    settings: &Settings,
) -> Result<UniversalReport> {
    let (l1, l2) = (&pullback.legs[0], &pullback.legs[1]);
    let mut report = UniversalReport::default();
    for z in tests {
        let counts = tally(
            morphisms(z, &pullback.object, settings)?
                .iter()
                .map(|m| (after(m, l1), after(m, l2))),
        );
        let qs = morphisms(z, g.source(), settings)?;
        for p in morphisms(z, f.source(), settings)? {
            for q in &qs {
                if after(&p, f) != after(q, g) {
                    continue;
                }
                let key = (p.map().images().to_vec(), q.map().images().to_vec());
                let count = counts.get(&key).copied().unwrap_or(0);
                report.record(z, || format!("square {} / {}", show(&p), show(q)), count);
            }
        }
    }
    Ok(report)
}

/// Every set map from `labels` into a test object is a morphism out of the
/// discrete DSC, so the hom-set has `|E|^|S|` elements.
pub fn verify_free_adjunction(labels: &[&str], tests: &[Arc<Dsc>], settings: &Settings) -> Result<UniversalReport> {
    let discrete = Arc::new(free(labels.iter().copied())?);
    let mut report = UniversalReport::default();
    for z in tests {
        let expected = z.len().pow(labels.len() as u32);
        let found = morphisms(&discrete, z, settings)?.len();
        report.cases += 1;
        if found != expected {
            report
                .failures
                .push(format!("into `{z}`: {found} morphisms, {expected} set maps"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn pool() -> Vec<Arc<Dsc>> {
        ["a: b | c; b; c", "a: b,c; b; c", "u: v; v", "x; y", "*"]
            .iter()
            .map(|s| Arc::new(s.parse().unwrap()))
            .chain([Arc::new(Dsc::empty())])
            .collect()
    }

    #[test]
    fn product_and_coproduct_are_universal() {
        let p = pool();
        let s = Settings::default();
        for (x, y) in [(&p[0], &p[2]), (&p[2], &p[3]), (&p[1], &p[4])] {
            let prod = product(x, y).unwrap();
            let r = verify_product(x, y, &prod, &p[2..], &s).unwrap();
            assert!(r.is_ok() && r.cases > 0, "{:?}", r.failures);
            let cop = coproduct(x, y).unwrap();
            let r = verify_coproduct(x, y, &cop, &p[2..], &s).unwrap();
            assert!(r.is_ok() && r.cases > 0, "{:?}", r.failures);
        }
    }

    #[test]
    fn wrong_legs_are_caught() {
        let p = pool();
        let x = &p[2];
        let prod = product(x, x).unwrap();
        let twice_first = ConstructionResult {
            object: prod.object.clone(),
            legs: vec![prod.legs[0].clone(), prod.legs[0].clone()],
        };
        let r = verify_product(x, x, &twice_first, &p, &Settings::default()).unwrap();
        assert!(!r.is_ok());
    }

    #[test]
    fn free_discrete() {
        let r = verify_free_adjunction(&["s", "t"], &pool(), &Settings::default()).unwrap();
        assert!(r.is_ok());
    }
}
