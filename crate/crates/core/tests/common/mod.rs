//! Brute-force oracles over `u64` masks. They read only `dep` from the
//! library and recompute everything else from the definitions.
#![allow(dead_code)]

use std::path::PathBuf;

use dsc_core::random::random_pool;
use dsc_core::{Dsc, EventId, EventSet, PreDsc};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Every DSC fixture file plus the notation examples used throughout.
pub fn fixtures() -> Vec<(String, Dsc)> {
    let mut out = Vec::new();
    let mut names: Vec<_> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    for path in names {
        let text = std::fs::read_to_string(&path).unwrap();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let parsed = if name.ends_with(".dsc") {
            text.parse::<PreDsc>().ok()
        } else if text.contains("\"dep\"") {
            PreDsc::from_json(&text).ok()
        } else {
            None
        };
        if let Some(p) = parsed {
            out.push((name, Dsc::new(p).unwrap()));
        }
    }
    for (name, s) in [
        ("a.b&c", "a: b,c; b; c"),
        ("a.b,c.b", "a: b; c: b; b"),
        ("r.s|t", "r: s | t; s; t"),
        ("chain-collapse", "a: b,c; b: c; c"),
        ("diamond", "d: b,c | a,b | a,c; a; b; c"),
    ] {
        out.push((name.to_string(), s.parse().unwrap()));
    }
    out
}

pub fn small_fixtures(max_events: usize) -> Vec<(String, Dsc)> {
    fixtures().into_iter().filter(|(_, d)| d.len() <= max_events).collect()
}

pub fn pool(seed: u64, count: usize, max_events: usize) -> Vec<Dsc> {
    random_pool(seed, count, max_events)
}

pub fn mask(s: &EventSet) -> u64 {
    s.iter().fold(0, |m, i| m | 1 << i)
}

pub fn unmask(m: u64) -> EventSet {
    (0..64).filter(|i| m >> i & 1 == 1).collect()
}

pub fn deps(d: &Dsc) -> Vec<Vec<u64>> {
    d.deps().iter().map(|f| f.iter().map(mask).collect()).collect()
}

pub fn sub(a: u64, b: u64) -> bool {
    a & !b == 0
}

pub fn is_complete(dep: &[Vec<u64>], x: u64) -> bool {
    (0..dep.len()).filter(|i| x >> i & 1 == 1).all(|i| dep[i].iter().any(|&d| sub(d, x)))
}

/// Power-set scan, ascending by mask.
pub fn complete_sets(d: &Dsc) -> Vec<u64> {
    let dep = deps(d);
    (0..1u64 << d.len()).filter(|&x| is_complete(&dep, x)).collect()
}

/// Sets reachable from `∅` by adding one enabled event at a time.
pub fn bfs_reachable(d: &Dsc) -> Vec<u64> {
    let dep = deps(d);
    let mut seen = std::collections::BTreeSet::from([0u64]);
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for (e, family) in dep.iter().enumerate() {
            if x >> e & 1 == 0 && family.iter().any(|&dd| sub(dd, x)) && seen.insert(x | 1 << e) {
                frontier.push(x | 1 << e);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn image(images: &[usize], x: u64) -> u64 {
    (0..images.len()).filter(|i| x >> i & 1 == 1).fold(0, |m, i| m | 1 << images[i])
}

pub fn preimage(images: &[usize], y: u64) -> u64 {
    (0..images.len()).filter(|&i| y >> images[i] & 1 == 1).fold(0, |m, i| m | 1 << i)
}

/// For every depset `D'` of `f(e)` some depset `D` of `e` has
/// `f(D) ⊆ D' ∪ {f(e)}`.
pub fn is_morphism(source: &Dsc, target: &Dsc, images: &[usize]) -> bool {
    let (s, t) = (deps(source), deps(target));
    (0..s.len()).all(|e| {
        let fe = images[e];
        t[fe].iter().all(|&d2| s[e].iter().any(|&d| sub(image(images, d), d2 | 1 << fe)))
    })
}

/// Every map from `source` to `target`, as image vectors.
pub fn all_maps(source_len: usize, target_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..source_len {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..target_len).map(move |y| {
                    let mut n = m.clone();
                    n.push(y);
                    n
                })
            })
            .collect();
    }
    out
}

/// The greatest member of a union-closed family below `a ∩ b`.
pub fn family_meet(family: &[u64], a: u64, b: u64) -> u64 {
    family.iter().filter(|&&x| sub(x, a & b)).fold(0, |m, &x| m | x)
}

pub fn family_covers(family: &[u64], x: u64, y: u64) -> bool {
    x != y && sub(x, y) && !family.iter().any(|&z| z != x && z != y && sub(x, z) && sub(z, y))
}

/// A union-closed family with its meet and cover tables.
pub struct Tables {
    pub sets: Vec<u64>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub covers: Vec<Vec<bool>>,
}

impl Tables {
    pub fn new(family: &[u64]) -> Self {
        let sets = family.to_vec();
        let n = sets.len();
        let index = |m: u64| sets.iter().position(|&x| x == m).expect("closed family");
        let meet = (0..n)
            .map(|i| (0..n).map(|j| index(family_meet(&sets, sets[i], sets[j]))).collect())
            .collect();
        let join = (0..n).map(|i| (0..n).map(|j| index(sets[i] | sets[j])).collect()).collect();
        let covers = (0..n)
            .map(|i| (0..n).map(|j| family_covers(&sets, sets[i], sets[j])).collect())
            .collect();
        Self { sets, meet, join, covers }
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.sets.len();
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| self.meet[x][self.join[y][z]] == self.join[self.meet[x][y]][self.meet[x][z]]))
        })
    }

    /// If `x` and `y` both cover `x ∧ y` then `x ∨ y` covers both.
    pub fn is_upper_semimodular(&self) -> bool {
        let n = self.sets.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (m, j) = (self.meet[x][y], self.join[x][y]);
                !(self.covers[m][x] && self.covers[m][y]) || (self.covers[x][j] && self.covers[y][j])
            })
        })
    }

    /// Three pairwise incomparable elements with one common pairwise join
    /// and one common pairwise meet.
    pub fn has_m3(&self) -> bool {
        let n = self.sets.len();
        let inc = |a: usize, b: usize| !sub(self.sets[a], self.sets[b]) && !sub(self.sets[b], self.sets[a]);
        (0..n).any(|x| {
            (x + 1..n).filter(|&y| inc(x, y)).any(|y| {
                (y + 1..n).filter(|&z| inc(x, z) && inc(y, z)).any(|z| {
                    let j = self.join[x][y];
                    let m = self.meet[x][y];
                    self.join[y][z] == j && self.join[x][z] == j && self.meet[y][z] == m && self.meet[x][z] == m
                })
            })
        })
    }
}

/// Members with exactly one lower cover.
pub fn family_join_irreducibles(family: &[u64]) -> Vec<u64> {
    family
        .iter()
        .copied()
        .filter(|&x| family.iter().filter(|&&y| family_covers(family, y, x)).count() == 1)
        .collect()
}

/// Downsets of the join-irreducibles of a union-closed family.
pub fn downset_count_of_join_irreducibles(family: &[u64]) -> usize {
    let j = family_join_irreducibles(family);
    (0..1u64 << j.len())
        .filter(|&s| {
            (0..j.len())
                .filter(|a| s >> a & 1 == 1)
                .all(|a| (0..j.len()).all(|b| !sub(j[b], j[a]) || s >> b & 1 == 1))
        })
        .count()
}

/// `dep(e) ⊆ dep(e')` and every depset containing `e` stays a depset of the
/// same event when `e` is replaced by `e'`.
pub fn higher_version(d: &Dsc, e: usize, e2: usize) -> bool {
    let dep = deps(d);
    if !dep[e].iter().all(|x| dep[e2].contains(x)) {
        return false;
    }
    dep.iter()
        .all(|family| family.iter().filter(|&&s| s >> e & 1 == 1).all(|&s| family.contains(&(s & !(1 << e) | 1 << e2))))
}

pub fn vers(d: &Dsc, e: usize) -> u64 {
    (0..d.len()).filter(|&e2| higher_version(d, e, e2)).fold(0, |m, e2| m | 1 << e2)
}

pub fn v(d: &Dsc, x: u64) -> u64 {
    (0..d.len()).filter(|i| x >> i & 1 == 1).fold(0, |m, i| m | vers(d, i))
}

pub fn id(i: usize) -> EventId {
    EventId(i)
}
