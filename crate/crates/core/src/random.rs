//! Seeded generators of valid DSCs and ground maps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::EventSet;
use crate::dsc::{minimal_sets, Dsc, PreDsc};
use crate::ground::Ground;
use crate::morphisms::GroundMap;

#[derive(Clone, Copy, Debug)]
pub struct RandomOptions {
    pub events: usize,
    /// Most depsets drawn per event before taking minimal sets.
    pub max_choices: usize,
    /// One depset per event.
    pub dsnc: bool,
    /// Chance that an event copies the dependencies of an earlier one and
    /// is interchangeable with it wherever it is used.
    pub twin_rate: f64,
}

impl RandomOptions {
    pub fn new(events: usize) -> Self {
        Self {
            events,
            max_choices: 3,
            dsnc: false,
            twin_rate: 0.0,
        }
    }
}

/// A reachable subset of the first `upto` events: grow from `∅` by enabled
/// events, stopping at random.
fn random_complete(rng: &mut impl Rng, dep: &[Vec<EventSet>], upto: usize) -> EventSet {
    let mut s = EventSet::new();
    loop {
        let enabled: Vec<usize> = (0..upto)
            .filter(|&x| !s.contains(x) && dep[x].iter().any(|d| d.is_subset(&s)))
            .collect();
        if enabled.is_empty() || rng.gen_bool(0.45) {
            return s;
        }
        s.insert(*enabled.choose(rng).expect("nonempty"));
    }
}

/// Adds `(D ∖ a) ∪ {b}` and `(D ∖ b) ∪ {a}` until the family is closed.
fn swap_close(family: &mut Vec<EventSet>, a: usize, b: usize) {
    let mut i = 0;
    while i < family.len() {
        let d = family[i].clone();
        for (x, y) in [(a, b), (b, a)] {
            if d.contains(x) && !d.contains(y) {
                let s = d.without(x).with(y);
                if !family.contains(&s) {
                    family.push(s);
                }
            }
        }
        i += 1;
    }
}

/// Events are added in a random order; each draws its depsets among the
/// reachable sets of the events before it, so D3 holds by construction.
pub fn random_dsc(rng: &mut impl Rng, opts: &RandomOptions) -> Dsc {
    let n = opts.events;
    let mut dep: Vec<Vec<EventSet>> = Vec::with_capacity(n);
    let mut twins: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        if i > 0 && rng.gen_bool(opts.twin_rate) {
            let j = rng.gen_range(0..i);
            dep.push(dep[j].clone());
            twins.push((j, i));
            continue;
        }
        let k = if opts.dsnc { 1 } else { rng.gen_range(1..=opts.max_choices.max(1)) };
        let mut family: Vec<EventSet> = (0..k).map(|_| random_complete(rng, &dep, i)).collect();
        for &(a, b) in &twins {
            swap_close(&mut family, a, b);
        }
        dep.push(minimal_sets(family));
    }
    let mut names: Vec<usize> = (0..n).collect();
    names.shuffle(rng);
    let labels: Vec<String> = names.iter().map(|k| format!("e{k}")).collect();
    let ground = Ground::new(labels.clone()).expect("distinct labels");
    let slot: Vec<usize> = labels.iter().map(|l| ground.id(l).expect("own label").0).collect();
    let mut placed = vec![Vec::new(); n];
    for (i, family) in dep.into_iter().enumerate() {
        placed[slot[i]] = family
            .iter()
            .map(|d| d.iter().map(|x| slot[x]).collect())
            .collect();
    }
    Dsc::new(PreDsc::new(ground, placed).expect("in range")).expect("valid by construction")
}

pub fn random_ground_map(rng: &mut impl Rng, source_len: usize, target_len: usize) -> GroundMap {
    let images = (0..source_len).map(|_| rng.gen_range(0..target_len)).collect();
    GroundMap::new(images, target_len).expect("images in range")
}

/// `count` DSCs with 1 to `max_events` events from a fixed seed. Every
/// fourth is a DSNC and every third that is not has twin events.
pub fn random_pool(seed: u64, count: usize, max_events: usize) -> Vec<Dsc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let mut opts = RandomOptions::new(rng.gen_range(1..=max_events.max(1)));
            opts.dsnc = i % 4 == 0;
            opts.twin_rate = if i % 3 == 0 && !opts.dsnc { 0.3 } else { 0.0 };
            random_dsc(&mut rng, &opts)
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pools_are_valid_and_reproducible() {
        let a = random_pool(7, 60, 7);
        let b = random_pool(7, 60, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|d| d.validate().is_ok()));
        assert!(a.iter().step_by(4).all(|d| d.is_dsnc()));
        assert!(a.iter().any(|d| !d.is_dsnc()));
        assert_ne!(random_pool(8, 60, 7), a);
    }

    #[test]
    fn twins_are_mutual_versions() {
        let mut r = rng(3);
        let mut found = 0;
        for _ in 0..40 {
            let mut o = RandomOptions::new(5);
            o.twin_rate = 0.5;
            let d = random_dsc(&mut r, &o);
            let rel = crate::versions::VersionRelation::new(&d).unwrap();
            found += rel.equivalence_classes().iter().filter(|c| c.len() > 1).count();
        }
        assert!(found > 0);
    }
}
