mod common;

use std::sync::Arc;

use common::*;
use dsc_core::antimatroid::{is_antimatroid_morphism, phi, poset_antimatroid, psi};
use dsc_core::category::{coproduct, product, verify_free_adjunction};
use dsc_core::completion::{bruns_lakser, dlattice_to_dsnc};
use dsc_core::lattice::downsets;
use dsc_core::morphisms::{enumerate_morphisms, MorphismClass};
use dsc_core::random::{random_dsc, random_ground_map, rng, RandomOptions};
use dsc_core::versions::v_closure;
use dsc_core::{
    Antimatroid, Dsc, DscMorphism, EventSet, FinitePoset, GeneralEventStructure, Ground, PreDsc, Settings, Shape,
};
use proptest::prelude::*;

fn arb_dsc(max_events: usize) -> impl Strategy<Value = Dsc> {
    (any::<u64>(), 1..=max_events, any::<bool>(), 0u8..3).prop_map(|(seed, n, dsnc, twins)| {
        let mut opts = RandomOptions::new(n);
        opts.dsnc = dsnc;
        opts.twin_rate = if dsnc { 0.0 } else { f64::from(twins) * 0.2 };
        random_dsc(&mut rng(seed), &opts)
    })
}

fn arb_dsnc(max_events: usize) -> impl Strategy<Value = Dsc> {
    (any::<u64>(), 1..=max_events).prop_map(|(seed, n)| {
        let mut opts = RandomOptions::new(n);
        opts.dsnc = true;
        random_dsc(&mut rng(seed), &opts)
    })
}

/// A family of arbitrary depsets per event, not necessarily valid.
fn arb_predsc(max_events: usize) -> impl Strategy<Value = PreDsc> {
    (1..=max_events)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u64..1 << n, 1..4), n))
        .prop_map(|families| {
            let n = families.len();
            let ground = Ground::new((0..n).map(|i| format!("x{i}"))).unwrap();
            let dep = families
                .into_iter()
                .map(|f| f.into_iter().map(unmask).collect())
                .collect();
            PreDsc::new(ground, dep).unwrap()
        })
}

/// A poset on `n` points from random pairs `i < j`.
fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..n * 2)))
        .prop_map(|(n, pairs)| {
            let strict: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a < b).collect();
            FinitePoset::from_pairs((0..n).map(|i| format!("p{i}")).collect(), &strict).unwrap()
        })
}

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig::with_cases(n)
}

proptest! {
    #![proptest_config(cases(96))]

    #[test]
    fn reachable_iff_complete(d in arb_dsc(8)) {
        let reachable = bfs_reachable(&d);
        prop_assert_eq!(&reachable, &complete_sets(&d));
        for x in 0..1u64 << d.len() {
            prop_assert_eq!(d.is_reachable(&unmask(x)).unwrap(), reachable.binary_search(&x).is_ok());
            prop_assert_eq!(d.is_complete(&unmask(x)).unwrap(), reachable.binary_search(&x).is_ok());
        }
    }

    #[test]
    fn rdp_is_union_closed_and_meets_are_greatest(d in arb_dsc(7)) {
        let family = complete_sets(&d);
        for &a in &family {
            for &b in &family {
                prop_assert!(family.binary_search(&(a | b)).is_ok());
                let m = mask(&d.meet(&unmask(a), &unmask(b)).unwrap());
                prop_assert!(family.binary_search(&m).is_ok());
                prop_assert!(sub(m, a & b));
                prop_assert!(family.iter().filter(|&&c| sub(c, a & b)).all(|&c| sub(c, m)));
            }
        }
    }

    #[test]
    fn join_irreducibles_match_definition(d in arb_dsc(8)) {
        let mut lib: Vec<u64> = d.join_irreducibles_of_rdp().iter().map(mask).collect();
        let mut oracle = family_join_irreducibles(&complete_sets(&d));
        lib.sort();
        oracle.sort();
        prop_assert_eq!(lib, oracle);
    }

    #[test]
    fn e_minimal_sets_are_depsets_with_e(d in arb_dsc(7)) {
        for e in 0..d.len() {
            let brute = d.e_minimal_complete_sets_brute(id(e)).unwrap();
            let mut direct = d.e_minimal_complete_sets(id(e)).unwrap();
            let mut brute_sorted = brute.clone();
            brute_sorted.sort();
            direct.sort();
            prop_assert_eq!(&direct, &brute_sorted);
            for m in &brute {
                let matching = d.dep(id(e)).iter().filter(|dd| dd.with(e) == *m).count();
                prop_assert_eq!(matching, 1);
            }
        }
    }

    #[test]
    fn minimal_enablings_invert_upward_closure(d in arb_dsc(6)) {
        let p = d.as_predsc();
        let ges = GeneralEventStructure::from_predsc(p);
        prop_assert_eq!(&ges.minimal_enablings().unwrap(), p);
    }

    #[test]
    fn irredundant_hull_is_idempotent_antichain(p in arb_predsc(6)) {
        let h = p.irredundant_hull();
        prop_assert!(h.is_irredundant());
        prop_assert_eq!(&h.irredundant_hull(), &h);
        for family in h.deps() {
            for a in family {
                for b in family {
                    prop_assert!(a == b || !a.is_subset(b));
                }
            }
        }
    }

    #[test]
    fn downsets_are_distributive(p in arb_poset(6)) {
        let l = downsets(&p).unwrap();
        prop_assert!(l.lattice().is_distributive());
        prop_assert_eq!(l.len(), (0..1u64 << p.len()).filter(|&s| p.is_down_closed(&unmask(s))).count());
    }

    #[test]
    fn distributive_iff_no_m3_no_n5(d in arb_dsc(6)) {
        let rdp = d.rdp().unwrap();
        let l = rdp.lattice();
        let forbidden = l.find_forbidden_sublattice(Shape::M3).is_some()
            || l.find_forbidden_sublattice(Shape::N5).is_some();
        prop_assert_eq!(l.is_distributive(), !forbidden);
        prop_assert_eq!(l.is_distributive(), Tables::new(&complete_sets(&d)).is_distributive());
    }

    #[test]
    fn covers_generate_the_order(d in arb_dsc(6)) {
        let rdp = d.rdp().unwrap();
        let l = rdp.lattice();
        let n = l.len();
        let mut reach = vec![vec![false; n]; n];
        for &(x, y) in &l.covers().pairs {
            reach[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        for (i, row) in reach.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                prop_assert_eq!(r, l.lt(i, j));
            }
        }
    }

    #[test]
    fn phi_psi_round_trip(d in arb_dsc(7)) {
        let m = phi(&d).unwrap();
        let back = psi(&m).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(phi(&back).unwrap(), m.clone());
        prop_assert!(m.lattice().unwrap().lattice().is_diamond_free_semimodular());
    }

    #[test]
    fn morphism_routes_agree(s in arb_dsc(5), t in arb_dsc(5), seed in any::<u64>()) {
        let f = random_ground_map(&mut rng(seed), s.len(), t.len());
        let oracle = is_morphism(&s, &t, f.images());
        let anti = is_antimatroid_morphism(&f, &phi(&s).unwrap(), &phi(&t).unwrap());
        let m = DscMorphism::new(s, t, f).unwrap();
        prop_assert_eq!(m.is_morphism(), oracle);
        prop_assert_eq!(anti, oracle);
        prop_assert!(m.verify(&Settings::default()).is_ok());
    }

    #[test]
    fn poset_maps_are_antimatroid_maps(p in arb_poset(4), q in arb_poset(4)) {
        let (a, b) = (poset_antimatroid(&p).unwrap(), poset_antimatroid(&q).unwrap());
        for images in all_maps(p.len(), q.len()) {
            let monotone = (0..p.len()).all(|x| (0..p.len()).all(|y| !p.leq(x, y) || q.leq(images[x], images[y])));
            let f = dsc_core::GroundMap::new(images, q.len()).unwrap();
            prop_assert_eq!(is_antimatroid_morphism(&f, &a, &b), monotone);
        }
    }

    #[test]
    fn morphism_classes_compose(a in arb_dsc(3), b in arb_dsc(3), c in arb_dsc(3)) {
        let (a, b, c) = (Arc::new(a), Arc::new(b), Arc::new(c));
        for class in [MorphismClass::Morphism, MorphismClass::Comorphism, MorphismClass::Bimorphism] {
            prop_assert!(DscMorphism::identity(a.clone()).is_bimorphism());
            let fs = enumerate_morphisms(&a, &b, class).unwrap();
            let gs = enumerate_morphisms(&b, &c, class).unwrap();
            for f in fs.iter().take(8) {
                for g in gs.iter().take(8) {
                    let h = f.then(g).unwrap();
                    let ok = match class {
                        MorphismClass::Morphism => h.is_morphism(),
                        MorphismClass::Comorphism => h.is_comorphism(),
                        _ => h.is_bimorphism(),
                    };
                    prop_assert!(ok);
                }
            }
        }
    }

    #[test]
    fn bimorphism_preimages_preserve_lattice_ops(a in arb_dsc(3), b in arb_dsc(3)) {
        let (a, b) = (Arc::new(a), Arc::new(b));
        for f in enumerate_morphisms(&a, &b, MorphismClass::Bimorphism).unwrap() {
            let l = f.induced_preimage_map().unwrap();
            prop_assert!(l.preserves_joins());
            prop_assert!(l.preserves_meets());
        }
    }

    #[test]
    fn constructions_sit_over_sets(x in arb_dsc(3), y in arb_dsc(3)) {
        let (x, y) = (Arc::new(x), Arc::new(y));
        let p = product(&x, &y).unwrap();
        prop_assert_eq!(p.object.len(), x.len() * y.len());
        prop_assert!(p.legs.iter().all(|l| l.is_morphism()));
        let c = coproduct(&x, &y).unwrap();
        prop_assert_eq!(c.object.len(), x.len() + y.len());
        prop_assert!(c.legs.iter().all(|l| l.is_morphism()));
        let sum = c.object.rdp().unwrap();
        let pair = x.rdp().unwrap().lattice().product(y.rdp().unwrap().lattice()).unwrap();
        prop_assert!(sum.lattice().is_isomorphic(&pair, 1 << 16).unwrap());
    }

    #[test]
    fn bruns_lakser_is_distributive_and_decomposes(d in arb_dsc(6)) {
        let rdp = d.rdp().unwrap();
        let bl = bruns_lakser(rdp.lattice()).unwrap();
        prop_assert!(bl.lattice().is_distributive());
        for s in bl.base.sets() {
            let union = bl.members(s).into_iter().fold(EventSet::new(), |acc, x| acc.union(bl.embed(x)));
            prop_assert_eq!(&union, s);
        }
        prop_assert_eq!(d.is_dsnc(), rdp.lattice().is_distributive());
    }

    #[test]
    fn birkhoff_round_trip(d in arb_dsnc(6)) {
        let rdp = d.rdp().unwrap();
        let back = dlattice_to_dsnc(rdp.lattice()).unwrap();
        prop_assert!(back.is_dsnc());
        prop_assert!(back.rdp().unwrap().lattice().is_isomorphic(rdp.lattice(), 1 << 16).unwrap());
    }

    #[test]
    fn version_closure_laws(d in arb_dsc(7)) {
        let family = complete_sets(&d);
        for e in 0..d.len() {
            prop_assert!(vers(&d, e) >> e & 1 == 1);
        }
        let close = |x: u64| mask(&v_closure(&d, &unmask(x)).unwrap());
        for &x in family.iter().take(24) {
            for &y in family.iter().take(24) {
                let (vx, vy) = (close(x), close(y));
                prop_assert!(sub(vx | vy, close(x | y)));
                prop_assert_eq!(close(vx | vy), close(x | y));
            }
        }
    }
}

proptest! {
    #![proptest_config(cases(12))]

    #[test]
    fn free_adjunction(k in 1usize..=3, d in arb_dsc(3)) {
        let labels: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
        let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
        let r = verify_free_adjunction(&labels, &[Arc::new(d)], &Settings::default()).unwrap();
        prop_assert!(r.is_ok(), "{:?}", r.failures);
    }

    #[test]
    fn parallel_matches_sequential(d in arb_dsc(8)) {
        let a = d.rdp_with(&Settings::parallel()).unwrap();
        let b = d.rdp_with(&Settings::sequential()).unwrap();
        prop_assert_eq!(a.sets(), b.sets());
        prop_assert_eq!(
            Antimatroid::new(d.ground().clone(), a.sets().to_vec()).unwrap(),
            phi(&d).unwrap()
        );
    }
}
