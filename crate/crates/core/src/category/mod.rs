//! Limits and related constructions in the category of DSCs.
//!
//! Event naming: products use `(x,y)`, coproducts `L:x` / `R:y`, doubling
//! `b#1` / `b#2`, and quotient blocks join their members with `+`.

mod coequalizer;
mod iso;
mod universal;

use std::sync::Arc;

use crate::bitset::EventSet;
use crate::dsc::{minimal_sets, Dsc, PreDsc};
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::ground::{EventId, Ground};
use crate::morphisms::{DscMorphism, GroundMap};

pub use coequalizer::{coequalizer_search, coequalizer_search_with, CoequalizerCandidate, CoequalizerReport};
pub use iso::{dsc_isomorphism, is_isomorphic};
pub use universal::{
    verify_coproduct, verify_equalizer, verify_free_adjunction, verify_product, verify_pullback,
    UniversalReport,
};

/// An object with its structure maps (projections, injections or an
/// inclusion).
#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub object: Arc<Dsc>,
    pub legs: Vec<DscMorphism>,
}

/// The DSC with no events.
pub fn initial() -> Dsc {
    Dsc::empty()
}

/// One event `*` with `dep(*) = {∅}`.
pub fn terminal() -> Dsc {
    Dsc::discrete(["*"]).expect("one label")
}

/// The discrete DSC on a set of labels; left adjoint to the forgetful functor.
pub fn free<I, S>(labels: I) -> Result<Dsc>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    Dsc::discrete(labels)
}

fn pair_label(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// Ground is `E × E'`; `dep((e,e'))` has one depset
/// `e×D' ∪ D×e' ∪ D×D'` per pair `(D, D')`, then the hull is taken.
pub fn product(x: &Arc<Dsc>, y: &Arc<Dsc>) -> Result<ConstructionResult> {
    product_with(x, y, &Settings::default())
}

pub fn product_with(x: &Arc<Dsc>, y: &Arc<Dsc>, settings: &Settings) -> Result<ConstructionResult> {
    let (n, m) = (x.len(), y.len());
    if n * m > settings.caps.product {
        return Err(Error::cap("product ground set", n * m, settings.caps.product));
    }
    let labels: Vec<String> = (0..n * m)
        .map(|k| pair_label(x.label(EventId(k / m)), y.label(EventId(k % m))))
        .collect();
    let ground = Ground::new(labels.clone())?;
    let slot: Vec<usize> = labels.iter().map(|l| ground.id(l).expect("own label").0).collect();
    let at = |i: usize, j: usize| slot[i * m + j];

    let mut dep = vec![Vec::new(); n * m];
    for i in 0..n {
        for j in 0..m {
            let mut family = Vec::new();
            for d in x.dep(EventId(i)) {
                for dy in y.dep(EventId(j)) {
                    let mut s = EventSet::new();
                    for b in dy {
                        s.insert(at(i, b));
                    }
                    for a in d {
                        s.insert(at(a, j));
                        for b in dy {
                            s.insert(at(a, b));
                        }
                    }
                    family.push(s);
                }
            }
            dep[at(i, j)] = minimal_sets(family);
        }
    }
    let object = Arc::new(Dsc::new(PreDsc::new(ground, dep)?)?);
    let mut p1 = vec![0; n * m];
    let mut p2 = vec![0; n * m];
    for i in 0..n {
        for j in 0..m {
            p1[at(i, j)] = i;
            p2[at(i, j)] = j;
        }
    }
    let legs = vec![
        DscMorphism::new(object.clone(), x.clone(), GroundMap::new(p1, n)?)?,
        DscMorphism::new(object.clone(), y.clone(), GroundMap::new(p2, m)?)?,
    ];
    Ok(ConstructionResult { object, legs })
}

/// The map `z ↦ (f(z), g(z))` into a product built by [`product`].
pub fn pair(f: &DscMorphism, g: &DscMorphism, product: &ConstructionResult) -> Result<DscMorphism> {
    let (p1, p2) = (&product.legs[0], &product.legs[1]);
    if f.source() != g.source() || f.target() != p1.target() || g.target() != p2.target() {
        return Err(Error::Domain("pairing needs maps Z → X and Z → Y".into()));
    }
    let obj = &product.object;
    let images = (0..f.source().len())
        .map(|z| {
            let l = pair_label(
                f.target().label(EventId(f.map().apply(z))),
                g.target().label(EventId(g.map().apply(z))),
            );
            obj.id(&l).map(EventId::index)
        })
        .collect::<Result<Vec<_>>>()?;
    DscMorphism::new(f.source().clone(), obj.clone(), GroundMap::new(images, obj.len())?)
}

/// Disjoint union with events tagged `L:` and `R:`.
pub fn coproduct(x: &Arc<Dsc>, y: &Arc<Dsc>) -> Result<ConstructionResult> {
    let tag = |t: &str, d: &Dsc| -> Vec<String> {
        d.ground().labels().iter().map(|l| format!("{t}:{l}")).collect()
    };
    let (lx, ly) = (tag("L", x), tag("R", y));
    let ground = Ground::new(lx.iter().chain(&ly).cloned())?;
    let inl: Vec<usize> = lx.iter().map(|l| ground.id(l).expect("own label").0).collect();
    let inr: Vec<usize> = ly.iter().map(|l| ground.id(l).expect("own label").0).collect();
    let mut dep = vec![Vec::new(); ground.len()];
    for (side, inj) in [(x, &inl), (y, &inr)] {
        for e in side.ground().ids() {
            dep[inj[e.0]] = side
                .dep(e)
                .iter()
                .map(|d| d.iter().map(|a| inj[a]).collect())
                .collect();
        }
    }
    let object = Arc::new(Dsc::new(PreDsc::new(ground, dep)?)?);
    let legs = vec![
        DscMorphism::new(x.clone(), object.clone(), GroundMap::new(inl, object.len())?)?,
        DscMorphism::new(y.clone(), object.clone(), GroundMap::new(inr, object.len())?)?,
    ];
    Ok(ConstructionResult { object, legs })
}

/// The map `X + Y → Z` restricting to `f` and `g`.
pub fn copair(f: &DscMorphism, g: &DscMorphism, coproduct: &ConstructionResult) -> Result<DscMorphism> {
    let (i1, i2) = (&coproduct.legs[0], &coproduct.legs[1]);
    if f.target() != g.target() || f.source() != i1.source() || g.source() != i2.source() {
        return Err(Error::Domain("copairing needs maps X → Z and Y → Z".into()));
    }
    let mut images = vec![0; coproduct.object.len()];
    for (m, inj) in [(f, i1), (g, i2)] {
        for (x, &slot) in inj.map().images().iter().enumerate() {
            images[slot] = m.map().apply(x);
        }
    }
    DscMorphism::new(coproduct.object.clone(), f.target().clone(), GroundMap::new(images, f.target().len())?)
}

/// Restriction to `a`: `dep|_A(x)` = minimal members of `{D ∩ A}`.
pub fn subset_dsc(d: &Dsc, a: &EventSet) -> Result<Dsc> {
    Ok(subset_inclusion(&Arc::new(d.clone()), a)?.object.as_ref().clone())
}

/// [`subset_dsc`] with its inclusion into `d`.
pub fn subset_inclusion(d: &Arc<Dsc>, a: &EventSet) -> Result<ConstructionResult> {
    d.ground().check(a)?;
    let members: Vec<usize> = a.iter().collect();
    let ground = Ground::new(members.iter().map(|&i| d.label(EventId(i)).to_string()))?;
    // Labels keep their relative order, so position in `members` is the new index.
    let mut local = vec![usize::MAX; d.len()];
    for (k, &i) in members.iter().enumerate() {
        local[i] = k;
    }
    let dep = members
        .iter()
        .map(|&i| {
            minimal_sets(
                d.dep(EventId(i))
                    .iter()
                    .map(|dd| dd.intersection(a).iter().map(|x| local[x]).collect())
                    .collect(),
            )
        })
        .collect();
    let object = Arc::new(Dsc::new(PreDsc::new(ground, dep)?)?);
    let inclusion = DscMorphism::new(object.clone(), d.clone(), GroundMap::new(members, d.len())?)?;
    Ok(ConstructionResult {
        object,
        legs: vec![inclusion],
    })
}

fn require_parallel(f: &DscMorphism, g: &DscMorphism) -> Result<()> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Contract("maps must share source and target".into()));
    }
    f.require_morphism("equalizer")?;
    g.require_morphism("equalizer")
}

/// The subset DSC on `{e : f(e) = g(e)}` with its inclusion.
pub fn equalizer(f: &DscMorphism, g: &DscMorphism) -> Result<ConstructionResult> {
    require_parallel(f, g)?;
    let agree: EventSet = (0..f.source().len())
        .filter(|&e| f.map().apply(e) == g.map().apply(e))
        .collect();
    subset_inclusion(f.source(), &agree)
}

/// The equalizer of `f ∘ π₁` and `g ∘ π₂` out of `X × Y`; legs go to `X`
/// and `Y`.
pub fn pullback(f: &DscMorphism, g: &DscMorphism) -> Result<ConstructionResult> {
    if f.target() != g.target() {
        return Err(Error::Contract("pullback needs a common target".into()));
    }
    f.require_morphism("pullback")?;
    g.require_morphism("pullback")?;
    let prod = product(f.source(), g.source())?;
    let a = prod.legs[0].then(f)?;
    let b = prod.legs[1].then(g)?;
    let eq = equalizer(&a, &b)?;
    let inc = &eq.legs[0];
    Ok(ConstructionResult {
        object: eq.object.clone(),
        legs: vec![inc.then(&prod.legs[0])?, inc.then(&prod.legs[1])?],
    })
}

/// `b` split into `b#1` and `b#2`, with the two maps `d → d''` that send `b`
/// to one copy each and fix everything else.
#[derive(Clone, Debug)]
pub struct Doubling {
    pub object: Arc<Dsc>,
    pub g1: DscMorphism,
    pub g2: DscMorphism,
}

/// Both copies inherit `dep(b)`; depsets containing `b` get both copies.
pub fn double_event(d: &Arc<Dsc>, b: EventId) -> Result<Doubling> {
    d.ground().check_id(b)?;
    let name = d.label(b);
    let (b1, b2) = (format!("{name}#1"), format!("{name}#2"));
    let mut labels: Vec<String> = d
        .ground()
        .labels()
        .iter()
        .filter(|l| l.as_str() != name)
        .cloned()
        .collect();
    labels.push(b1.clone());
    labels.push(b2.clone());
    let ground = Ground::new(labels)?;
    let (i1, i2) = (ground.id(&b1)?.0, ground.id(&b2)?.0);
    let kept: Vec<usize> = d
        .ground()
        .labels()
        .iter()
        .map(|l| ground.id(l).map_or(usize::MAX, |e| e.0))
        .collect();
    let image = |x: usize, copy: usize| -> usize { if x == b.0 { copy } else { kept[x] } };
    let rewrite = |dd: &EventSet| -> EventSet {
        dd.iter()
            .flat_map(|x| if x == b.0 { vec![i1, i2] } else { vec![image(x, i1)] })
            .collect()
    };
    let mut dep = vec![Vec::new(); ground.len()];
    for e in d.ground().ids() {
        let family: Vec<EventSet> = d.dep(e).iter().map(rewrite).collect();
        if e == b {
            dep[i1] = family.clone();
            dep[i2] = family;
        } else {
            dep[image(e.0, i1)] = family;
        }
    }
    let object = Arc::new(Dsc::new(PreDsc::new(ground, dep)?)?);
    let map = |copy| GroundMap::new((0..d.len()).map(|x| image(x, copy)).collect(), object.len());
    Ok(Doubling {
        g1: DscMorphism::new(d.clone(), object.clone(), map(i1)?)?,
        g2: DscMorphism::new(d.clone(), object.clone(), map(i2)?)?,
        object,
    })
}
