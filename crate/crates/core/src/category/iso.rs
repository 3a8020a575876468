use crate::bitset::EventSet;
use crate::dsc::Dsc;
use crate::error::{Error, Result};
use crate::exec::Caps;
use crate::morphisms::GroundMap;

/// Per-event data that any isomorphism must preserve.
fn signature(d: &Dsc, e: usize) -> (Vec<usize>, usize) {
    let mut sizes: Vec<usize> = d.deps()[e].iter().map(EventSet::len).collect();
    sizes.sort_unstable();
    let used_by = d.deps().iter().filter(|f| f.iter().any(|s| s.contains(e))).count();
    (sizes, used_by)
}

/// A bijection `φ` with `dep_b(φ(e)) = φ(dep_a(e))` for every event, if one
/// exists.
pub fn dsc_isomorphism(a: &Dsc, b: &Dsc) -> Result<Option<GroundMap>> {
    let cap = Caps::default().iso;
    if a.len() > cap {
        return Err(Error::cap("isomorphism search", a.len(), cap));
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    let n = a.len();
    let sa: Vec<_> = (0..n).map(|e| signature(a, e)).collect();
    let sb: Vec<_> = (0..n).map(|e| signature(b, e)).collect();
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return Ok(None);
    }
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &sa, &sb, 0, &mut images, &mut used) {
        Ok(Some(GroundMap::new(images, n)?))
    } else {
        Ok(None)
    }
}

pub fn is_isomorphic(a: &Dsc, b: &Dsc) -> Result<bool> {
    Ok(dsc_isomorphism(a, b)?.is_some())
}

/// Checks every event whose depsets are fully mapped after assigning `k`.
fn consistent(a: &Dsc, b: &Dsc, images: &[usize], k: usize) -> bool {
    (0..=k).all(|e| {
        let family = &a.deps()[e];
        if family.iter().any(|s| s.iter().any(|x| x > k)) {
            return true;
        }
        let mut mapped: Vec<EventSet> = family
            .iter()
            .map(|s| s.iter().map(|x| images[x]).collect())
            .collect();
        mapped.sort();
        mapped == b.deps()[images[e]]
    })
}

fn extend(
    a: &Dsc,
    b: &Dsc,
    sa: &[(Vec<usize>, usize)],
    sb: &[(Vec<usize>, usize)],
    k: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if k == images.len() {
        return true;
    }
    for y in 0..images.len() {
        if used[y] || sa[k] != sb[y] {
            continue;
        }
        images[k] = y;
        used[y] = true;
        if consistent(a, b, images, k) && extend(a, b, sa, sb, k + 1, images, used) {
            return true;
        }
        used[y] = false;
    }
    images[k] = usize::MAX;
    false
}
