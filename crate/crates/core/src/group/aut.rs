use super::FiniteGroup;
use crate::bits::ElemSet;
use crate::error::{Error, Result};
use serde::Serialize;

/// Upper limit on the number of automorphisms materialized.
pub const AUT_LIMIT: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupAutomorphism {
    images: Vec<usize>,
}

impl GroupAutomorphism {
    pub fn identity(n: usize) -> Self {
        GroupAutomorphism { images: (0..n).collect() }
    }

    /// `x ↦ x⁻¹`, an automorphism only for abelian groups.
    pub fn inversion(g: &FiniteGroup) -> Option<Self> {
        g.is_abelian()
            .then(|| GroupAutomorphism { images: (0..g.order()).map(|x| g.inv(x)).collect() })
    }

    pub fn from_images(g: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        let n = g.order();
        if images.len() != n || images.iter().any(|&x| x >= n) {
            return Err(Error::InvalidParameter("image array has wrong shape".into()));
        }
        if ElemSet::from_elems(images.iter().copied()).len() != n {
            return Err(Error::InvalidParameter("images are not a bijection".into()));
        }
        let a = GroupAutomorphism { images };
        if !a.is_homomorphism(g) {
            return Err(Error::NotHomomorphism);
        }
        Ok(a)
    }

    pub fn is_homomorphism(&self, g: &FiniteGroup) -> bool {
        let n = g.order();
        (0..n).all(|a| (0..n).all(|b| self.images[g.mul(a, b)] == g.mul(self.images[a], self.images[b])))
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &GroupAutomorphism) -> Self {
        GroupAutomorphism { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        GroupAutomorphism { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// Generators picked greedily so that each one enlarges the generated subgroup
/// as much as possible.
pub(crate) fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let all = g.all();
    let mut gens = ElemSet::EMPTY;
    let mut list = Vec::new();
    let mut h = ElemSet::singleton(0);
    while h != all {
        let mut best = (0, ElemSet::EMPTY);
        for x in all.difference(h).iter() {
            let mut trial = gens;
            trial.insert(x);
            let k = g.generate(trial);
            if k.len() > best.1.len() {
                best = (x, k);
            }
        }
        gens.insert(best.0);
        list.push(best.0);
        h = best.1;
    }
    list
}

fn class_signature(g: &FiniteGroup) -> Vec<(usize, usize)> {
    (0..g.order())
        .map(|x| (g.elem_order(x), g.centralizer(ElemSet::singleton(x)).len()))
        .collect()
}

/// Extends the assignment `gens[k] ↦ imgs[k]` along the Cayley graph of the
/// generated subgroup, returning `None` on an inconsistency or collision.
fn partial_map(src: &FiniteGroup, dst: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; src.order()];
    let mut used = ElemSet::singleton(0);
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let e = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let e2 = src.mul(e, s);
            let i2 = dst.mul(map[e], t);
            if map[e2] == usize::MAX {
                if used.contains(i2) {
                    return None;
                }
                used.insert(i2);
                map[e2] = i2;
                queue.push(e2);
            } else if map[e2] != i2 {
                return None;
            }
        }
    }
    Some(map)
}

/// Visits every isomorphism `src → dst` until `visit` returns false.
fn search_isomorphisms(src: &FiniteGroup, dst: &FiniteGroup, mut visit: impl FnMut(Vec<usize>) -> bool) {
    if src.order() != dst.order() {
        return;
    }
    let gens = greedy_generators(src);
    let ss = class_signature(src);
    let ds = class_signature(dst);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..dst.order()).filter(|&y| ds[y] == ss[x]).collect())
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    fn rec(
        src: &FiniteGroup,
        dst: &FiniteGroup,
        gens: &[usize],
        cands: &[Vec<usize>],
        imgs: &mut Vec<usize>,
        visit: &mut dyn FnMut(Vec<usize>) -> bool,
    ) -> bool {
        let level = imgs.len();
        for &c in &cands[level] {
            imgs.push(c);
            if let Some(map) = partial_map(src, dst, &gens[..=level], imgs) {
                let go_on = if level + 1 == gens.len() { visit(map) } else { rec(src, dst, gens, cands, imgs, visit) };
                if !go_on {
                    return false;
                }
            }
            imgs.pop();
        }
        true
    }
    if gens.is_empty() {
        visit(vec![0]);
    } else {
        rec(src, dst, &gens, &cands, &mut imgs, &mut visit);
    }
}

/// All automorphisms of `g`, identity first.
pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<GroupAutomorphism>> {
    let mut out = Vec::new();
    let mut overflow = false;
    search_isomorphisms(g, g, |m| {
        out.push(GroupAutomorphism { images: m });
        if out.len() > AUT_LIMIT {
            overflow = true;
        }
        !overflow
    });
    if overflow {
        return Err(Error::budget("automorphism count", out.len(), AUT_LIMIT));
    }
    out.sort();
    let lg = (g.order() as f64).log2();
    debug_assert!((out.len() as f64).log2() <= lg * lg + 1e-9);
    Ok(out)
}

pub fn find_isomorphism(src: &FiniteGroup, dst: &FiniteGroup) -> Option<Vec<usize>> {
    if src.order() != dst.order() {
        return None;
    }
    let mut a: Vec<_> = (0..src.order()).map(|x| src.elem_order(x)).collect();
    let mut b: Vec<_> = (0..dst.order()).map(|x| dst.elem_order(x)).collect();
    a.sort_unstable();
    b.sort_unstable();
    if a != b || src.is_abelian() != dst.is_abelian() {
        return None;
    }
    let mut found = None;
    search_isomorphisms(src, dst, |m| {
        found = Some(m);
        false
    });
    found
}

pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn known_automorphism_counts() {
        assert_eq!(automorphism_group(&cyclic(2).unwrap()).unwrap().len(), 1);
        assert_eq!(automorphism_group(&cyclic(5).unwrap()).unwrap().len(), 4);
        assert_eq!(automorphism_group(&cyclic(1).unwrap()).unwrap().len(), 1);
    }

    /// Brute force: every bijection fixing 0 that respects the table.
    fn brute_force_count(g: &FiniteGroup) -> usize {
        fn rec(g: &FiniteGroup, img: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let k = img.len();
            if k == g.order() {
                let ok = (0..k).all(|a| (0..k).all(|b| img[g.mul(a, b)] == g.mul(img[a], img[b])));
                *count += ok as usize;
                return;
            }
            for y in 0..g.order() {
                if !used[y] && g.elem_order(y) == g.elem_order(k) {
                    used[y] = true;
                    img.push(y);
                    rec(g, img, used, count);
                    img.pop();
                    used[y] = false;
                }
            }
        }
        let mut used = vec![false; g.order()];
        used[0] = true;
        let mut count = 0;
        rec(g, &mut vec![0], &mut used, &mut count);
        count
    }

    #[test]
    fn quaternion_automorphisms_match_brute_force() {
        let q8 = quaternion();
        let auts = automorphism_group(&q8).unwrap();
        assert_eq!(auts.len(), brute_force_count(&q8));
        assert_eq!(auts.len(), 24);
        for a in &auts {
            assert!(a.is_homomorphism(&q8));
        }
    }

    #[test]
    fn small_groups_match_brute_force() {
        for g in [dihedral(4).unwrap(), elementary_abelian(3).unwrap(), cyclic(8).unwrap(), dihedral(3).unwrap()] {
            assert_eq!(automorphism_group(&g).unwrap().len(), brute_force_count(&g), "{}", g.label());
        }
    }

    #[test]
    fn isomorphism_detection() {
        let d6 = dihedral(6).unwrap();
        let d3c2 = direct_product(&dihedral(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(is_isomorphic(&d6, &d3c2));
        let c6 = cyclic(6).unwrap();
        let c3c2 = direct_product(&cyclic(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(is_isomorphic(&c6, &c3c2));
        assert!(!is_isomorphic(&quaternion(), &dihedral(4).unwrap()));
    }

    #[test]
    fn greedy_chain_is_short() {
        for g in crate::catalog::catalog_groups(24) {
            let gens = greedy_generators(&g);
            assert!((1usize << gens.len()) <= g.order().max(1), "{}", g.label());
        }
    }
}
