use super::FiniteGroup;
use crate::bits::ElemSet;
use crate::error::{Error, Result};
use std::collections::HashSet;

/// Default order limit for normal-subgroup enumeration.
pub const NORMAL_ORDER_LIMIT: usize = 64;

pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<ElemSet> {
    let mut seen = ElemSet::EMPTY;
    let mut out = Vec::new();
    for x in 0..g.order() {
        if seen.contains(x) {
            continue;
        }
        let class: ElemSet = (0..g.order()).map(|h| g.conj(x, h)).collect();
        seen = seen.union(class);
        out.push(class);
    }
    out
}

/// Every normal subgroup exactly once, sorted by size then bit pattern.
///
/// Each normal subgroup is generated by the conjugacy classes it contains, so
/// closing `{1}` under "join with one more class" reaches all of them.
pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<ElemSet>> {
    normal_subgroups_within(g, NORMAL_ORDER_LIMIT)
}

pub fn normal_subgroups_within(g: &FiniteGroup, max_order: usize) -> Result<Vec<ElemSet>> {
    if g.order() > max_order {
        return Err(Error::budget("group order", g.order(), max_order));
    }
    let classes = conjugacy_classes(g);
    let trivial = ElemSet::singleton(0);
    let mut seen: HashSet<ElemSet> = HashSet::from([trivial]);
    let mut queue = vec![trivial];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head];
        head += 1;
        for &k in &classes {
            if k.is_subset(h) {
                continue;
            }
            let m = g.generate(h.union(k));
            if seen.insert(m) {
                queue.push(m);
            }
        }
    }
    debug_assert!(queue.iter().all(|&h| g.is_normal(h)));
    queue.sort_by_key(|h| (h.len(), h.0));
    Ok(queue)
}

/// Cosets of a normal subgroup, ordered by their minimal elements.
#[derive(Clone, Debug)]
pub struct Cosets {
    /// Minimal element of each coset; `reps[0] = 0`.
    pub reps: Vec<usize>,
    pub sets: Vec<ElemSet>,
    pub coset_of: Vec<usize>,
}

impl Cosets {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

pub fn cosets(g: &FiniteGroup, n: ElemSet) -> Result<Cosets> {
    if !g.is_subgroup(n) {
        return Err(Error::NotSubgroup);
    }
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    let mut sets = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = g.left_mul_set(x, n);
        for y in c.iter() {
            coset_of[y] = reps.len();
        }
        reps.push(x);
        sets.push(c);
    }
    Ok(Cosets { reps, sets, coset_of })
}

/// `G/N` on coset indices (index 0 is `N`) plus the element-to-coset map.
pub fn quotient_group(g: &FiniteGroup, n: ElemSet) -> Result<(FiniteGroup, Vec<usize>)> {
    let cs = cosets(g, n)?;
    let label = format!("{}/{}", g.label(), n.to_hex(g.order()));
    let q = FiniteGroup::from_fn(cs.len(), label, |i, j| cs.coset_of[g.mul(cs.reps[i], cs.reps[j])])?;
    Ok((q, cs.coset_of))
}
