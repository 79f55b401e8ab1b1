//! Inverse-closed connection sets and Cayley graphs.
//!
//! Enumeration order: one free bit per element of order at most 2 (identity
//! included), in increasing index, then one bit per pair `{x, x⁻¹}` keyed by
//! its smaller element. Bit `k` of an enumeration index is the k-th free bit.

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;
use serde::Serialize;

pub const DEFAULT_MAX_C: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConnectionSet {
    order: usize,
    bits: ElemSet,
}

impl ConnectionSet {
    pub fn new(g: &FiniteGroup, bits: ElemSet) -> Result<Self> {
        if !bits.is_subset(g.all()) {
            return Err(Error::InvalidParameter("set has elements outside the group".into()));
        }
        if !g.is_inverse_closed(bits) {
            return Err(Error::NotInverseClosed);
        }
        Ok(ConnectionSet { order: g.order(), bits })
    }

    pub fn bits(&self) -> ElemSet {
        self.bits
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains_identity(&self) -> bool {
        self.bits.contains(0)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.bits.to_vec()
    }

    pub fn to_hex(&self) -> String {
        self.bits.to_hex(self.order)
    }
}

/// Index ↔ set codec for the canonical enumeration of a group.
#[derive(Clone, Debug)]
pub struct Enumeration {
    free: Vec<ElemSet>,
    order: usize,
}

impl Enumeration {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        Self::with_budget(g, DEFAULT_MAX_C)
    }

    pub fn with_budget(g: &FiniteGroup, max_c: usize) -> Result<Self> {
        let c = g.c_of_group();
        if c > max_c || c > 63 {
            return Err(Error::budget("c(G)", c, max_c.min(63)));
        }
        Ok(Self::unchecked(g))
    }

    fn unchecked(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut free: Vec<ElemSet> = (0..n).filter(|&x| g.inv(x) == x).map(ElemSet::singleton).collect();
        free.extend((0..n).filter(|&x| x < g.inv(x)).map(|x| ElemSet::from_elems([x, g.inv(x)])));
        Enumeration { free, order: n }
    }

    /// Masks of the free choices, in bit order.
    pub fn free_masks(&self) -> &[ElemSet] {
        &self.free
    }

    pub fn c(&self) -> usize {
        self.free.len()
    }

    pub fn total(&self) -> u64 {
        1u64 << self.free.len()
    }

    pub fn decode(&self, index: u64) -> ElemSet {
        let mut s = 0u128;
        let mut rest = index;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            s |= self.free[k].0;
            rest &= rest - 1;
        }
        ElemSet(s)
    }

    /// Inverse of [`Enumeration::decode`]; `None` if `s` is not inverse-closed.
    pub fn encode(&self, s: ElemSet) -> Option<u64> {
        let mut idx = 0u64;
        let mut covered = ElemSet::EMPTY;
        for (k, m) in self.free.iter().enumerate() {
            let part = s.intersection(*m);
            if part == *m {
                idx |= 1 << k;
                covered = covered.union(part);
            } else if !part.is_empty() {
                return None;
            }
        }
        (covered == s).then_some(idx)
    }

    pub fn connection_set(&self, index: u64) -> ConnectionSet {
        ConnectionSet { order: self.order, bits: self.decode(index) }
    }

    pub fn range(&self, start: u64, end: u64) -> impl Iterator<Item = (u64, ElemSet)> + '_ {
        (start..end.min(self.total())).map(move |i| (i, self.decode(i)))
    }
}

/// Every inverse-closed subset of `g` once, in canonical order.
pub fn enumerate_inverse_closed(g: &FiniteGroup) -> Result<impl Iterator<Item = ConnectionSet>> {
    let e = Enumeration::new(g)?;
    Ok((0..e.total()).map(move |i| e.connection_set(i)))
}

/// Near-equal contiguous blocks covering `[start, end)`.
pub fn split_range(start: u64, end: u64, workers: usize) -> Vec<(u64, u64)> {
    let w = workers.max(1) as u128;
    let len = (end - start) as u128;
    (0..w)
        .map(|i| (start + (i * len / w) as u64, start + ((i + 1) * len / w) as u64))
        .collect()
}

pub fn partition_range(g: &FiniteGroup, workers: usize) -> Result<Vec<(u64, u64)>> {
    let e = Enumeration::new(g)?;
    Ok(split_range(0, e.total(), workers))
}

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    set: ConnectionSet,
    adj: Vec<ElemSet>,
    loop_dropped: bool,
}

impl CayleyGraph {
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> &[ElemSet] {
        &self.adj
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.set
    }

    /// True when the identity was in `S` and its loops were discarded.
    pub fn loop_dropped(&self) -> bool {
        self.loop_dropped
    }

    pub fn adjacent(&self, r: usize, t: usize) -> bool {
        self.adj[r].contains(t)
    }

    pub fn degree(&self) -> usize {
        self.set.bits.difference(ElemSet::singleton(0)).len()
    }
}

/// `Γ(G,S)`: `{r,t}` is an edge iff `t r⁻¹ ∈ S` and `t ≠ r`.
pub fn build_graph(g: &FiniteGroup, s: ElemSet) -> Result<CayleyGraph> {
    let set = ConnectionSet::new(g, s)?;
    Ok(build_graph_unchecked(g, set))
}

pub(crate) fn build_graph_unchecked(g: &FiniteGroup, set: ConnectionSet) -> CayleyGraph {
    let conn = set.bits.difference(ElemSet::singleton(0));
    let adj = (0..g.order()).map(|r| g.right_mul_set(conn, r)).collect();
    CayleyGraph { set, adj, loop_dropped: set.contains_identity() }
}

/// `ρ_x : r ↦ r x`.
pub fn right_translation(g: &FiniteGroup, x: usize) -> Permutation {
    Permutation::from_fn(g.order(), |r| g.mul(r, x))
}
