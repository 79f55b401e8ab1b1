//! Finite groups as dense multiplication tables.
//!
//! Elements are indices `0..n` with the identity at 0. Actions are on the right:
//! `conj(x, g)` is `g⁻¹ x g`.

mod aut;
mod construct;
mod dic;
mod normal;

pub use aut::{automorphism_group, find_isomorphism, is_isomorphic, GroupAutomorphism};
pub use construct::{cyclic, dihedral, direct_product, elementary_abelian, quaternion};
pub use dic::{
    bar_iota, dic, index_two_subgroups, is_abelian_exp_gt2, is_generalized_dicyclic,
    q8_times_ea_rank, DicDecomposition,
};
pub use normal::{conjugacy_classes, cosets, normal_subgroups, quotient_group, Cosets};

use crate::bits::{ElemSet, MAX_ORDER};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u8>,
    inv: Vec<u8>,
    elem_order: Vec<u32>,
    label: String,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication rule. Checks that 0 is a two-sided
    /// identity and that every row and column is a permutation; associativity is
    /// the caller's responsibility (see [`FiniteGroup::check_associative`]).
    pub fn from_fn(n: usize, label: impl Into<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("group order must be positive".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::budget("group order", n, MAX_ORDER));
        }
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(Error::IndexOutOfRange { index: c, order: n });
                }
                table[a * n + b] = c as u8;
            }
        }
        Self::from_table(table, n, label.into())
    }

    fn from_table(table: Vec<u8>, n: usize, label: String) -> Result<Self> {
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::InvalidParameter("0 is not the identity".into()));
            }
            let mut row = ElemSet::EMPTY;
            let mut col = ElemSet::EMPTY;
            for b in 0..n {
                row.insert(table[a * n + b] as usize);
                col.insert(table[b * n + a] as usize);
            }
            if row.len() != n || col.len() != n {
                return Err(Error::InvalidParameter("table is not a Latin square".into()));
            }
        }
        let mut inv = vec![0u8; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u8;
            if table[inv[a] as usize * n + a] != 0 {
                return Err(Error::InvalidParameter("left and right inverses differ".into()));
            }
        }
        let mut elem_order = vec![1u32; n];
        for a in 1..n {
            let mut p = a;
            let mut k = 1;
            while p != 0 {
                p = table[p * n + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }
        Ok(FiniteGroup { order: n, table, inv, elem_order, label })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h] as usize
    }

    pub fn try_mul(&self, g: usize, h: usize) -> Result<usize> {
        for x in [g, h] {
            if x >= self.order {
                return Err(Error::IndexOutOfRange { index: x, order: self.order });
            }
        }
        Ok(self.mul(g, h))
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    #[inline]
    pub fn elem_order(&self, g: usize) -> usize {
        self.elem_order[g] as usize
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.elem_order.iter().fold(1, |l, &o| l / gcd(l, o as usize) * o as usize)
    }

    pub fn check_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (0..n).all(|b| {
            let ab = self.mul(a, b);
            (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
        }))
    }

    pub fn inverse_set(&self, x: ElemSet) -> ElemSet {
        x.iter().map(|g| self.inv(g)).collect()
    }

    pub fn is_inverse_closed(&self, x: ElemSet) -> bool {
        self.inverse_set(x) == x
    }

    /// I(X): the elements of X of order at most 2.
    pub fn involution_part(&self, x: ElemSet) -> ElemSet {
        x.iter().filter(|&g| self.elem_order(g) <= 2).collect()
    }

    /// c(X) = (|X| + |I(X)|) / 2 for inverse-closed X.
    pub fn c_value(&self, x: ElemSet) -> Result<usize> {
        if !self.is_inverse_closed(x) {
            return Err(Error::NotInverseClosed);
        }
        Ok((x.len() + self.involution_part(x).len()) / 2)
    }

    pub fn c_of_group(&self) -> usize {
        self.c_value(self.all()).expect("a group is inverse-closed")
    }

    /// `{x g : x ∈ X}`.
    pub fn right_mul_set(&self, x: ElemSet, g: usize) -> ElemSet {
        x.iter().map(|a| self.mul(a, g)).collect()
    }

    pub fn left_mul_set(&self, g: usize, x: ElemSet) -> ElemSet {
        x.iter().map(|a| self.mul(g, a)).collect()
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: ElemSet) -> ElemSet {
        let mut h = ElemSet::singleton(0);
        let mut frontier = h;
        while !frontier.is_empty() {
            let mut next = ElemSet::EMPTY;
            for a in frontier.iter() {
                for g in gens.iter() {
                    let b = self.mul(a, g);
                    if !h.contains(b) {
                        h.insert(b);
                        next.insert(b);
                    }
                }
            }
            frontier = next;
        }
        h
    }

    pub fn is_subgroup(&self, h: ElemSet) -> bool {
        h.contains(0) && h.iter().all(|a| h.iter().all(|b| h.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, h: ElemSet) -> bool {
        self.is_subgroup(h) && (0..self.order).all(|g| h.iter().all(|x| h.contains(self.conj(x, g))))
    }

    pub fn centralizer(&self, x: ElemSet) -> ElemSet {
        (0..self.order)
            .filter(|&g| x.iter().all(|a| self.mul(a, g) == self.mul(g, a)))
            .collect()
    }

    pub fn center(&self) -> ElemSet {
        self.centralizer(self.all())
    }

    pub fn is_abelian_set(&self, h: ElemSet) -> bool {
        h.iter().all(|a| h.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup `h` as a group in its own right, with the embedding
    /// sending its index `k` to the k-th smallest element of `h`.
    pub fn subgroup(&self, h: ElemSet) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(h) {
            return Err(Error::NotSubgroup);
        }
        let emb = h.to_vec();
        let mut back = vec![usize::MAX; self.order];
        for (k, &g) in emb.iter().enumerate() {
            back[g] = k;
        }
        let label = format!("{}[{}]", self.label, h.to_hex(self.order));
        let sub = FiniteGroup::from_fn(emb.len(), label, |a, b| back[self.mul(emb[a], emb[b])])?;
        Ok((sub, emb))
    }
}
