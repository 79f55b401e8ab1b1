//! Search over `P₁`: graph automorphisms fixing the identity vertex and
//! normalizing the right-regular copy of `N`.
//!
//! Such a permutation satisfies `f(r n) = f(r) φ(n)` for an automorphism `φ`
//! of `N`, so it is fixed by `φ` together with one image per non-identity
//! coset representative. The search branches on exactly those choices.

use super::context::NormalContext;
use crate::bits::ElemSet;
use crate::group::FiniteGroup;
use std::ops::ControlFlow;

/// A nontrivial element of `P₁`: its image table and the index of `ι_f`.
pub(crate) struct Found<'a> {
    pub images: &'a [u8],
    pub phi: usize,
}

pub(crate) struct NormSearch<'a> {
    g: &'a FiniteGroup,
    ctx: &'a NormalContext,
    adj: &'a [ElemSet],
    common0: Vec<u32>,
}

impl<'a> NormSearch<'a> {
    pub fn new(g: &'a FiniteGroup, ctx: &'a NormalContext, adj: &'a [ElemSet]) -> Self {
        let common0 = adj.iter().map(|r| r.intersection(adj[0]).len() as u32).collect();
        NormSearch { g, ctx, adj, common0 }
    }

    /// Visits every nontrivial element of `P₁`, or of `P₁ ∩ F` when
    /// `fix_cosets` is set.
    pub fn run(&self, fix_cosets: bool, visit: &mut dyn FnMut(Found) -> ControlFlow<()>) -> ControlFlow<()> {
        let n = self.g.order();
        let nset = self.ctx.n;
        let s_in_n = self.adj[0].intersection(nset);
        let mut images = vec![0u8; n];
        for (pi, phi) in self.ctx.aut_n.iter().enumerate() {
            if s_in_n.iter().any(|x| !s_in_n.contains(phi[x] as usize)) {
                continue;
            }
            for x in nset.iter() {
                images[x] = phi[x];
            }
            let mut st = State { images: &mut images, mapped: nset, used_cosets: 1, phi: pi, moved: pi != 0 };
            self.extend(1, &mut st, fix_cosets, visit)?;
        }
        ControlFlow::Continue(())
    }

    fn extend(
        &self,
        c: usize,
        st: &mut State,
        fix_cosets: bool,
        visit: &mut dyn FnMut(Found) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let cs = &self.ctx.cosets;
        if c == cs.len() {
            if st.moved {
                return visit(Found { images: st.images, phi: st.phi });
            }
            return ControlFlow::Continue(());
        }
        let gamma = cs.reps[c];
        let phi = &self.ctx.aut_n[st.phi];
        for d in 1..cs.len() {
            if st.used_cosets >> d & 1 == 1 || (fix_cosets && d != c) {
                continue;
            }
            for t in cs.sets[d].iter() {
                if self.common0[t] != self.common0[gamma] {
                    continue;
                }
                if !self.assign(gamma, t, phi, st) {
                    continue;
                }
                let saved = (st.mapped, st.used_cosets, st.moved);
                st.mapped = st.mapped.union(cs.sets[c]);
                st.used_cosets |= 1 << d;
                st.moved |= t != gamma;
                let r = self.extend(c + 1, st, fix_cosets, visit);
                (st.mapped, st.used_cosets, st.moved) = saved;
                r?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Sets `f(γ n) = t φ(n)` on the coset of `γ` and checks adjacency against
    /// everything mapped so far.
    fn assign(&self, gamma: usize, t: usize, phi: &[u8], st: &mut State) -> bool {
        let g = self.g;
        let mut mapped = st.mapped;
        let mut image_of_mapped: ElemSet = mapped.iter().map(|m| st.images[m] as usize).collect();
        for k in self.ctx.n.iter() {
            let p = g.mul(gamma, k);
            let q = g.mul(t, phi[k] as usize);
            st.images[p] = q as u8;
            mapped.insert(p);
            image_of_mapped.insert(q);
            let want: ElemSet = self.adj[p].intersection(mapped).iter().map(|m| st.images[m] as usize).collect();
            if want != self.adj[q].intersection(image_of_mapped) {
                return false;
            }
        }
        true
    }
}

struct State<'b> {
    images: &'b mut Vec<u8>,
    mapped: ElemSet,
    used_cosets: u128,
    phi: usize,
    moved: bool,
}
