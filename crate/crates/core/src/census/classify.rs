use super::context::{GroupContext, NormalContext};
use super::nsearch::{Found, NormSearch};
use crate::bits::ElemSet;
use crate::cayley::{build_graph, CayleyGraph};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{conjugation_action_on_n, graph_automorphisms, point_stabilizer, Permutation};
use serde::Serialize;
use std::ops::ControlFlow;

/// Cap on the number of `P₁` elements enumerated for a single set.
pub const P1_LIMIT: usize = 1 << 21;

/// Stratum membership of one connection set relative to one `N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SetClass {
    /// `P₁ ≠ 1`.
    pub in_s_n: bool,
    /// Some non-identity automorphism of `R` fixes `S`.
    pub r_normalizer_grows: bool,
    pub s_n1: bool,
    pub t_n: bool,
    pub u_n: bool,
    /// Which of `T_N^1..T_N^4` the set falls in, if any.
    pub t_level: Option<u8>,
    /// Some nontrivial `f ∈ P₁` fixes every coset of `N` setwise.
    pub fixes_orbits: bool,
}

#[derive(Default)]
struct Flags {
    any: bool,
    moves_elem: bool,
    t1: bool,
    t2: bool,
    t3: bool,
    fixes: bool,
}

impl Flags {
    fn absorb(&mut self, g: &FiniteGroup, ctx: &NormalContext, images: &[u8], phi_allowed: bool) {
        let img = |x: usize| images[x] as usize;
        self.any = true;
        if !self.moves_elem {
            self.moves_elem = (0..g.order()).any(|x| img(x) != x && img(x) != g.inv(x));
        }
        let cs = &ctx.cosets;
        let mut fixes_all = true;
        for c in 1..cs.len() {
            let d = cs.coset_of[img(cs.reps[c])];
            if d == c {
                continue;
            }
            fixes_all = false;
            if d != ctx.coset_inv[c] {
                self.t1 = true;
            }
            if !self.t3 {
                self.t3 = !ctx.n_abelian || cs.sets[c].iter().any(|p| img(p) != g.inv(p));
            }
        }
        if !phi_allowed {
            self.t2 = true;
        }
        if fixes_all {
            self.fixes = true;
        }
    }

    fn finish(&self, r_grows: bool) -> SetClass {
        let mut c = SetClass { in_s_n: self.any, r_normalizer_grows: r_grows, fixes_orbits: self.fixes, ..Default::default() };
        if !self.any {
            return c;
        }
        if r_grows {
            c.s_n1 = true;
            return c;
        }
        c.t_n = self.moves_elem;
        c.u_n = !self.moves_elem;
        c.t_level = if self.t1 {
            Some(1)
        } else if self.t2 {
            Some(2)
        } else if self.t3 {
            Some(3)
        } else if self.moves_elem {
            Some(4)
        } else {
            None
        };
        c
    }
}

/// Classifies `S` using the structured search over `P₁`.
pub(crate) fn classify_adj(
    gctx: &GroupContext,
    nctx: &NormalContext,
    adj: &[ElemSet],
    r_grows: bool,
) -> Result<SetClass> {
    let g = &gctx.group;
    let search = NormSearch::new(g, nctx, adj);
    let mut flags = Flags::default();
    if r_grows {
        // Only membership in S_N and the orbit-fixing flag matter here.
        let mut first_fixes = false;
        let _ = search.run(false, &mut |f: Found| {
            flags.any = true;
            first_fixes = (1..nctx.index()).all(|c| nctx.cosets.coset_of[f.images[nctx.cosets.reps[c]] as usize] == c);
            ControlFlow::Break(())
        });
        flags.fixes = first_fixes
            || (flags.any && search.run(true, &mut |_| ControlFlow::Break(())).is_break());
        return Ok(flags.finish(true));
    }
    let mut count = 0usize;
    let _ = search.run(false, &mut |f: Found| {
        count += 1;
        if count > P1_LIMIT {
            return ControlFlow::Break(());
        }
        flags.absorb(g, nctx, f.images, nctx.allowed[f.phi]);
        ControlFlow::Continue(())
    });
    if count > P1_LIMIT {
        return Err(Error::budget("|P1|", count, P1_LIMIT));
    }
    Ok(flags.finish(false))
}

/// Stratum membership of `S` relative to `N`.
pub fn classify_set(g: &FiniteGroup, n: ElemSet, s: ElemSet) -> Result<SetClass> {
    let gctx = GroupContext::with_budget(g.clone(), 64)?;
    let nctx = NormalContext::new(g, n)?;
    let graph = build_graph(g, s)?;
    classify_adj(&gctx, &nctx, graph.adjacency(), gctx.r_normalizer_grows(s))
}

/// Literal evaluation: materialize `Aut(Γ)`, keep the elements normalizing
/// the regular copy of `N`, take the identity-vertex stabilizer, and test
/// the regular copy of `R` for a larger normalizer by conjugating
/// translations. Only usable when `Aut(Γ)` is small enough to list.
pub fn classify_set_by_filter(g: &FiniteGroup, n: ElemSet, s: ElemSet) -> Result<SetClass> {
    let nctx = NormalContext::new(g, n)?;
    let graph: CayleyGraph = build_graph(g, s)?;
    let aut = graph_automorphisms(&graph)?;
    let p1 = point_stabilizer(&aut, 0)?;
    let (sub, emb) = g.subgroup(n)?;
    let full = g.all();
    let mut flags = Flags::default();
    let mut r_grows = false;
    for f in p1.elements()? {
        if f.is_identity() {
            continue;
        }
        // f fixes the identity vertex, so normalizing R_reg means inducing an
        // automorphism of R by conjugation.
        if !r_grows && conjugation_action_on_n(f, g, full).is_ok() {
            r_grows = true;
        }
        let Ok(iota) = conjugation_action_on_n(f, g, n) else { continue };
        let phi = lift(g, &emb, iota.images());
        let allowed = nctx.aut_n.iter().position(|a| *a == phi).map(|i| nctx.allowed[i]).unwrap();
        let images: Vec<u8> = f.images().to_vec();
        flags.absorb(g, &nctx, &images, allowed);
    }
    debug_assert!(sub.order() == n.len());
    Ok(flags.finish(r_grows))
}

fn lift(g: &FiniteGroup, emb: &[usize], sub_images: &[usize]) -> Vec<u8> {
    let mut t: Vec<u8> = (0..g.order()).map(|x| x as u8).collect();
    for (k, &e) in emb.iter().enumerate() {
        t[e] = emb[sub_images[k]] as u8;
    }
    t
}

/// Whether some nontrivial automorphism of `Γ` fixes the identity vertex.
pub(crate) fn stabilizer_nontrivial(adj: &[ElemSet]) -> Option<Permutation> {
    crate::perm::nontrivial_pointwise_stabilizer_element(adj, &[0])
}
