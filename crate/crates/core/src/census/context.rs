use crate::bits::ElemSet;
use crate::cayley::{Enumeration, DEFAULT_MAX_C};
use crate::error::{Error, Result};
use crate::group::{
    automorphism_group, bar_iota, cosets, is_abelian_exp_gt2, is_generalized_dicyclic, normal_subgroups,
    q8_times_ea_rank, Cosets, FiniteGroup, GroupAutomorphism,
};
use crate::perm::MAX_VERTICES;
use serde::Serialize;

/// Which structural case governs the allowed conjugation actions on `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NShape {
    /// Neither abelian of exponent > 2 nor generalised dicyclic.
    Plain,
    AbelianExpGt2,
    Dicyclic,
    /// `Q8 × C2^ℓ`, dicyclic over three subgroups.
    Q8TimesEa,
}

/// Data about `R` shared by every normal subgroup.
#[derive(Debug)]
pub struct GroupContext {
    pub group: FiniteGroup,
    pub enumeration: Enumeration,
    /// Non-identity automorphisms of `R` as image tables.
    pub(crate) aut_r: Vec<Vec<u8>>,
    pub excluded_family: bool,
    pub c: usize,
}

impl GroupContext {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        Self::with_budget(group, DEFAULT_MAX_C)
    }

    pub fn with_budget(group: FiniteGroup, max_c: usize) -> Result<Self> {
        if group.order() > MAX_VERTICES {
            return Err(Error::budget("group order", group.order(), MAX_VERTICES));
        }
        let enumeration = Enumeration::with_budget(&group, max_c)?;
        let aut_r = automorphism_group(&group)?
            .into_iter()
            .filter(|a| !a.is_identity())
            .map(|a| a.images().iter().map(|&x| x as u8).collect())
            .collect();
        let excluded_family = is_abelian_exp_gt2(&group) || !is_generalized_dicyclic(&group).is_empty();
        let c = enumeration.c();
        Ok(GroupContext { group, enumeration, aut_r, excluded_family, c })
    }

    /// Non-identity proper normal subgroups.
    pub fn eligible_normal_subgroups(&self) -> Result<Vec<ElemSet>> {
        let all = self.group.all();
        Ok(normal_subgroups(&self.group)?
            .into_iter()
            .filter(|h| h.len() > 1 && *h != all)
            .collect())
    }

    /// Whether some non-identity automorphism of `R` fixes `s` setwise, i.e.
    /// whether the normalizer of the regular copy of `R` exceeds it.
    pub fn r_normalizer_grows(&self, s: ElemSet) -> bool {
        let s = s.difference(ElemSet::singleton(0));
        self.aut_r.iter().any(|a| s.iter().all(|x| s.contains(a[x] as usize)))
    }
}

/// Data about one normal subgroup `N ◁ R`.
#[derive(Debug)]
pub struct NormalContext {
    pub n: ElemSet,
    pub cosets: Cosets,
    /// Automorphisms of `N` as tables over `R`'s indices (identity off `N`);
    /// entry 0 is the identity.
    pub(crate) aut_n: Vec<Vec<u8>>,
    /// Whether each entry of `aut_n` is permitted by the shape of `N`.
    pub(crate) allowed: Vec<bool>,
    pub shape: NShape,
    pub n_abelian: bool,
    /// Coset index of `(γ_i N)⁻¹`.
    pub(crate) coset_inv: Vec<usize>,
}

impl NormalContext {
    pub fn new(g: &FiniteGroup, n: ElemSet) -> Result<Self> {
        let cs = cosets(g, n)?;
        if n.len() == 1 || n == g.all() {
            return Err(Error::Precondition("N must be a non-identity proper subgroup".into()));
        }
        let (sub, emb) = g.subgroup(n)?;
        let lift = |a: &GroupAutomorphism| -> Vec<u8> {
            let mut t: Vec<u8> = (0..g.order()).map(|x| x as u8).collect();
            for (k, &e) in emb.iter().enumerate() {
                t[e] = emb[a.apply(k)] as u8;
            }
            t
        };
        let auts = automorphism_group(&sub)?;
        debug_assert!(auts[0].is_identity());
        let aut_n: Vec<Vec<u8>> = auts.iter().map(lift).collect();

        let n_abelian = sub.is_abelian();
        let decomps = is_generalized_dicyclic(&sub);
        let (shape, permitted): (NShape, Vec<GroupAutomorphism>) = if is_abelian_exp_gt2(&sub) {
            (NShape::AbelianExpGt2, vec![GroupAutomorphism::inversion(&sub).unwrap()])
        } else if !decomps.is_empty() {
            let shape = if q8_times_ea_rank(&sub).is_some() { NShape::Q8TimesEa } else { NShape::Dicyclic };
            let bars = decomps.iter().map(|d| bar_iota(&sub, d)).collect::<Result<Vec<_>>>()?;
            (shape, bars)
        } else {
            (NShape::Plain, Vec::new())
        };
        let permitted: Vec<Vec<u8>> = permitted.iter().map(lift).collect();
        let allowed = aut_n.iter().enumerate().map(|(i, a)| i == 0 || permitted.contains(a)).collect();
        let coset_inv = cs.reps.iter().map(|&r| cs.coset_of[g.inv(r)]).collect();
        Ok(NormalContext { n, cosets: cs, aut_n, allowed, shape, n_abelian, coset_inv })
    }

    pub fn index(&self) -> usize {
        self.cosets.len()
    }
}
