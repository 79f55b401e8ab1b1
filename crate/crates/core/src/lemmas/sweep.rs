use super::alpha::{
    alpha_invariant_count_aux1, alpha_invariant_count_aux2, alpha_invariant_count_aux3, Restriction,
};
use super::dichotomy::{gelato_count, icecream_count};
use super::intersection::{detect_antisymmetry, intersection_trichotomy};
use super::sigma::{psi_count, psi_intersection, sigma, sigma_direct, SigmaContext};
use super::{CaseTag, TrichotomyOutcome};
use crate::bits::ElemSet;
use crate::catalog::catalog_groups;
use crate::error::{Error, Result};
use crate::group::{automorphism_group, index_two_subgroups, is_generalized_dicyclic, normal_subgroups, DicDecomposition, FiniteGroup};
use crate::perm::Permutation;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    Icecream,
    Gelato,
    Aux1,
    Aux2,
    Aux3,
    Trichotomy,
    Sigma,
    Psi,
    PsiIntersection,
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaId::Icecream => "icecream",
            LemmaId::Gelato => "gelato",
            LemmaId::Aux1 => "aux1",
            LemmaId::Aux2 => "aux2",
            LemmaId::Aux3 => "aux3",
            LemmaId::Trichotomy => "trichotomy",
            LemmaId::Sigma => "sigma",
            LemmaId::Psi => "psi",
            LemmaId::PsiIntersection => "psi_intersection",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub lemma_id: LemmaId,
    pub group: String,
    pub parameters: String,
    pub outcome: CaseTag,
    pub count: u64,
    pub bound: String,
    pub exceptional_clause: Option<u8>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub rows: u64,
    pub bound_holds: u64,
    pub exceptional: u64,
    pub violations: u64,
    /// Parameter tuples rejected by a lemma's side condition.
    pub skipped: u64,
}

impl SweepSummary {
    fn add(&mut self, case: CaseTag) {
        self.rows += 1;
        match case {
            CaseTag::BoundHolds => self.bound_holds += 1,
            CaseTag::Exceptional => self.exceptional += 1,
            CaseTag::Violation => self.violations += 1,
        }
    }
}

struct Emitter<'a> {
    lemma: LemmaId,
    summary: SweepSummary,
    emit: &'a mut dyn FnMut(&SweepRow),
}

impl<'a> Emitter<'a> {
    fn new(lemma: LemmaId, emit: &'a mut dyn FnMut(&SweepRow)) -> Self {
        Emitter { lemma, summary: SweepSummary::default(), emit }
    }

    fn push(&mut self, group: &str, parameters: String, o: &TrichotomyOutcome) {
        self.push_raw(group, parameters, o.case, o.count, o.bound.to_string(), o.clause());
    }

    fn push_raw(&mut self, group: &str, parameters: String, case: CaseTag, count: u64, bound: String, clause: Option<u8>) {
        self.summary.add(case);
        let row = SweepRow {
            lemma_id: self.lemma,
            group: group.to_string(),
            parameters,
            outcome: case,
            count,
            bound,
            exceptional_clause: clause,
        };
        (self.emit)(&row);
    }

    /// Side-condition failures are skipped; other errors propagate.
    fn absorb(&mut self, group: &str, parameters: String, r: Result<TrichotomyOutcome>) -> Result<()> {
        match r {
            Ok(o) => self.push(group, parameters, &o),
            Err(Error::Precondition(_)) => self.summary.skipped += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

/// Every catalog group `N` up to `max_order`, every `α ∈ Aut(N)`, every `t`.
pub fn dichotomy_sweep(lemma: LemmaId, max_order: usize, emit: &mut dyn FnMut(&SweepRow)) -> Result<SweepSummary> {
    let count = match lemma {
        LemmaId::Icecream => icecream_count,
        LemmaId::Gelato => gelato_count,
        _ => return Err(Error::InvalidParameter(format!("{lemma} is not a dichotomy lemma"))),
    };
    let mut em = Emitter::new(lemma, emit);
    for n in catalog_groups(max_order) {
        for (ai, alpha) in automorphism_group(&n)?.iter().enumerate() {
            for t in 0..n.order() {
                let o = count(&n, alpha, t)?;
                em.push(n.label(), format!("alpha={ai} t={t}"), &o);
            }
        }
    }
    Ok(em.summary)
}

fn dic_in(g: &FiniteGroup, n: ElemSet) -> Result<Vec<DicDecomposition>> {
    let (sub, emb) = g.subgroup(n)?;
    Ok(is_generalized_dicyclic(&sub)
        .into_iter()
        .map(|d| DicDecomposition { a: d.a.iter().map(|x| emb[x]).collect(), y: emb[d.y], x: emb[d.x] })
        .collect())
}

fn restrictions(g: &FiniteGroup, n: ElemSet, dics: &[DicDecomposition], random: usize, rng: &mut ChaCha8Rng) -> Vec<Restriction> {
    let mut out = vec![Restriction::Identity, Restriction::Inversion];
    out.extend(dics.iter().cloned().map(Restriction::BarIota));
    for _ in 0..random {
        let elems = n.to_vec();
        let mut shuffled = elems.clone();
        shuffled.shuffle(rng);
        let mut map: Vec<usize> = (0..g.order()).collect();
        for (a, b) in elems.iter().zip(&shuffled) {
            map[*a] = *b;
        }
        out.push(Restriction::Custom(map));
    }
    out
}

/// All `(T, N, γ, t)` with `|T| ≤ max_order` and `N` of index 2 admissible
/// for the lemma, over the restriction family {identity, inversion, `ῑ_A`}
/// plus `random_restrictions` seeded random permutations of `N`.
pub fn aux_sweep(
    lemma: LemmaId,
    max_order: usize,
    random_restrictions: usize,
    seed: u64,
    emit: &mut dyn FnMut(&SweepRow),
) -> Result<SweepSummary> {
    if !matches!(lemma, LemmaId::Aux1 | LemmaId::Aux2 | LemmaId::Aux3) {
        return Err(Error::InvalidParameter(format!("{lemma} is not an index-2 lemma")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut em = Emitter::new(lemma, emit);
    for g in catalog_groups(max_order) {
        for n in index_two_subgroups(&g) {
            let dics = dic_in(&g, n)?;
            if lemma == LemmaId::Aux2 && !(g.is_abelian_set(n) && n.iter().any(|x| g.elem_order(x) > 2)) {
                continue;
            }
            let rs = restrictions(&g, n, &dics, random_restrictions, &mut rng);
            let nhex = n.to_hex(g.order());
            for gamma in g.all().difference(n).iter() {
                for t in n.iter() {
                    for r in &rs {
                        let params = |extra: &str| format!("N={nhex} gamma={gamma} t={t} restriction={}{extra}", r.name());
                        match lemma {
                            LemmaId::Aux1 => {
                                em.absorb(g.label(), params(""), alpha_invariant_count_aux1(&g, n, gamma, t, r))?
                            }
                            LemmaId::Aux2 => {
                                em.absorb(g.label(), params(""), alpha_invariant_count_aux2(&g, n, gamma, t, r))?
                            }
                            _ => {
                                for d in &dics {
                                    let a = d.a.to_hex(g.order());
                                    let res = alpha_invariant_count_aux3(&g, d, gamma, t, r);
                                    em.absorb(g.label(), params(&format!(" A={a}")), res)?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(em.summary)
}

/// Random permutation pairs with `min_size ≤ |X| ≤ max_size`. A quarter of
/// the pairs are built with the exceptional structure. A pair where the
/// antisymmetry detector fires but some `S` breaks the equality is
/// reported as a violation.
pub fn trichotomy_sweep(
    pairs: usize,
    min_size: usize,
    max_size: usize,
    seed: u64,
    emit: &mut dyn FnMut(&SweepRow),
) -> Result<SweepSummary> {
    if min_size > max_size || min_size == 0 {
        return Err(Error::InvalidParameter("size range must be non-empty and positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut em = Emitter::new(LemmaId::Trichotomy, emit);
    for k in 0..pairs {
        let n = rng.gen_range(min_size..=max_size);
        let (f, g) = if k % 4 == 3 { structured_pair(n, &mut rng) } else { (random_perm(n, &mut rng), random_perm(n, &mut rng)) };
        let mut o = intersection_trichotomy(n, &f, &g)?;
        let fires = detect_antisymmetry(&f, &g).is_some();
        if fires && o.count != 1u64 << n {
            o.case = CaseTag::Violation;
        }
        em.push("-", format!("n={n} f={:?} g={:?}", f.to_vec(), g.to_vec()), &o);
    }
    Ok(em.summary)
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(&v).unwrap()
}

/// `f = p ∪ q`, `g = p ∪ q⁻¹` for random `p` on a random `I` and `q` off it.
fn structured_pair(n: usize, rng: &mut ChaCha8Rng) -> (Permutation, Permutation) {
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    let cut = rng.gen_range(0..=n);
    let (i_part, rest) = pts.split_at(cut);
    let mut f = vec![0; n];
    let mut g = vec![0; n];
    for part in [i_part, rest] {
        let mut img = part.to_vec();
        img.shuffle(rng);
        for (a, b) in part.iter().zip(&img) {
            f[*a] = *b;
            g[*a] = *b;
        }
    }
    for &a in rest {
        g[f[a]] = a;
    }
    (Permutation::from_images(&f).unwrap(), Permutation::from_images(&g).unwrap())
}

/// `(R, N)` pairs from the catalog with `|R| ≤ max_order` and `|R:N| ≥ 3`,
/// so that some `j` avoids both the trivial coset and the coset of `u`.
pub fn sigma_pairs(max_order: usize) -> Result<Vec<SigmaContext>> {
    let mut out = Vec::new();
    for g in catalog_groups(max_order) {
        for n in normal_subgroups(&g)? {
            if n.len() > 1 && g.order() >= 3 * n.len() {
                out.push(SigmaContext::new(g.clone(), n)?);
            }
        }
    }
    Ok(out)
}

/// Random `(R, N, S, u, j)` instances, round-robin over `contexts`; each
/// compares the coset formula for `σ` with the graph's common neighbourhood.
pub fn sigma_sweep(
    contexts: &[SigmaContext],
    instances: usize,
    seed: u64,
    emit: &mut dyn FnMut(&SweepRow),
) -> Result<SweepSummary> {
    if contexts.is_empty() {
        return Err(Error::InvalidParameter("no (R, N) pairs to sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut em = Emitter::new(LemmaId::Sigma, emit);
    for k in 0..instances {
        let ctx = &contexts[k % contexts.len()];
        let e = ctx.enumeration();
        let s = e.decode(rng.gen_range(0..e.total()));
        let outside = ctx.group.all().difference(ctx.n).to_vec();
        let u = *outside.choose(&mut rng).unwrap();
        let i = ctx.coset_of(u);
        let js: Vec<usize> = (1..ctx.index()).filter(|&j| j != i).collect();
        let j = *js.choose(&mut rng).unwrap();
        let a = sigma(ctx, s, u, j)?;
        let b = sigma_direct(ctx, s, u, j)?;
        let case = if a == b { CaseTag::BoundHolds } else { CaseTag::Violation };
        let order = ctx.group.order();
        let params = format!("N={} S={} u={u} j={j}", ctx.n.to_hex(order), s.to_hex(order));
        em.push_raw(ctx.group.label(), params, case, a.len() as u64, "formula = graph".into(), None);
    }
    Ok(em.summary)
}

/// Every pair (and triple) of vertices in every non-trivial coset and every
/// admissible `j`, for each context; plus the intersection over `j` where
/// its hypotheses hold.
pub fn psi_sweep(contexts: &[SigmaContext], triples: bool, emit: &mut dyn FnMut(&SweepRow)) -> Result<SweepSummary> {
    let mut em = Emitter::new(LemmaId::Psi, emit);
    for ctx in contexts {
        let order = ctx.group.order();
        let nhex = ctx.n.to_hex(order);
        for i in 1..ctx.index() {
            let o_i = ctx.cosets.sets[i].to_vec();
            let mut sets: Vec<Vec<usize>> = Vec::new();
            for a in 0..o_i.len() {
                for b in a + 1..o_i.len() {
                    sets.push(vec![o_i[a], o_i[b]]);
                    if triples {
                        for c in b + 1..o_i.len() {
                            sets.push(vec![o_i[a], o_i[b], o_i[c]]);
                        }
                    }
                }
            }
            for verts in &sets {
                for j in (1..ctx.index()).filter(|&j| j != i) {
                    let o = psi_count(ctx, verts, j)?;
                    em.push(ctx.group.label(), format!("N={nhex} verts={verts:?} j={j}"), &o);
                }
                em.lemma = LemmaId::PsiIntersection;
                match psi_intersection(ctx, verts) {
                    Ok(o) => em.push(ctx.group.label(), format!("N={nhex} verts={verts:?}"), &o),
                    Err(Error::Precondition(_)) => em.summary.skipped += 1,
                    Err(e) => return Err(e),
                }
                em.lemma = LemmaId::Psi;
            }
        }
    }
    Ok(em.summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icecream_sweep_small() {
        let mut shapes_ok = true;
        let s = dichotomy_sweep(LemmaId::Icecream, 8, &mut |r| {
            if r.outcome == CaseTag::Exceptional {
                shapes_ok &= r.exceptional_clause == Some(2);
            }
        })
        .unwrap();
        assert!(shapes_ok);
        assert_eq!(s.violations, 0);
        assert!(s.exceptional > 0 && s.bound_holds > 0);
    }

    #[test]
    fn structured_pairs_fire_the_detector() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..10 {
            let (f, g) = structured_pair(n, &mut rng);
            assert!(detect_antisymmetry(&f, &g).is_some());
        }
    }

    #[test]
    fn sigma_sweep_small() {
        let ctxs = sigma_pairs(8).unwrap();
        assert!(ctxs.len() >= 3);
        let s = sigma_sweep(&ctxs, 200, 5, &mut |_| {}).unwrap();
        assert_eq!((s.rows, s.violations), (200, 0));
    }

    #[test]
    fn aux_sweeps_small() {
        // the smallest generalised dicyclic N has order 8
        for (lemma, max) in [(LemmaId::Aux1, 8), (LemmaId::Aux2, 8), (LemmaId::Aux3, 16)] {
            let s = aux_sweep(lemma, max, 1, 11, &mut |_| {}).unwrap();
            assert_eq!(s.violations, 0, "{lemma}");
            assert!(s.rows > 0, "{lemma}");
        }
    }
}
