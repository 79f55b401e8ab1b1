use super::{witness, BoundValue, ExceptionalWitness, TrichotomyOutcome};
use crate::bits::ElemSet;
use crate::cayley::{build_graph, Enumeration};
use crate::error::{Error, Result};
use crate::group::{cosets, Cosets, FiniteGroup};

/// The constant in the bound `2^(c(R) − 0.02·|R|/|N|)`.
pub const IODD_CONSTANT: f64 = 0.02;

/// Largest `c(R)` for which `Ψ` is counted exhaustively.
const PSI_MAX_C: usize = 24;

/// `R`, a normal subgroup `N`, and its cosets `O_i = γ_i N` with `γ_0 = 1`.
/// Coset indices are 0-based, so `O_0 = N`.
#[derive(Clone, Debug)]
pub struct SigmaContext {
    pub group: FiniteGroup,
    pub n: ElemSet,
    pub cosets: Cosets,
    enumeration: Enumeration,
}

impl SigmaContext {
    pub fn new(group: FiniteGroup, n: ElemSet) -> Result<Self> {
        if n.len() <= 1 || n == group.all() {
            return Err(Error::Precondition("N must be a non-identity proper normal subgroup".into()));
        }
        let cosets = cosets(&group, n)?;
        let enumeration = Enumeration::with_budget(&group, PSI_MAX_C)?;
        Ok(SigmaContext { group, n, cosets, enumeration })
    }

    /// `|R : N|`.
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    pub fn rep(&self, i: usize) -> usize {
        self.cosets.reps[i]
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.cosets.coset_of[x]
    }

    pub fn coset_mul(&self, i: usize, j: usize) -> usize {
        self.coset_of(self.group.mul(self.rep(i), self.rep(j)))
    }

    pub fn coset_inv(&self, i: usize) -> usize {
        self.coset_of(self.group.inv(self.rep(i)))
    }

    /// Order of `γ_i N` in `R/N`.
    pub fn coset_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut c = i;
        while c != 0 {
            c = self.coset_mul(c, i);
            k += 1;
        }
        k
    }

    /// `k_u ∈ N` with `u = γ_i k_u`.
    pub fn k_of(&self, u: usize) -> usize {
        let i = self.coset_of(u);
        self.group.mul(self.group.inv(self.rep(i)), u)
    }

    pub fn quotient_is_elementary_2(&self) -> bool {
        (0..self.index()).all(|i| self.coset_order(i) <= 2)
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.enumeration
    }
}

fn check_sigma_args(ctx: &SigmaContext, s: ElemSet, u: usize, j: usize) -> Result<usize> {
    let g = &ctx.group;
    if u >= g.order() {
        return Err(Error::IndexOutOfRange { index: u, order: g.order() });
    }
    if j >= ctx.index() {
        return Err(Error::IndexOutOfRange { index: j, order: ctx.index() });
    }
    if !s.is_subset(g.all()) || !g.is_inverse_closed(s) {
        return Err(Error::NotInverseClosed);
    }
    let i = ctx.coset_of(u);
    if i == 0 {
        return Err(Error::Precondition("u must lie outside N".into()));
    }
    if j == 0 || j == i {
        return Err(Error::Precondition("j must differ from the cosets of 1 and u".into()));
    }
    Ok(i)
}

/// `σ(S, u, j) = S_j ∩ S_{ji⁻¹}^{γ_i k_u}`, with `S_k = S ∩ O_k` and the
/// exponent acting by right multiplication.
pub fn sigma(ctx: &SigmaContext, s: ElemSet, u: usize, j: usize) -> Result<ElemSet> {
    let i = check_sigma_args(ctx, s, u, j)?;
    let g = &ctx.group;
    let s_j = s.intersection(ctx.cosets.sets[j]);
    let jl = ctx.coset_mul(j, ctx.coset_inv(i));
    let mover = g.mul(ctx.rep(i), ctx.k_of(u));
    let shifted = g.right_mul_set(s.intersection(ctx.cosets.sets[jl]), mover);
    Ok(s_j.intersection(shifted))
}

/// Common neighbours of the identity vertex and `u` inside `O_j`, read off
/// the Cayley graph.
pub fn sigma_direct(ctx: &SigmaContext, s: ElemSet, u: usize, j: usize) -> Result<ElemSet> {
    check_sigma_args(ctx, s, u, j)?;
    let graph = build_graph(&ctx.group, s)?;
    let adj = graph.adjacency();
    Ok(adj[0].intersection(adj[u]).intersection(ctx.cosets.sets[j]))
}

fn check_vertices(ctx: &SigmaContext, verts: &[usize]) -> Result<usize> {
    if !(2..=3).contains(&verts.len()) {
        return Err(Error::Precondition("two or three vertices required".into()));
    }
    if verts.iter().any(|&v| v >= ctx.group.order()) {
        return Err(Error::IndexOutOfRange { index: *verts.iter().max().unwrap(), order: ctx.group.order() });
    }
    let distinct: ElemSet = verts.iter().copied().collect();
    if distinct.len() != verts.len() {
        return Err(Error::Precondition("vertices must be distinct".into()));
    }
    let i = ctx.coset_of(verts[0]);
    if i == 0 || verts.iter().any(|&v| ctx.coset_of(v) != i) {
        return Err(Error::Precondition("vertices must share one coset other than N".into()));
    }
    Ok(i)
}

/// Exhaustive count of inverse-closed `S` on which `|σ(S, v, j)|` is the same
/// for every listed vertex, for each listed `j`.
fn count_sets(ctx: &SigmaContext, verts: &[usize], js: &[usize]) -> u64 {
    let g = &ctx.group;
    let i = ctx.coset_of(verts[0]);
    let plan: Vec<(ElemSet, ElemSet, Vec<usize>)> = js
        .iter()
        .map(|&j| {
            let jl = ctx.coset_mul(j, ctx.coset_inv(i));
            let movers = verts.iter().map(|&v| g.mul(ctx.rep(i), ctx.k_of(v))).collect();
            (ctx.cosets.sets[j], ctx.cosets.sets[jl], movers)
        })
        .collect();
    let e = &ctx.enumeration;
    (0..e.total())
        .filter(|&idx| {
            let s = e.decode(idx);
            plan.iter().all(|(oj, ojl, movers)| {
                let s_j = s.intersection(*oj);
                let s_jl = s.intersection(*ojl);
                let mut sizes = movers.iter().map(|&m| s_j.intersection(g.right_mul_set(s_jl, m)).len());
                let first = sizes.next().unwrap();
                sizes.all(|x| x == first)
            })
        })
        .count() as u64
}

/// `|Ψ(verts, j)|`: inverse-closed `S` on which `|σ(S, v, j)|` agrees for
/// every listed vertex. Pairs are judged against the five-way conclusion
/// for pairs, triples against `(3/4)·2^c(R)` unless `o(j) = o(ji⁻¹) = 2`.
pub fn psi_count(ctx: &SigmaContext, verts: &[usize], j: usize) -> Result<TrichotomyOutcome> {
    let i = check_vertices(ctx, verts)?;
    if j >= ctx.index() || j == 0 || j == i {
        return Err(Error::Precondition("j must differ from the cosets of 1 and the vertices".into()));
    }
    let w = if verts.len() == 2 {
        pair_clause(ctx, i, j, verts[0], verts[1])
    } else {
        both_involutions(ctx, i, j)
    };
    let count = count_sets(ctx, verts, &[j]);
    let c = ctx.enumeration.c();
    let bound = BoundValue::Rational { num: 3u64 << c, den: 4 };
    Ok(TrichotomyOutcome::decide(count, bound, w))
}

fn both_involutions(ctx: &SigmaContext, i: usize, j: usize) -> Option<ExceptionalWitness> {
    let jl = ctx.coset_mul(j, ctx.coset_inv(i));
    (ctx.coset_order(j) == 2 && ctx.coset_order(jl) == 2).then(|| witness(5, "o(j) = o(j i^-1) = 2", vec![]))
}

fn pair_clause(ctx: &SigmaContext, i: usize, j: usize, u: usize, v: usize) -> Option<ExceptionalWitness> {
    let g = &ctx.group;
    let (ku, kv) = (ctx.k_of(u), ctx.k_of(v));
    let jl = ctx.coset_mul(j, ctx.coset_inv(i));
    let (oi, oj, ojl) = (ctx.coset_order(i), ctx.coset_order(j), ctx.coset_order(jl));
    let gi = ctx.rep(i);
    let gj = ctx.rep(j);
    if ctx.coset_mul(j, j) == i {
        let gj2 = g.mul(gj, gj);
        let ybar = g.mul(g.inv(gj2), gi);
        debug_assert!(ctx.n.contains(ybar));
        let twist = |k: usize| {
            let a = g.mul(g.mul(g.inv(ybar), g.inv(gj)), ybar);
            g.mul(g.mul(a, k), gj)
        };
        let central = |x: usize| ctx.n.iter().all(|y| g.mul(x, y) == g.mul(y, x));
        if ku == twist(kv) && kv == twist(ku) && central(g.mul(gi, kv)) && central(g.mul(gi, ku)) {
            return Some(witness(2, "j^2 = i, k_u and k_v swapped by the ybar-twisted gamma_j action", vec![ybar]));
        }
    }
    let n_abelian = g.is_abelian_set(ctx.n);
    let inverting = |h: usize| {
        g.elem_order(h) == 4
            && g.mul(h, h) == g.mul(g.inv(kv), ku)
            && g.mul(h, h) == g.mul(g.inv(ku), kv)
            && n_abelian
            && ctx.n.iter().all(|y| g.conj(y, h) == g.inv(y))
    };
    if ojl > 2 && oj == 2 && oi % 2 == 0 && inverting(gj) {
        return Some(witness(3, "o(j) = 2, gamma_j of order 4 inverts abelian N", vec![gj]));
    }
    if ojl == 2 && oj > 2 && oi % 2 == 0 && inverting(ctx.rep(jl)) {
        return Some(witness(4, "o(j i^-1) = 2, gamma_{j i^-1} of order 4 inverts abelian N", vec![ctx.rep(jl)]));
    }
    both_involutions(ctx, i, j)
}

/// `|Ψ(verts)|`, the intersection of `Ψ(verts, j)` over every `j` outside
/// the cosets of 1 and the vertices, against `2^(c(R) − 0.02·|R|/|N|)`.
/// Applies to pairs in a coset of odd order and to triples when `R/N` is not
/// an elementary abelian 2-group.
pub fn psi_intersection(ctx: &SigmaContext, verts: &[usize]) -> Result<TrichotomyOutcome> {
    let i = check_vertices(ctx, verts)?;
    if verts.len() == 2 && ctx.coset_order(i) % 2 == 0 {
        return Err(Error::Precondition("pair bound needs the coset to have odd order".into()));
    }
    if verts.len() == 3 && ctx.quotient_is_elementary_2() {
        return Err(Error::Precondition("triple bound needs R/N not elementary abelian".into()));
    }
    let js: Vec<usize> = (1..ctx.index()).filter(|&j| j != i).collect();
    let count = count_sets(ctx, verts, &js);
    let r = ctx.group.order() as f64;
    let exponent = ctx.enumeration.c() as f64 - IODD_CONSTANT * r / ctx.n.len() as f64;
    Ok(TrichotomyOutcome::decide(count, BoundValue::PowerOfTwo { exponent }, None))
}
