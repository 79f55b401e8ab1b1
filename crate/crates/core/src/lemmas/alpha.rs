use super::{witness, BoundValue, ExceptionalWitness, TrichotomyOutcome};
use crate::bits::ElemSet;
use crate::cayley::Enumeration;
use crate::error::{Error, Result};
use crate::group::{
    cyclic, dic, direct_product, elementary_abelian, is_isomorphic, q8_times_ea_rank, DicDecomposition, FiniteGroup,
};

/// Largest `c(T)` counted exhaustively.
pub const AUX_MAX_C: usize = 24;

/// How the twisted map acts on `N` itself; the lemmas leave this free apart
/// from mapping `N` to `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    Identity,
    Inversion,
    /// `ῑ_A` for a decomposition of `N` given in `T`'s indices.
    BarIota(DicDecomposition),
    /// Images indexed by elements of `T`; only the entries on `N` are read.
    Custom(Vec<usize>),
}

impl Restriction {
    fn image(&self, g: &FiniteGroup, n: usize) -> usize {
        match self {
            Restriction::Identity => n,
            Restriction::Inversion => g.inv(n),
            Restriction::BarIota(d) => bar_iota_in(g, d, n),
            Restriction::Custom(m) => m.get(n).copied().unwrap_or(usize::MAX),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Restriction::Identity => "identity",
            Restriction::Inversion => "inversion",
            Restriction::BarIota(_) => "bar_iota",
            Restriction::Custom(_) => "custom",
        }
    }
}

/// The map applied to `n` in `γn ↦ γ·t·twist(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    Identity,
    Inversion,
    BarIota(DicDecomposition),
}

fn bar_iota_in(g: &FiniteGroup, d: &DicDecomposition, n: usize) -> usize {
    if d.a.contains(n) {
        n
    } else {
        g.mul(n, d.y)
    }
}

/// The permutation `α_t` of `T`: `n ↦ restriction(n)` on `N` and
/// `γn ↦ γ·t·twist(n)` on the other coset.
pub fn alpha_map(
    g: &FiniteGroup,
    n: ElemSet,
    gamma: usize,
    t: usize,
    restriction: &Restriction,
    twist: &Twist,
) -> Result<Vec<usize>> {
    let size = g.order();
    if gamma >= size || t >= size {
        return Err(Error::IndexOutOfRange { index: gamma.max(t), order: size });
    }
    if !g.is_subgroup(n) || 2 * n.len() != size {
        return Err(Error::Precondition("N must be a subgroup of index 2".into()));
    }
    if n.contains(gamma) {
        return Err(Error::Precondition("gamma must lie outside N".into()));
    }
    if !n.contains(t) {
        return Err(Error::Precondition("t must lie in N".into()));
    }
    let mut img = vec![usize::MAX; size];
    for x in n.iter() {
        let r = restriction.image(g, x);
        if r >= size || !n.contains(r) {
            return Err(Error::Precondition("restriction must map N into N".into()));
        }
        img[x] = r;
        let tw = match twist {
            Twist::Identity => x,
            Twist::Inversion => g.inv(x),
            Twist::BarIota(d) => bar_iota_in(g, d, x),
        };
        img[g.mul(gamma, x)] = g.mul(g.mul(gamma, t), tw);
    }
    let hit: ElemSet = img.iter().copied().filter(|&y| y < size).collect();
    if hit.len() != size {
        return Err(Error::Precondition("alpha_t is not a permutation of T".into()));
    }
    Ok(img)
}

/// Invariant inverse-closed subsets, by walking all `2^c(T)` of them in Gray
/// code order. Images of disjoint masks are disjoint, so `α(X)` updates by
/// one xor per step.
pub(crate) fn count_invariant_exhaustive(g: &FiniteGroup, alpha: &[usize]) -> Result<u64> {
    let e = Enumeration::with_budget(g, AUX_MAX_C)?;
    let masks = e.free_masks();
    let images: Vec<u128> = masks.iter().map(|m| m.iter().map(|x| 1u128 << alpha[x]).sum()).collect();
    let mut x = 0u128;
    let mut ax = 0u128;
    let mut count = 1u64; // the empty set
    for step in 1..e.total() {
        let k = step.trailing_zeros() as usize;
        x ^= masks[k].0;
        ax ^= images[k];
        count += (x == ax) as u64;
    }
    Ok(count)
}

/// `2^(number of orbits of ⟨α, inversion⟩)`.
pub(crate) fn count_invariant_orbits(g: &FiniteGroup, alpha: &[usize]) -> u64 {
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = n;
    for x in 0..n {
        for y in [alpha[x], g.inv(x)] {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
    }
    1u64 << comps
}

fn counted(g: &FiniteGroup, alpha: &[usize]) -> Result<u64> {
    let count = count_invariant_exhaustive(g, alpha)?;
    assert_eq!(count, count_invariant_orbits(g, alpha), "orbit formula disagrees with exhaustive count");
    Ok(count)
}

fn squares_within(g: &FiniteGroup, set: ElemSet) -> ElemSet {
    set.iter().map(|x| g.mul(x, x)).collect()
}

fn is_elementary_2(g: &FiniteGroup, set: ElemSet) -> bool {
    set.iter().all(|x| g.elem_order(x) <= 2)
}

/// `N ≅ C4 × C2^k`, for `N` abelian: exponent 4 with a single non-identity square.
fn is_c4_times_ea(g: &FiniteGroup, n: ElemSet, k: usize) -> bool {
    n.len() == 4 << k && n.iter().any(|x| g.elem_order(x) == 4) && squares_within(g, n).len() == 2
}

/// The order-16 group `⟨x, y | x⁴ = y⁴ = (xy)⁴ = 1, x² = y²⟩`, realised as
/// `Dic(C4 × C2)` over the involution outside the cyclic factor.
pub fn order16_presentation_group() -> FiniteGroup {
    let base = direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
    dic(&base, Some(1)).unwrap().0.with_label("C4:C4")
}

fn times_ea(g: FiniteGroup, l: usize) -> Result<FiniteGroup> {
    if l == 0 {
        Ok(g)
    } else {
        direct_product(&g, &elementary_abelian(l)?)
    }
}

fn c_exponent(c: usize, n_len: usize, divisor: f64) -> BoundValue {
    BoundValue::PowerOfTwo { exponent: c as f64 - n_len as f64 / divisor }
}

/// Invariant inverse-closed subsets for `(γn)^α = γ·t·n`.
pub fn alpha_invariant_count_aux1(
    g: &FiniteGroup,
    n: ElemSet,
    gamma: usize,
    t: usize,
    restriction: &Restriction,
) -> Result<TrichotomyOutcome> {
    let alpha = alpha_map(g, n, gamma, t, restriction, &Twist::Identity)?;
    let w = aux1_clause(g, n, gamma, t);
    let count = counted(g, &alpha)?;
    Ok(TrichotomyOutcome::decide(count, c_exponent(g.c_of_group(), n.len(), 16.0), w))
}

fn aux1_clause(g: &FiniteGroup, n: ElemSet, gamma: usize, t: usize) -> Option<ExceptionalWitness> {
    if g.is_abelian() && t != 0 && squares_within(g, g.all()) == ElemSet::from_elems([0, t]) && is_elementary_2(g, n) {
        return Some(witness(2, "T = C4 x C2^l, t the only non-identity square, N elementary abelian", vec![t]));
    }
    let d = DicDecomposition { a: n, y: t, x: gamma };
    if g.elem_order(t) == 2 && g.mul(gamma, gamma) == t && d.is_valid(g) {
        return Some(witness(3, "o(t) = 2, t = gamma^2, T = Dic(N, gamma^2, gamma)", vec![gamma, t]));
    }
    if t == 0 {
        return Some(witness(4, "t = 1", vec![]));
    }
    None
}

/// Invariant inverse-closed subsets for `(γn)^α = γ·t·n⁻¹` with `N` abelian
/// of exponent above 2. Fails with a precondition error when neither
/// `o(γ) = 2` nor `α` fixes every involution of `γN`.
pub fn alpha_invariant_count_aux2(
    g: &FiniteGroup,
    n: ElemSet,
    gamma: usize,
    t: usize,
    restriction: &Restriction,
) -> Result<TrichotomyOutcome> {
    if !g.is_abelian_set(n) || is_elementary_2(g, n) {
        return Err(Error::Precondition("N must be abelian of exponent greater than 2".into()));
    }
    let alpha = alpha_map(g, n, gamma, t, restriction, &Twist::Inversion)?;
    if gamma < g.order() && g.elem_order(gamma) != 2 {
        let coset = g.left_mul_set(gamma, n);
        if coset.iter().any(|x| g.elem_order(x) == 2 && alpha[x] != x) {
            return Err(Error::Precondition(
                "o(gamma) != 2 and alpha_t moves an involution of gamma N".into(),
            ));
        }
    }
    let w = aux2_clause(g, n, gamma, t);
    let count = counted(g, &alpha)?;
    Ok(TrichotomyOutcome::decide(count, c_exponent(g.c_of_group(), n.len(), 24.0), w))
}

fn aux2_clause(g: &FiniteGroup, n: ElemSet, gamma: usize, t: usize) -> Option<ExceptionalWitness> {
    let g2 = g.mul(gamma, gamma);
    if g.is_abelian() && t == g.inv(g2) {
        return Some(witness(2, "T abelian, t = gamma^-2", vec![gamma, t]));
    }
    if let Some(l) = q8_times_ea_rank(g) {
        if is_c4_times_ea(g, n, l) {
            return Some(witness(3, format!("T = Q8 x C2^{l}, N = C4 x C2^{l}"), vec![]));
        }
    }
    // The same map is (γm·n)^α = γm·(t·m⁻²)·n⁻¹ for every m ∈ N, so "t = γ²"
    // is read up to that change of representative.
    let rep = n.iter().find(|&m| {
        let gm = g.mul(gamma, m);
        g.mul(t, g.inv(g.mul(m, m))) == g.mul(gm, gm)
    });
    let size = g.order();
    if let Some(m) = rep.filter(|_| size >= 16 && size.is_power_of_two()) {
        let l = size.trailing_zeros() as usize - 4;
        if is_c4_times_ea(g, n, l + 1) {
            if let Ok(reference) = times_ea(order16_presentation_group(), l) {
                if is_isomorphic(g, &reference) {
                    let gm = g.mul(gamma, m);
                    let desc = format!("t = gamma^2 for gamma = {gm}, T = (C4:C4) x C2^{l}, N = C4 x C2^{}", l + 1);
                    return Some(witness(4, desc, vec![gm, g.mul(gm, gm)]));
                }
            }
        }
    }
    None
}

/// Invariant inverse-closed subsets for `(γn)^α = γ·t·ῑ_A(n)` with `N =
/// Dic(A, y, x)`. The verdict uses the bound `2^(c(T) − |N|/24)`; the reading
/// with `c(γN)` in place of `c(T)` is reported alongside.
pub fn alpha_invariant_count_aux3(
    g: &FiniteGroup,
    d: &DicDecomposition,
    gamma: usize,
    t: usize,
    restriction: &Restriction,
) -> Result<TrichotomyOutcome> {
    if d.x >= g.order() || d.y >= g.order() {
        return Err(Error::IndexOutOfRange { index: d.x.max(d.y), order: g.order() });
    }
    let n = g.generate(d.a.union(ElemSet::singleton(d.x)));
    if !d.is_valid_within(g, n) {
        return Err(Error::Precondition("not a generalised dicyclic decomposition of N".into()));
    }
    let alpha = alpha_map(g, n, gamma, t, restriction, &Twist::BarIota(d.clone()))?;
    let xa = n.difference(d.a);
    if d.a.iter().any(|a| !d.a.contains(alpha[a])) || xa.iter().any(|b| !xa.contains(alpha[b])) {
        return Err(Error::Precondition("restriction must preserve A and xA".into()));
    }
    let w = aux3_clause(g, d, gamma, t);
    let count = counted(g, &alpha)?;
    let mut out = TrichotomyOutcome::decide(count, c_exponent(g.c_of_group(), n.len(), 24.0), w);
    let coset = g.left_mul_set(gamma, n);
    let alt = c_exponent(g.c_value(coset)?, n.len(), 24.0);
    out.alt_within_bound = Some(alt.admits(count));
    out.alt_bound = Some(alt);
    Ok(out)
}

fn aux3_clause(g: &FiniteGroup, d: &DicDecomposition, gamma: usize, t: usize) -> Option<ExceptionalWitness> {
    let g2 = g.mul(gamma, gamma);
    if g2 == d.y && t == d.y && d.a.iter().all(|a| g.conj(a, gamma) == g.inv(a)) {
        return Some(witness(2, "gamma^2 = y = t, gamma inverts A", vec![gamma, t]));
    }
    if t == 0 {
        let b = g.generate(d.a.union(ElemSet::singleton(gamma)));
        let big = DicDecomposition { a: b, y: d.y, x: d.x };
        if g.is_abelian_set(b) && big.is_valid(g) {
            return Some(witness(3, "t = 1, <gamma, A> abelian, T = Dic(<gamma, A>, y, x)", b.to_vec()));
        }
    }
    None
}
