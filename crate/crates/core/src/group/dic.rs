use super::{direct_product, elementary_abelian, is_isomorphic, quaternion, FiniteGroup, GroupAutomorphism};
use crate::bits::ElemSet;
use crate::error::{Error, Result};
use serde::Serialize;

/// Witness that a group is `Dic(A, y, x)`: `A` abelian of index 2 and exponent
/// above 2, `x ∉ A`, `x² = y` an involution, and `x` inverts `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DicDecomposition {
    pub a: ElemSet,
    pub y: usize,
    pub x: usize,
}

impl DicDecomposition {
    pub fn is_valid(&self, g: &FiniteGroup) -> bool {
        self.is_valid_within(g, g.all())
    }

    /// Validity as a decomposition of the subgroup `n` of `g`.
    pub fn is_valid_within(&self, g: &FiniteGroup, n: ElemSet) -> bool {
        let a = self.a;
        2 * a.len() == n.len()
            && a.is_subset(n)
            && n.contains(self.x)
            && g.is_subgroup(a)
            && g.is_abelian_set(a)
            && a.iter().any(|e| g.elem_order(e) > 2)
            && a.contains(self.y)
            && g.elem_order(self.y) == 2
            && !a.contains(self.x)
            && g.mul(self.x, self.x) == self.y
            && a.iter().all(|e| g.conj(e, self.x) == g.inv(e))
    }
}

/// `Dic(A, y, x)` with `A` as the first half of the indices and `a·x` at
/// `|A| + a`. `y` defaults to the unique involution of `A`.
pub fn dic(a: &FiniteGroup, y: Option<usize>) -> Result<(FiniteGroup, DicDecomposition)> {
    if !a.is_abelian() {
        return Err(Error::DicNotAbelian);
    }
    let m = a.order();
    if m % 2 == 1 {
        return Err(Error::DicOddOrder(m));
    }
    if a.exponent() <= 2 {
        return Err(Error::DicExponentTooSmall);
    }
    let y = match y {
        Some(y) => {
            if y >= m {
                return Err(Error::IndexOutOfRange { index: y, order: m });
            }
            if a.elem_order(y) != 2 {
                return Err(Error::DicNotInvolution(y));
            }
            y
        }
        None => {
            let invs: Vec<usize> = (0..m).filter(|&e| a.elem_order(e) == 2).collect();
            if invs.len() != 1 {
                return Err(Error::DicAmbiguousInvolution(invs.len()));
            }
            invs[0]
        }
    };
    let label = format!("Dic({})", a.label());
    let g = FiniteGroup::from_fn(2 * m, label, |p, q| {
        let (e, u) = (p / m, p % m);
        let (f, v) = (q / m, q % m);
        let v = if e == 1 { a.inv(v) } else { v };
        let w = a.mul(u, v);
        if e + f == 2 {
            a.mul(w, y)
        } else {
            (e + f) * m + w
        }
    })?;
    let d = DicDecomposition { a: ElemSet::full(m), y, x: m };
    debug_assert!(d.is_valid(&g));
    Ok((g, d))
}

/// The automorphism fixing `A` pointwise and sending `a·x` to `a·x⁻¹`, which
/// is `g ↦ g·y` off `A`.
pub fn bar_iota(g: &FiniteGroup, d: &DicDecomposition) -> Result<GroupAutomorphism> {
    let images = (0..g.order()).map(|e| if d.a.contains(e) { e } else { g.mul(e, d.y) }).collect();
    GroupAutomorphism::from_images(g, images)
}

/// All subgroups of index 2, as hyperplanes of `G / ⟨squares⟩`.
pub fn index_two_subgroups(g: &FiniteGroup) -> Vec<ElemSet> {
    let squares: ElemSet = (0..g.order()).map(|x| g.mul(x, x)).collect();
    let k = g.generate(squares);
    let mut coord = vec![u32::MAX; g.order()];
    for e in k.iter() {
        coord[e] = 0;
    }
    let mut span = k;
    let mut basis = Vec::new();
    while span != g.all() {
        let q = g.all().difference(span).first().unwrap();
        let bit = 1u32 << basis.len();
        for e in span.iter() {
            coord[g.mul(e, q)] = coord[e] | bit;
        }
        span = g.generate(span.union(ElemSet::singleton(q)));
        basis.push(q);
    }
    debug_assert!(coord.iter().all(|&c| c != u32::MAX));
    let d = basis.len() as u32;
    (1u32..1 << d)
        .map(|f| (0..g.order()).filter(|&e| (coord[e] & f).count_ones() % 2 == 0).collect())
        .collect()
}

/// One decomposition per abelian index-2 subgroup `A` over which `G` is
/// generalised dicyclic; empty when `G` is not generalised dicyclic.
pub fn is_generalized_dicyclic(g: &FiniteGroup) -> Vec<DicDecomposition> {
    let mut out = Vec::new();
    for a in index_two_subgroups(g) {
        if !g.is_abelian_set(a) || a.iter().all(|e| g.elem_order(e) <= 2) {
            continue;
        }
        let x = g.all().difference(a).first().unwrap();
        let d = DicDecomposition { a, y: g.mul(x, x), x };
        if d.is_valid(g) {
            out.push(d);
        }
    }
    out
}

pub fn is_abelian_exp_gt2(g: &FiniteGroup) -> bool {
    g.is_abelian() && g.exponent() > 2
}

/// `Some(ℓ)` iff `G ≅ Q8 × C2^ℓ`.
pub fn q8_times_ea_rank(g: &FiniteGroup) -> Option<usize> {
    let n = g.order();
    if n < 8 || !n.is_power_of_two() || g.is_abelian() || g.exponent() != 4 {
        return None;
    }
    let l = n.trailing_zeros() as usize - 3;
    let reference = if l == 0 {
        quaternion()
    } else {
        direct_product(&quaternion(), &elementary_abelian(l).ok()?).ok()?
    };
    is_isomorphic(g, &reference).then_some(l)
}
