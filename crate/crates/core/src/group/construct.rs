use super::{dic, FiniteGroup};
use crate::bits::MAX_ORDER;
use crate::error::{Error, Result};

/// `C_n`; element `k` is `a^k`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    FiniteGroup::from_fn(n, format!("C{n}"), |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`: `r^k` is `k`, `s r^k` is `n + k`, with `r s = s r⁻¹`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("D{n}: dihedral needs n >= 3")));
    }
    FiniteGroup::from_fn(2 * n, format!("D{n}"), |x, y| {
        let (a, i) = (x / n, x % n);
        let (b, j) = (y / n, y % n);
        let k = if b == 0 { (i + j) % n } else { (n - i + j) % n };
        ((a + b) % 2) * n + k
    })
}

/// `C_2^k` as bit vectors under xor.
pub fn elementary_abelian(k: usize) -> Result<FiniteGroup> {
    if 1usize.checked_shl(k as u32).map_or(true, |n| n > MAX_ORDER) {
        return Err(Error::budget("group order", 1u128 << k.min(100), MAX_ORDER));
    }
    FiniteGroup::from_fn(1 << k, format!("EA{k}"), |a, b| a ^ b)
}

/// `G × H`; the pair `(g, h)` is `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let m = h.order();
    let n = g.order().checked_mul(m).unwrap_or(usize::MAX);
    if n > MAX_ORDER {
        return Err(Error::budget("group order", n, MAX_ORDER));
    }
    FiniteGroup::from_fn(n, format!("{}x{}", g.label(), h.label()), |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    })
}

/// The quaternion group, built as `Dic(C4)`.
pub fn quaternion() -> FiniteGroup {
    let c4 = cyclic(4).expect("C4");
    dic(&c4, None).expect("Dic(C4)").0.with_label("Q8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_orders() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!((v4.order(), v4.exponent()), (4, 2));
        let q = direct_product(&quaternion(), &elementary_abelian(2).unwrap()).unwrap();
        assert_eq!(q.order(), 32);
        assert_eq!(q.label(), "Q8xEA2");
        assert!(dihedral(2).is_err());
        assert!(cyclic(0).is_err());
        assert!(cyclic(129).is_err());
        assert!(elementary_abelian(8).is_err());
    }

    #[test]
    fn dihedral_relations() {
        let d = dihedral(5).unwrap();
        let (r, s) = (1, 5);
        assert_eq!(d.elem_order(r), 5);
        assert_eq!(d.elem_order(s), 2);
        assert_eq!(d.mul(r, s), d.mul(s, d.inv(r)));
        assert!(!d.is_abelian());
    }

    #[test]
    fn small_constructors_are_associative() {
        for g in [
            cyclic(6).unwrap(),
            dihedral(4).unwrap(),
            elementary_abelian(3).unwrap(),
            quaternion(),
            direct_product(&dihedral(3).unwrap(), &cyclic(2).unwrap()).unwrap(),
        ] {
            assert!(g.check_associative(), "{}", g.label());
        }
    }
}
