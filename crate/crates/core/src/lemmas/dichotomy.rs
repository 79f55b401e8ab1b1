use super::{witness, BoundValue, TrichotomyOutcome};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAutomorphism};

fn check_args(n: &FiniteGroup, alpha: &GroupAutomorphism, t: usize) -> Result<()> {
    if alpha.images().len() != n.order() {
        return Err(Error::InvalidParameter(format!(
            "automorphism has degree {} but the group has order {}",
            alpha.images().len(),
            n.order()
        )));
    }
    if t >= n.order() {
        return Err(Error::IndexOutOfRange { index: t, order: n.order() });
    }
    Ok(())
}

fn three_quarters(n: &FiniteGroup) -> BoundValue {
    BoundValue::Rational { num: 3 * n.order() as u64, den: 4 }
}

/// Number of `n` with `n·α(n) = t`, against `3|N|/4`.
pub fn icecream_count(n: &FiniteGroup, alpha: &GroupAutomorphism, t: usize) -> Result<TrichotomyOutcome> {
    check_args(n, alpha, t)?;
    let count = (0..n.order()).filter(|&x| n.mul(x, alpha.apply(x)) == t).count() as u64;
    let shape = n.is_abelian() && t == 0 && (0..n.order()).all(|x| alpha.apply(x) == n.inv(x));
    let w = shape.then(|| witness(2, "N abelian, t = 1, alpha = inversion", vec![]));
    Ok(TrichotomyOutcome::decide(count, three_quarters(n), w))
}

/// Number of `n` with `n·α(n)⁻¹ = t`, against `3|N|/4`.
pub fn gelato_count(n: &FiniteGroup, alpha: &GroupAutomorphism, t: usize) -> Result<TrichotomyOutcome> {
    check_args(n, alpha, t)?;
    let count = (0..n.order()).filter(|&x| n.mul(x, n.inv(alpha.apply(x))) == t).count() as u64;
    let shape = t == 0 && alpha.is_identity();
    let w = shape.then(|| witness(2, "t = 1, alpha = identity", vec![]));
    Ok(TrichotomyOutcome::decide(count, three_quarters(n), w))
}
