use super::{witness, BoundValue, TrichotomyOutcome};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest ground set counted exhaustively.
pub const TRICHOTOMY_MAX_SIZE: usize = 24;

/// Structural witness that `|S ∩ S^f| = |S ∩ S^g|` for every `S`: on `I` the
/// two maps agree, and off `I` one is the inverse of the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antisymmetry {
    pub agree_on: Vec<usize>,
}

/// Fires iff `F − G` is antisymmetric with zero diagonal, where `F`, `G` are
/// the permutation matrices. The zero rows form `I`, and the claimed
/// structure of `f` and `g` on and off `I` is checked before returning.
pub fn detect_antisymmetry(f: &Permutation, g: &Permutation) -> Option<Antisymmetry> {
    let n = f.degree();
    let entry = |x: usize, y: usize| (f.apply(x) == y) as i8 - (g.apply(x) == y) as i8;
    for x in 0..n {
        if entry(x, x) != 0 {
            return None;
        }
        // only the nonzero entries of row x can break antisymmetry
        for y in [f.apply(x), g.apply(x)] {
            if entry(x, y) != -entry(y, x) {
                return None;
            }
        }
    }
    let agree_on: Vec<usize> = (0..n).filter(|&x| f.apply(x) == g.apply(x)).collect();
    let in_i = |x: usize| agree_on.binary_search(&x).is_ok();
    let ginv = g.inverse();
    let ok = agree_on.iter().all(|&x| in_i(f.apply(x)) && in_i(g.apply(x)))
        && (0..n).filter(|&x| !in_i(x)).all(|x| f.apply(x) == ginv.apply(x));
    assert!(ok, "antisymmetric difference without the expected structure");
    Some(Antisymmetry { agree_on })
}

struct ImageTable {
    chunks: Vec<[u32; 256]>,
}

impl ImageTable {
    fn new(p: &Permutation) -> Self {
        let n = p.degree();
        let chunks = (0..n.div_ceil(8))
            .map(|c| {
                let mut t = [0u32; 256];
                for (b, slot) in t.iter_mut().enumerate() {
                    for k in 0..8 {
                        let x = 8 * c + k;
                        if b >> k & 1 == 1 && x < n {
                            *slot |= 1 << p.apply(x);
                        }
                    }
                }
                t
            })
            .collect();
        ImageTable { chunks }
    }

    fn image(&self, s: u32) -> u32 {
        self.chunks.iter().enumerate().fold(0, |acc, (c, t)| acc | t[(s >> (8 * c)) as usize & 0xff])
    }
}

/// Exact count of `S ⊆ X` with `|S ∩ S^f| = |S ∩ S^g|`, against `(3/4)·2^|X|`.
pub fn intersection_trichotomy(size: usize, f: &Permutation, g: &Permutation) -> Result<TrichotomyOutcome> {
    if f.degree() != size || g.degree() != size {
        return Err(Error::InvalidParameter("permutations must act on the ground set".into()));
    }
    if size > TRICHOTOMY_MAX_SIZE {
        return Err(Error::budget("|X|", size, TRICHOTOMY_MAX_SIZE));
    }
    let w = detect_antisymmetry(f, g).map(|a| witness(2, "F - G antisymmetric; f = g on I, f = g^-1 off I", a.agree_on));
    let (tf, tg) = (ImageTable::new(f), ImageTable::new(g));
    let count = (0u32..1 << size)
        .filter(|&s| (s & tf.image(s)).count_ones() == (s & tg.image(s)).count_ones())
        .count() as u64;
    let bound = BoundValue::Rational { num: 3u64 << size, den: 4 };
    Ok(TrichotomyOutcome::decide(count, bound, w))
}
