//! Individualization–refinement backtracking over graph automorphisms.
//!
//! Source and target colorings are refined in lockstep; a branch dies as soon
//! as their color-class profiles differ. Leaves are verified edge by edge, so
//! refinement only prunes and never decides membership.

use crate::bits::ElemSet;
use crate::perm::Permutation;
use std::ops::ControlFlow;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Neighbor-color multiset rounds after the degree round.
    pub refine_rounds: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { refine_rounds: 2 }
    }
}

pub(crate) struct Searcher<'a> {
    adj: &'a [ElemSet],
    n: usize,
    rounds: usize,
}

type Colors = Vec<u32>;

/// Output of a stabilizer-chain search.
pub(crate) struct Chain {
    pub generators: Vec<Permutation>,
    pub orbit_lengths: Vec<usize>,
}

impl<'a> Searcher<'a> {
    pub fn new(adj: &'a [ElemSet], opts: SearchOptions) -> Self {
        Searcher { adj, n: adj.len(), rounds: opts.refine_rounds + 1 }
    }

    fn signatures(&self, colors: &Colors) -> Vec<(u32, Vec<u32>)> {
        (0..self.n)
            .map(|v| {
                let mut nb: Vec<u32> = self.adj[v].iter().map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect()
    }

    /// Refines both colorings with the same rule; false if they diverge.
    fn refine_pair(&self, src: &mut Colors, tgt: &mut Colors) -> bool {
        for _ in 0..self.rounds {
            let ss = self.signatures(src);
            let ts = self.signatures(tgt);
            let mut keys: Vec<&(u32, Vec<u32>)> = ss.iter().collect();
            keys.sort();
            keys.dedup();
            let before = distinct(src);
            let mut src_count = vec![0usize; keys.len()];
            let mut tgt_count = vec![0usize; keys.len()];
            for v in 0..self.n {
                let k = keys.binary_search(&&ss[v]).unwrap();
                src[v] = k as u32;
                src_count[k] += 1;
                match keys.binary_search(&&ts[v]) {
                    Ok(k) => {
                        tgt[v] = k as u32;
                        tgt_count[k] += 1;
                    }
                    Err(_) => return false,
                }
            }
            if src_count != tgt_count {
                return false;
            }
            if keys.len() == before {
                break;
            }
        }
        true
    }

    fn refine_one(&self, c: &mut Colors) {
        let mut t = c.clone();
        self.refine_pair(c, &mut t);
    }

    fn individualize(&self, c: &mut Colors, v: usize) {
        c[v] = self.n as u32 + 1;
    }

    /// Smallest non-singleton class (lowest color on ties) and its least vertex.
    fn target_cell(&self, c: &Colors) -> Option<(u32, usize)> {
        let mut count = vec![0usize; self.n + 2];
        for &x in c {
            count[x as usize] += 1;
        }
        let (color, _) = count
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 1)
            .min_by_key(|(col, &k)| (k, *col))?;
        let v = (0..self.n).find(|&v| c[v] as usize == color).unwrap();
        Some((color as u32, v))
    }

    fn leaf(&self, src: &Colors, tgt: &Colors) -> Option<Permutation> {
        let mut pos = vec![usize::MAX; self.n];
        for (v, &c) in tgt.iter().enumerate() {
            pos[c as usize] = v;
        }
        let p = Permutation::from_fn(self.n, |v| pos[src[v] as usize]);
        p.preserves(self.adj).then_some(p)
    }

    /// Visits every automorphism compatible with the paired colorings.
    pub fn search(
        &self,
        src: &Colors,
        tgt: &Colors,
        visit: &mut dyn FnMut(Permutation) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some((color, v)) = self.target_cell(src) else {
            return match self.leaf(src, tgt) {
                Some(p) => visit(p),
                None => ControlFlow::Continue(()),
            };
        };
        for w in (0..self.n).filter(|&w| tgt[w] == color) {
            let mut s2 = src.clone();
            let mut t2 = tgt.clone();
            self.individualize(&mut s2, v);
            self.individualize(&mut t2, w);
            if self.refine_pair(&mut s2, &mut t2) {
                self.search(&s2, &t2, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    pub fn initial(&self) -> Colors {
        let mut c = vec![0; self.n];
        self.refine_one(&mut c);
        c
    }

    /// Builds a base and strong generators, deepest level first. With a
    /// nonempty `fixed` prefix only the pointwise stabilizer of `fixed` is
    /// searched; `stop_at_first` returns after the first generator found.
    pub fn chain(&self, fixed: &[usize], stop_at_first: bool) -> Chain {
        let mut levels: Vec<(Colors, u32, usize)> = Vec::new();
        let mut c = self.initial();
        let mut base = Vec::new();
        for &v in fixed {
            self.individualize(&mut c, v);
            self.refine_one(&mut c);
            base.push(v);
        }
        while let Some((color, v)) = self.target_cell(&c) {
            levels.push((c.clone(), color, v));
            self.individualize(&mut c, v);
            self.refine_one(&mut c);
            base.push(v);
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut lengths = vec![1usize; base.len()];
        for (i, (part, color, b)) in levels.iter().enumerate().rev() {
            let mut orbit = orbit_of(*b, &gens, self.n);
            for w in (0..self.n).filter(|&w| part[w] == *color) {
                if orbit.contains(w) {
                    continue;
                }
                let mut s2 = part.clone();
                let mut t2 = part.clone();
                self.individualize(&mut s2, *b);
                self.individualize(&mut t2, w);
                if !self.refine_pair(&mut s2, &mut t2) {
                    continue;
                }
                let mut found = None;
                let _ = self.search(&s2, &t2, &mut |p| {
                    found = Some(p);
                    ControlFlow::Break(())
                });
                if let Some(p) = found {
                    gens.push(p);
                    if stop_at_first {
                        return Chain { generators: gens, orbit_lengths: lengths };
                    }
                    orbit = orbit_of(*b, &gens, self.n);
                }
            }
            lengths[fixed.len() + i] = orbit.len();
        }
        Chain { generators: gens, orbit_lengths: lengths }
    }
}

fn distinct(c: &Colors) -> usize {
    let mut v = c.clone();
    v.sort_unstable();
    v.dedup();
    v.len()
}

pub(crate) fn orbit_of(v: usize, gens: &[Permutation], n: usize) -> ElemSet {
    debug_assert!(n <= 128);
    let mut orbit = ElemSet::singleton(v);
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !orbit.contains(y) {
                orbit.insert(y);
                stack.push(y);
            }
        }
    }
    orbit
}
