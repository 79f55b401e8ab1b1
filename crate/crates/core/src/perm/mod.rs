//! Permutations, permutation groups and graph automorphism queries.
//!
//! Composition follows right actions: `p.then(q)` applies `p` first.

mod search;

pub use search::SearchOptions;

use crate::bits::ElemSet;
use crate::cayley::{build_graph, CayleyGraph};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAutomorphism};
use search::Searcher;
use serde::{Serialize, Serializer};
use std::collections::HashSet;
use std::sync::OnceLock;

/// Default cap on materialized group elements.
pub const ELEMENT_LIMIT: usize = 1_000_000;
/// Default vertex budget for automorphism searches.
pub const MAX_VERTICES: usize = 40;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.images.iter().map(|&x| x as usize))
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation::from_fn(n, |i| i)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Self {
        debug_assert!(n <= 256);
        Permutation { images: (0..n).map(|i| f(i) as u8).collect() }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > 128 {
            return Err(Error::budget("permutation degree", n, 128));
        }
        let seen: ElemSet = images.iter().copied().filter(|&x| x < n).collect();
        if seen.len() != n {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
        Ok(Permutation::from_fn(n, |i| images[i]))
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                img[a] = cyc[(k + 1) % cyc.len()];
            }
        }
        Permutation::from_images(&img)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn map_set(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.apply(x)).collect()
    }

    /// Whether `self` maps every adjacency row onto the row of the image.
    pub fn preserves(&self, adj: &[ElemSet]) -> bool {
        adj.len() == self.degree() && (0..adj.len()).all(|v| self.map_set(adj[v]) == adj[self.apply(v)])
    }
}

/// A permutation group with known order and lazily materialized elements.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order: Option<u128>,
    elements: OnceLock<Vec<Permutation>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        PermGroup { degree: self.degree, generators: self.generators.clone(), order: self.order, elements }
    }
}

#[derive(Serialize)]
struct PermGroupView<'a> {
    degree: usize,
    order: Option<String>,
    generators: &'a [Permutation],
}

impl Serialize for PermGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermGroupView { degree: self.degree, order: self.order.map(|o| o.to_string()), generators: &self.generators }
            .serialize(s)
    }
}

fn closure(degree: usize, gens: &[Permutation], limit: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let p = out[head].clone();
        head += 1;
        for g in gens {
            let q = p.then(g);
            if !seen.contains(&q) {
                if out.len() >= limit {
                    return Err(Error::budget("group elements", out.len() + 1, limit));
                }
                seen.insert(q.clone());
                out.push(q);
            }
        }
    }
    out.sort();
    Ok(out)
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_elements(degree, vec![Permutation::identity(degree)])
    }

    /// Closes `gens` under composition.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidParameter("generator degree mismatch".into()));
        }
        let elems = closure(degree, &gens, ELEMENT_LIMIT)?;
        let g = PermGroup { degree, generators: gens, order: Some(elems.len() as u128), elements: OnceLock::new() };
        let _ = g.elements.set(elems);
        Ok(g)
    }

    /// Wraps an element list already known to be a group; generators are
    /// picked greedily from it.
    pub fn from_elements(degree: usize, mut elems: Vec<Permutation>) -> Self {
        elems.sort();
        let mut gens = Vec::new();
        let mut reached: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for e in &elems {
            if !reached.contains(e) {
                gens.push(e.clone());
                reached = closure(degree, &gens, usize::MAX).unwrap().into_iter().collect();
            }
        }
        debug_assert_eq!(reached.len(), elems.len());
        let g = PermGroup { degree, generators: gens, order: Some(elems.len() as u128), elements: OnceLock::new() };
        let _ = g.elements.set(elems);
        g
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
            let cyc: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cyc]).unwrap());
        }
        let order = (1..=n as u128).try_fold(1u128, |a, k| a.checked_mul(k));
        PermGroup { degree: n, generators: gens, order, elements: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// `None` when the order does not fit in 128 bits.
    pub fn order(&self) -> Option<u128> {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == Some(1)
    }

    pub fn elements(&self) -> Result<&[Permutation]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        match self.order {
            Some(o) if o <= ELEMENT_LIMIT as u128 => {}
            _ => return Err(Error::budget("group elements", self.order.unwrap_or(u128::MAX).min(u64::MAX as u128) as u64, ELEMENT_LIMIT)),
        }
        let e = closure(self.degree, &self.generators, ELEMENT_LIMIT)?;
        debug_assert_eq!(Some(e.len() as u128), self.order);
        Ok(self.elements.get_or_init(|| e))
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        Ok(self.elements()?.binary_search(p).is_ok())
    }

    pub fn orbit(&self, v: usize) -> ElemSet {
        search::orbit_of(v, &self.generators, self.degree)
    }

    fn filter(&self, keep: impl Fn(&Permutation) -> bool) -> Result<PermGroup> {
        let elems: Vec<Permutation> = self.elements()?.iter().filter(|p| keep(p)).cloned().collect();
        Ok(PermGroup::from_elements(self.degree, elems))
    }
}

/// Full automorphism group of a graph given by adjacency rows.
pub fn automorphisms_of(adj: &[ElemSet], opts: SearchOptions) -> Result<PermGroup> {
    if adj.len() > MAX_VERTICES {
        return Err(Error::budget("vertices", adj.len(), MAX_VERTICES));
    }
    let chain = Searcher::new(adj, opts).chain(&[], false);
    let order = chain.orbit_lengths.iter().try_fold(1u128, |a, &k| a.checked_mul(k as u128));
    debug_assert!(chain.generators.iter().all(|g| g.preserves(adj)));
    Ok(PermGroup { degree: adj.len(), generators: chain.generators, order, elements: OnceLock::new() })
}

pub fn graph_automorphisms(graph: &CayleyGraph) -> Result<PermGroup> {
    automorphisms_of(graph.adjacency(), SearchOptions::default())
}

/// Some nontrivial automorphism fixing every vertex of `fixed`, if any.
pub fn nontrivial_pointwise_stabilizer_element(adj: &[ElemSet], fixed: &[usize]) -> Option<Permutation> {
    Searcher::new(adj, SearchOptions::default()).chain(fixed, true).generators.pop()
}

/// Whether `Aut(Γ(G,S))` is exactly the right-regular copy of `G`. Stops at
/// the first nontrivial automorphism fixing the identity vertex.
pub fn is_grr(g: &FiniteGroup, s: ElemSet) -> Result<bool> {
    if g.order() > MAX_VERTICES {
        return Err(Error::budget("vertices", g.order(), MAX_VERTICES));
    }
    let graph = build_graph(g, s)?;
    Ok(nontrivial_pointwise_stabilizer_element(graph.adjacency(), &[0]).is_none())
}

pub fn point_stabilizer(p: &PermGroup, v: usize) -> Result<PermGroup> {
    if v >= p.degree {
        return Err(Error::IndexOutOfRange { index: v, order: p.degree });
    }
    p.filter(|q| q.apply(v) == v)
}

/// `{p ∈ P : p⁻¹ H p = H}` by filtering the elements of `P`.
pub fn normalizer_of_regular_subgroup(p: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if h.degree != p.degree {
        return Err(Error::InvalidParameter("degree mismatch".into()));
    }
    for g in h.generators() {
        if !p.contains(g)? {
            return Err(Error::Precondition("H is not a subgroup of P".into()));
        }
    }
    let hs: HashSet<&Permutation> = h.elements()?.iter().collect();
    p.filter(|q| {
        let qi = q.inverse();
        h.generators().iter().all(|g| hs.contains(&qi.then(g).then(q)))
    })
}

/// `ι_f` on `N`: the map `n ↦ m` with `f⁻¹ ρ_n f = ρ_m`, as an automorphism
/// of `N` in the indexing of [`FiniteGroup::subgroup`].
pub fn conjugation_action_on_n(f: &Permutation, g: &FiniteGroup, n: ElemSet) -> Result<GroupAutomorphism> {
    let (sub, emb) = g.subgroup(n)?;
    let mut back = vec![usize::MAX; g.order()];
    for (k, &e) in emb.iter().enumerate() {
        back[e] = k;
    }
    let finv = f.inverse();
    let mut images = Vec::with_capacity(emb.len());
    for &e in &emb {
        let rho = crate::cayley::right_translation(g, e);
        let q = finv.then(&rho).then(f);
        let m = q.apply(0);
        if back[m] == usize::MAX || q != crate::cayley::right_translation(g, m) {
            return Err(Error::Precondition("f does not normalize the regular copy of N".into()));
        }
        images.push(back[m]);
    }
    GroupAutomorphism::from_images(&sub, images)
}

/// Elements of `P` leaving every block of `orbits` setwise invariant.
pub fn orbit_fixing_subgroup(p: &PermGroup, orbits: &[ElemSet]) -> Result<PermGroup> {
    let mut acc = ElemSet::EMPTY;
    for o in orbits {
        if !acc.intersection(*o).is_empty() || o.is_empty() {
            return Err(Error::Precondition("orbits are not a partition".into()));
        }
        acc = acc.union(*o);
    }
    if acc != ElemSet::full(p.degree) {
        return Err(Error::Precondition("orbits do not cover the vertex set".into()));
    }
    p.filter(|q| orbits.iter().all(|&o| q.map_set(o) == o))
}
