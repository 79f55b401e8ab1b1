use grr_census::catalog::catalog_groups;
use grr_census::cayley::{build_graph, Enumeration};
use grr_census::census::{classify_set, classify_set_by_filter, GroupContext};
use grr_census::group::{automorphism_group, index_two_subgroups, FiniteGroup};
use grr_census::lemmas::{
    alpha_invariant_count_aux1, alpha_invariant_count_aux2, gelato_count, icecream_count, intersection_trichotomy,
    CaseTag, Restriction,
};
use grr_census::perm::{graph_automorphisms, Permutation};
use grr_census::ElemSet;
use proptest::prelude::*;
use proptest::sample::Index;
use std::sync::OnceLock;

fn groups(max: usize) -> &'static [FiniteGroup] {
    static SMALL: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    static MID: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    let cell = if max <= 12 { &SMALL } else { &MID };
    cell.get_or_init(|| catalog_groups(if max <= 12 { 12 } else { 16 }))
}

fn pick<'a, T>(v: &'a [T], i: &Index) -> &'a T {
    &v[i.index(v.len())]
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_round_trips(gi: Index, k: u64) {
        let g = pick(groups(16), &gi);
        let e = Enumeration::new(g).unwrap();
        let idx = k % e.total();
        let s = e.decode(idx);
        prop_assert!(g.is_inverse_closed(s));
        prop_assert_eq!(e.encode(s), Some(idx));
        prop_assert_eq!(ElemSet::from_hex(&s.to_hex(g.order())), Some(s));
    }

    #[test]
    fn cayley_automorphisms_contain_translations_and_respect_relabelling(gi: Index, k: u64, ai: Index) {
        let g = pick(groups(12), &gi);
        let e = Enumeration::new(g).unwrap();
        let s = e.decode(k % e.total());
        let aut = graph_automorphisms(&build_graph(g, s).unwrap()).unwrap();
        let order = aut.order().unwrap();
        prop_assert_eq!(order % g.order() as u128, 0);
        // Cay(G, S) ≅ Cay(G, S^φ) for φ ∈ Aut(G)
        let auts = automorphism_group(g).unwrap();
        let phi = pick(&auts, &ai);
        let image: ElemSet = s.iter().map(|x| phi.apply(x)).collect();
        let other = graph_automorphisms(&build_graph(g, image).unwrap()).unwrap();
        prop_assert_eq!(other.order(), Some(order));
    }

    #[test]
    fn structured_and_literal_classifiers_agree(gi: Index, k: u64, ni: Index) {
        let g = pick(groups(12), &gi);
        let gctx = GroupContext::new(g.clone()).unwrap();
        let ns = gctx.eligible_normal_subgroups().unwrap();
        prop_assume!(!ns.is_empty());
        let n = *pick(&ns, &ni);
        let s = gctx.enumeration.decode(k % gctx.enumeration.total());
        // the literal route lists Aut(Γ); skip the few graphs where that is huge
        let aut = graph_automorphisms(&build_graph(g, s).unwrap()).unwrap();
        prop_assume!(aut.order().unwrap() <= 50_000);
        let a = classify_set(g, n, s).unwrap();
        let b = classify_set_by_filter(g, n, s).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(!(a.s_n1 && a.t_n) && !(a.t_n && a.u_n));
    }

    #[test]
    fn trichotomy_symmetries(p in perm(8), q in perm(8)) {
        let base = intersection_trichotomy(8, &p, &q).unwrap();
        prop_assert_eq!(intersection_trichotomy(8, &q, &p).unwrap().count, base.count);
        // |S ∩ S^f| = |S ∩ S^{f⁻¹}|
        prop_assert_eq!(intersection_trichotomy(8, &p.inverse(), &q).unwrap().count, base.count);
        prop_assert_eq!(intersection_trichotomy(8, &p, &p).unwrap().count, 256);
        prop_assert_ne!(base.case, CaseTag::Violation);
    }

    #[test]
    fn dichotomy_counts_are_fibres(gi: Index, ai: Index) {
        // Σ_t #{n : n·α(n) = t} = |N|, and the same for n·α(n)⁻¹
        let g = pick(groups(12), &gi);
        let auts = automorphism_group(g).unwrap();
        let alpha = pick(&auts, &ai);
        let ice: u64 = (0..g.order()).map(|t| icecream_count(g, alpha, t).unwrap().count).sum();
        let gel: u64 = (0..g.order()).map(|t| gelato_count(g, alpha, t).unwrap().count).sum();
        prop_assert_eq!((ice, gel), (g.order() as u64, g.order() as u64));
    }

    #[test]
    fn twisted_map_counts_stay_in_range(gi: Index, ni: Index, gam: Index, ti: Index, seed: u64) {
        let g = pick(groups(16), &gi);
        let halves = index_two_subgroups(g);
        prop_assume!(!halves.is_empty());
        let n = *pick(&halves, &ni);
        let gamma = *pick(&g.all().difference(n).to_vec(), &gam);
        let t = *pick(&n.to_vec(), &ti);
        // random permutation of N, fixed elsewhere
        let mut elems = n.to_vec();
        let mut table: Vec<usize> = (0..g.order()).collect();
        let mut x = seed | 1;
        for i in (1..elems.len()).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            elems.swap(i, (x % (i as u64 + 1)) as usize);
        }
        for (a, b) in n.to_vec().into_iter().zip(elems) {
            table[a] = b;
        }
        let c = g.c_of_group();
        let o = alpha_invariant_count_aux1(g, n, gamma, t, &Restriction::Custom(table.clone())).unwrap();
        prop_assert!(o.count >= 1 && o.count <= 1 << c);
        prop_assert_ne!(o.case, CaseTag::Violation);
        if let Ok(o) = alpha_invariant_count_aux2(g, n, gamma, t, &Restriction::Custom(table)) {
            prop_assert!(o.count >= 1 && o.count <= 1 << c);
        }
    }
}
