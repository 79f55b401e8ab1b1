//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use grr_census::catalog::catalog_groups;
use grr_census::cayley::{build_graph, enumerate_inverse_closed, Enumeration};
use grr_census::census::{
    grr_density_report, run_census_multi, CensusOptions, CountsBlock, GroupContext, NormalContext, StratumCounts,
    TOLERANCE,
};
use grr_census::group::{is_abelian_exp_gt2, is_generalized_dicyclic, FiniteGroup};
use grr_census::lemmas::{
    detect_antisymmetry, dichotomy_sweep, intersection_trichotomy, sigma, sigma_direct, sigma_pairs, CaseTag, LemmaId,
};
use grr_census::perm::{graph_automorphisms, Permutation};
use grr_census::ElemSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const SEED: u64 = 0x5eed;

fn excluded(g: &FiniteGroup) -> bool {
    is_abelian_exp_gt2(g) || !is_generalized_dicyclic(g).is_empty()
}

/// Count of elements of order at most 2, from the table alone.
fn c_by_orders(g: &FiniteGroup) -> usize {
    let inv = (0..g.order()).filter(|&x| g.mul(x, x) == 0).count();
    (g.order() + inv) / 2
}

fn criterion_1() -> Result<String, String> {
    let groups = catalog_groups(24);
    if groups.len() < 12 {
        return Err(format!("only {} catalog groups", groups.len()));
    }
    for g in &groups {
        let c = c_by_orders(g);
        let mut seen = Vec::new();
        for s in enumerate_inverse_closed(g).map_err(|e| e.to_string())? {
            if !g.is_inverse_closed(s.bits()) {
                return Err(format!("{}: enumerated a set that is not inverse-closed", g.label()));
            }
            seen.push(s.bits());
        }
        let len = seen.len();
        seen.sort_unstable_by_key(|s| s.to_hex(g.order()));
        seen.dedup();
        if len != 1 << c || seen.len() != len {
            return Err(format!("{}: {} sets ({} distinct), expected 2^{c}", g.label(), len, seen.len()));
        }
        // literal count over all subsets where that is cheap
        if g.order() <= 16 {
            let brute = (0u32..1 << g.order())
                .filter(|&m| (0..g.order()).all(|x| m >> x & 1 == 0 || m >> g.inv(x) & 1 == 1))
                .count();
            if brute != len {
                return Err(format!("{}: subset scan finds {brute}, enumeration {len}", g.label()));
            }
        }
    }
    Ok(format!("{} groups of order <= 24", groups.len()))
}

fn criterion_2() -> Result<String, String> {
    // 1-based cycles shifted to 0-based points
    let f = Permutation::from_cycles(12, &[&[0, 1, 2, 3, 4], &[5, 6, 7], &[8, 9, 10, 11]]).unwrap();
    let g = Permutation::from_cycles(12, &[&[0, 4, 3, 2, 1], &[5, 6, 7], &[8, 11, 10, 9]]).unwrap();
    let literal = (0u32..1 << 12)
        .filter(|&s| {
            let meet = |p: &Permutation| (0..12).filter(|&x| s >> x & 1 == 1 && s >> p.apply(x) & 1 == 1).count();
            meet(&f) == meet(&g)
        })
        .count();
    let o = intersection_trichotomy(12, &f, &g).map_err(|e| e.to_string())?;
    let fired = detect_antisymmetry(&f, &g).is_some();
    if literal != 4096 || o.count != 4096 || !fired || o.case != CaseTag::Exceptional {
        return Err(format!("literal {literal}, oracle {}, detector {fired}", o.count));
    }
    Ok("4096/4096 subsets, detector fires".into())
}

fn criterion_3() -> Result<String, String> {
    let mut parts = Vec::new();
    for lemma in [LemmaId::Icecream, LemmaId::Gelato] {
        let s = dichotomy_sweep(lemma, 16, &mut |_| {}).map_err(|e| e.to_string())?;
        if s.violations != 0 || s.rows == 0 {
            return Err(format!("{lemma}: {s:?}"));
        }
        parts.push(format!("{lemma} {} rows ({} exceptional)", s.rows, s.exceptional));
    }
    Ok(parts.join(", "))
}

struct CensusRun {
    group: FiniteGroup,
    excluded: bool,
    n: ElemSet,
    counts: StratumCounts,
    bounds: grr_census::census::BoundReport,
}

fn census_upto_16() -> Result<Vec<CensusRun>, String> {
    let mut out = Vec::new();
    for g in catalog_groups(16) {
        let gctx = GroupContext::new(g.clone()).map_err(|e| e.to_string())?;
        let ns = gctx.eligible_normal_subgroups().map_err(|e| e.to_string())?;
        if ns.is_empty() {
            continue;
        }
        let nctxs: Vec<NormalContext> = ns.iter().map(|&n| NormalContext::new(&g, n).unwrap()).collect();
        let outcome = run_census_multi(&gctx, &nctxs, &CensusOptions::default()).map_err(|e| e.to_string())?;
        for (&n, counts) in ns.iter().zip(outcome.counts) {
            let bounds = grr_census::census::check_bounds(&gctx, n.len(), &counts);
            out.push(CensusRun { group: g.clone(), excluded: gctx.excluded_family, n, counts, bounds });
        }
    }
    Ok(out)
}

fn criterion_4(runs: &[CensusRun]) -> Result<String, String> {
    let mut pairs = 0;
    for r in runs.iter().filter(|r| !r.excluded) {
        pairs += 1;
        if r.counts.u_n != 0 {
            return Err(format!("{} N={:?}: u_N = {}", r.group.label(), r.n.to_vec(), r.counts.u_n));
        }
        if !r.counts.partition_holds() || r.counts.total_sets != 1 << c_by_orders(&r.group) {
            return Err(format!("{} N={:?}: inconsistent counts", r.group.label(), r.n.to_vec()));
        }
    }
    Ok(format!("u_N = 0 on {pairs} (R, N) pairs"))
}

fn criterion_5(runs: &[CensusRun]) -> Result<String, String> {
    if TOLERANCE != 1e-6 {
        return Err(format!("tolerance {TOLERANCE}"));
    }
    let (mut checked, mut vacuous) = (0, 0);
    for r in runs.iter().filter(|r| !r.excluded) {
        for b in &r.bounds.records {
            match b.holds {
                Some(true) => {
                    checked += 1;
                    vacuous += b.vacuous as usize;
                    if b.count > 0 && (b.count as f64).log2() > b.rhs_exponent + TOLERANCE {
                        return Err(format!("{} {}: holds disagrees with recomputation", r.group.label(), b.bound_id));
                    }
                }
                Some(false) => {
                    return Err(format!("{} N={:?} {}: {} > 2^{}", r.group.label(), r.n.to_vec(), b.bound_id, b.count, b.rhs_exponent))
                }
                None => return Err(format!("{} {}: gated on a non-excluded group", r.group.label(), b.bound_id)),
            }
        }
    }
    Ok(format!("{checked} records hold ({vacuous} vacuous)"))
}

fn criterion_6() -> Result<String, String> {
    let ctxs = sigma_pairs(16).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut used = BTreeSet::new();
    for _ in 0..1000 {
        let ctx = &ctxs[rng.gen_range(0..ctxs.len())];
        let g = &ctx.group;
        let e = Enumeration::new(g).map_err(|e| e.to_string())?;
        let s = e.decode(rng.gen_range(0..e.total()));
        let outside = g.all().difference(ctx.n).to_vec();
        let u = outside[rng.gen_range(0..outside.len())];
        let i = ctx.coset_of(u);
        let js: Vec<usize> = (1..ctx.index()).filter(|&j| j != i).collect();
        let j = js[rng.gen_range(0..js.len())];
        let a = sigma(ctx, s, u, j).map_err(|e| e.to_string())?;
        let b = sigma_direct(ctx, s, u, j).map_err(|e| e.to_string())?;
        // common neighbours of 1 and u in O_j straight from the table
        let conn = s.difference(ElemSet::singleton(0));
        let c: ElemSet = (0..g.order())
            .filter(|&x| ctx.coset_of(x) == j && conn.contains(x) && conn.contains(g.mul(x, g.inv(u))))
            .collect();
        if a != b || a != c {
            return Err(format!("{} S={} u={u} j={j}: {:?} / {:?} / {:?}", g.label(), s.to_hex(g.order()), a.to_vec(), b.to_vec(), c.to_vec()));
        }
        used.insert((g.label().to_string(), ctx.n.to_hex(g.order())));
    }
    if used.len() < 3 {
        return Err(format!("only {} (R, N) pairs sampled", used.len()));
    }
    Ok(format!("1000 instances over {} (R, N) pairs", used.len()))
}

fn all_permutations(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    visit(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            visit(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn criterion_7() -> Result<String, String> {
    let mut graphs = 0;
    for g in catalog_groups(8) {
        let n = g.order();
        for s in enumerate_inverse_closed(&g).map_err(|e| e.to_string())? {
            let graph = build_graph(&g, s.bits()).map_err(|e| e.to_string())?;
            let adj = graph.adjacency();
            let mut brute = BTreeSet::new();
            all_permutations(n, |p| {
                if (0..n).all(|x| adj[x].iter().all(|y| adj[p[x]].contains(p[y]))) {
                    brute.insert(p.to_vec());
                }
            });
            let aut = graph_automorphisms(&graph).map_err(|e| e.to_string())?;
            let elems: BTreeSet<Vec<usize>> =
                aut.elements().map_err(|e| e.to_string())?.iter().map(|q| q.to_vec()).collect();
            if aut.order() != Some(brute.len() as u128) || elems != brute {
                return Err(format!("{} S={}: search {:?}, brute force {}", g.label(), s.to_hex(), aut.order(), brute.len()));
            }
            graphs += 1;
        }
    }
    Ok(format!("{graphs} graphs"))
}

fn criterion_8() -> Result<String, String> {
    let groups: Vec<FiniteGroup> = catalog_groups(16).into_iter().filter(excluded).collect();
    let rows = grr_density_report(&groups, 30, 1).map_err(|e| e.to_string())?;
    let total: u64 = rows.iter().map(|r| r.total_sets).sum();
    if let Some(r) = rows.iter().find(|r| r.grr_count != 0) {
        return Err(format!("{}: {} GRRs", r.group, r.grr_count));
    }
    Ok(format!("0 GRRs in {} groups ({total} sets)", rows.len()))
}

fn counts_json(counts: &[StratumCounts]) -> String {
    let blocks: Vec<CountsBlock> = counts.iter().map(CountsBlock::from).collect();
    serde_json::to_string(&blocks).unwrap()
}

fn criterion_9() -> Result<String, String> {
    for spec in ["D3", "C4xC2", "D6"] {
        let g = grr_census::cli::parse_group_spec(spec).unwrap();
        let gctx = GroupContext::new(g.clone()).map_err(|e| e.to_string())?;
        let nctxs: Vec<NormalContext> = gctx
            .eligible_normal_subgroups()
            .unwrap()
            .into_iter()
            .map(|n| NormalContext::new(&g, n).unwrap())
            .collect();
        let run = |opts: CensusOptions| run_census_multi(&gctx, &nctxs, &opts).map_err(|e| e.to_string());
        let reference = counts_json(&run(CensusOptions::default())?.counts);
        for workers in [2, 4] {
            let got = counts_json(&run(CensusOptions { workers, ..Default::default() })?.counts);
            if got != reference {
                return Err(format!("{spec}: {workers} workers differ"));
            }
        }
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let path = dir.path().join("census.ckpt");
        let total = gctx.enumeration.total();
        let partial = CensusOptions {
            workers: 2,
            checkpoint: Some(path.clone()),
            checkpoint_interval: 7,
            stop_after: Some(total / 3),
            ..Default::default()
        };
        if run(partial)?.complete {
            return Err(format!("{spec}: interrupted run reports completion"));
        }
        let resumed = run(CensusOptions { checkpoint: Some(path), checkpoint_interval: 7, ..Default::default() })?;
        if !resumed.complete || counts_json(&resumed.counts) != reference {
            return Err(format!("{spec}: resumed counts differ"));
        }
    }
    Ok("D3, C4xC2, D6 identical for 1/2/4 workers and across resume".into())
}

fn main() {
    let started = Instant::now();
    let runs = census_upto_16();
    let census_time = started.elapsed();
    let runs = &runs;
    let census = |f: fn(&[CensusRun]) -> Result<String, String>| {
        move || match runs {
            Ok(r) => f(r),
            Err(e) => Err(format!("census failed: {e}")),
        }
    };
    let c4 = census(criterion_4);
    let c5 = census(criterion_5);
    let criteria: Vec<(u8, &str, Box<dyn Fn() -> Result<String, String> + '_>, Option<Duration>)> = vec![
        (1, "inverse-closed enumeration has 2^c sets", Box::new(criterion_1), Some(Duration::from_secs(10))),
        (2, "twelve-point intersection example", Box::new(criterion_2), Some(Duration::from_secs(1))),
        (3, "icecream/gelato sweeps, order <= 16", Box::new(criterion_3), Some(Duration::from_secs(300))),
        (4, "u_N = 0 outside the excluded families, order <= 16", Box::new(c4), None),
        (5, "every applicable bound holds", Box::new(c5), None),
        (6, "sigma formula equals common neighbourhood", Box::new(criterion_6), None),
        (7, "automorphism search equals brute force, order <= 8", Box::new(criterion_7), Some(Duration::from_secs(120))),
        (8, "no GRRs in excluded families, order <= 16", Box::new(criterion_8), None),
        (9, "census determinism across workers and resume", Box::new(criterion_9), None),
    ];
    let mut failed = 0;
    for (id, name, check, limit) in &criteria {
        let t = Instant::now();
        let mut result = check();
        let mut took = t.elapsed();
        if matches!(id, 4 | 5) {
            took += census_time;
        }
        if let (Ok(_), Some(l)) = (&result, limit) {
            if took > *l {
                result = Err(format!("took {took:?}, limit {l:?}"));
            }
        }
        match result {
            Ok(detail) => println!("criterion {id} PASS: {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL: {name}: {why} [{took:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
