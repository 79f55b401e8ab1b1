use super::checkpoint::Checkpoint;
use super::classify::{classify_adj, stabilizer_nontrivial, SetClass};
use super::context::{GroupContext, NormalContext};
use crate::bits::ElemSet;
use crate::cayley::split_range;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Enumeration indices processed between checkpoints.
pub const CHECKPOINT_INTERVAL: u64 = 1 << 14;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCounts {
    pub total_sets: u64,
    pub grr_count: u64,
    pub s_n: u64,
    pub s_n1: u64,
    pub t_n: u64,
    pub t_n1: u64,
    pub t_n2: u64,
    pub t_n3: u64,
    pub t_n4: u64,
    pub u_n: u64,
    pub fixes_orbits_count: u64,
    /// Orbit-fixing sets whose `R` has no extra normalizing automorphism.
    pub fixes_orbits_gated: u64,
    /// Sets with `N_Aut(R) > R`, over all sets (not only `S_N`).
    pub r_normalizer_grows: u64,
    /// Smallest enumeration indices seen in each stratum.
    pub witnesses: BTreeMap<String, Vec<u64>>,
}

impl StratumCounts {
    pub(crate) fn record(&mut self, index: u64, c: &SetClass, grr: bool, k: usize) {
        self.total_sets += 1;
        let mut note = |name: &str, on: bool, counter: &mut u64| {
            if on {
                *counter += 1;
                let w = self.witnesses.entry(name.to_string()).or_default();
                if w.len() < k {
                    w.push(index);
                }
            }
        };
        note("grr", grr, &mut self.grr_count);
        note("s_N", c.in_s_n, &mut self.s_n);
        note("s_N1", c.s_n1, &mut self.s_n1);
        note("t_N", c.t_n, &mut self.t_n);
        note("t_N1", c.t_level == Some(1), &mut self.t_n1);
        note("t_N2", c.t_level == Some(2), &mut self.t_n2);
        note("t_N3", c.t_level == Some(3), &mut self.t_n3);
        note("t_N4", c.t_level == Some(4), &mut self.t_n4);
        note("u_N", c.u_n, &mut self.u_n);
        note("fixes_orbits", c.fixes_orbits, &mut self.fixes_orbits_count);
        note("fixes_orbits_gated", c.fixes_orbits && !c.r_normalizer_grows, &mut self.fixes_orbits_gated);
        note("r_normalizer_grows", c.r_normalizer_grows, &mut self.r_normalizer_grows);
    }

    /// Componentwise sum; witness lists keep the `k` smallest indices.
    pub fn merge(&mut self, other: &StratumCounts, k: usize) {
        self.total_sets += other.total_sets;
        self.grr_count += other.grr_count;
        self.s_n += other.s_n;
        self.s_n1 += other.s_n1;
        self.t_n += other.t_n;
        self.t_n1 += other.t_n1;
        self.t_n2 += other.t_n2;
        self.t_n3 += other.t_n3;
        self.t_n4 += other.t_n4;
        self.u_n += other.u_n;
        self.fixes_orbits_count += other.fixes_orbits_count;
        self.fixes_orbits_gated += other.fixes_orbits_gated;
        self.r_normalizer_grows += other.r_normalizer_grows;
        for (name, idx) in &other.witnesses {
            let w = self.witnesses.entry(name.clone()).or_default();
            w.extend(idx);
            w.sort_unstable();
            w.dedup();
            w.truncate(k);
        }
    }

    /// `s_N = s_N1 + t_N + u_N` and `t_N = t_N1 + … + t_N4`.
    pub fn partition_holds(&self) -> bool {
        self.s_n == self.s_n1 + self.t_n + self.u_n && self.t_n == self.t_n1 + self.t_n2 + self.t_n3 + self.t_n4
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub witnesses_per_stratum: usize,
    /// Indices processed between checkpoint saves.
    pub checkpoint_interval: u64,
    /// Stop after this many indices (for interrupt/resume testing).
    pub stop_after: Option<u64>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { workers: 1, checkpoint: None, witnesses_per_stratum: 4, checkpoint_interval: CHECKPOINT_INTERVAL, stop_after: None }
    }
}

/// Outcome of a census: per-`N` counts, plus whether the range was finished.
#[derive(Debug)]
pub struct CensusOutcome {
    pub counts: Vec<StratumCounts>,
    pub complete: bool,
}

fn census_block(
    gctx: &GroupContext,
    nctxs: &[NormalContext],
    start: u64,
    end: u64,
    k: usize,
) -> Result<Vec<StratumCounts>> {
    let g = &gctx.group;
    let mut out = vec![StratumCounts::default(); nctxs.len()];
    let mut adj = vec![ElemSet::EMPTY; g.order()];
    let mut classes = Vec::with_capacity(nctxs.len());
    for idx in start..end {
        let s = gctx.enumeration.decode(idx);
        let conn = s.difference(ElemSet::singleton(0));
        for (r, row) in adj.iter_mut().enumerate() {
            *row = g.right_mul_set(conn, r);
        }
        let r_grows = gctx.r_normalizer_grows(s);
        classes.clear();
        for nctx in nctxs {
            classes.push(classify_adj(gctx, nctx, &adj, r_grows)?);
        }
        let grr = !r_grows && classes.iter().all(|c| !c.in_s_n) && stabilizer_nontrivial(&adj).is_none();
        for (acc, c) in out.iter_mut().zip(&classes) {
            acc.record(idx, c, grr, k);
        }
    }
    Ok(out)
}

fn parallel_block(
    gctx: &GroupContext,
    nctxs: &[NormalContext],
    start: u64,
    end: u64,
    opts: &CensusOptions,
) -> Result<Vec<StratumCounts>> {
    let k = opts.witnesses_per_stratum;
    let parts = split_range(start, end, opts.workers);
    let results: Vec<Result<Vec<StratumCounts>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = parts
            .iter()
            .map(|&(a, b)| scope.spawn(move || census_block(gctx, nctxs, a, b, k)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
    });
    let mut acc = vec![StratumCounts::default(); nctxs.len()];
    for r in results {
        for (a, part) in acc.iter_mut().zip(r?) {
            a.merge(&part, k);
        }
    }
    Ok(acc)
}

/// Runs the census of `R` against every normal subgroup in `nctxs`.
pub fn run_census_multi(
    gctx: &GroupContext,
    nctxs: &[NormalContext],
    opts: &CensusOptions,
) -> Result<CensusOutcome> {
    if opts.workers == 0 {
        return Err(Error::InvalidParameter("worker count must be positive".into()));
    }
    if opts.checkpoint_interval == 0 {
        return Err(Error::InvalidParameter("checkpoint interval must be positive".into()));
    }
    let total = gctx.enumeration.total();
    let ns: Vec<ElemSet> = nctxs.iter().map(|c| c.n).collect();
    let header = Checkpoint::header(gctx, &ns);
    let (mut next, mut counts) = match &opts.checkpoint {
        Some(path) if path.exists() => {
            let cp = Checkpoint::load(path)?;
            cp.check_header(&header)?;
            (cp.next_index, cp.counts)
        }
        _ => (0, vec![StratumCounts::default(); nctxs.len()]),
    };
    let limit = opts.stop_after.map_or(total, |s| (next + s).min(total));
    while next < limit {
        let end = match opts.checkpoint {
            Some(_) => (next + opts.checkpoint_interval).min(limit),
            None => limit,
        };
        let part = parallel_block(gctx, nctxs, next, end, opts)?;
        for (a, p) in counts.iter_mut().zip(&part) {
            a.merge(p, opts.witnesses_per_stratum);
        }
        next = end;
        if let Some(path) = &opts.checkpoint {
            Checkpoint::new(header.clone(), next, counts.clone()).save(path)?;
        }
    }
    Ok(CensusOutcome { counts, complete: next == total })
}

/// Census of a single normal subgroup.
pub fn run_census(gctx: &GroupContext, n: ElemSet, opts: &CensusOptions) -> Result<StratumCounts> {
    let nctx = NormalContext::new(&gctx.group, n)?;
    let out = run_census_multi(gctx, std::slice::from_ref(&nctx), opts)?;
    Ok(out.counts.into_iter().next().unwrap())
}
