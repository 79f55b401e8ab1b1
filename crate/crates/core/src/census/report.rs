use super::bounds::{check_bounds, BoundReport};
use super::classify::stabilizer_nontrivial;
use super::context::GroupContext;
use super::run::StratumCounts;
use crate::bits::ElemSet;
use crate::cayley::{split_range, Enumeration};
use crate::error::Result;
use crate::group::FiniteGroup;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

pub const REPORT_VERSION: u32 = 1;

/// The numeric part of [`StratumCounts`], in a fixed field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountsBlock {
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
    pub fixes_orbits_gated: u64,
    pub r_normalizer_grows: u64,
}

impl From<&StratumCounts> for CountsBlock {
    fn from(k: &StratumCounts) -> Self {
        CountsBlock {
            total_sets: k.total_sets,
            grr_count: k.grr_count,
            s_n: k.s_n,
            s_n1: k.s_n1,
            t_n: k.t_n,
            t_n1: k.t_n1,
            t_n2: k.t_n2,
            t_n3: k.t_n3,
            t_n4: k.t_n4,
            u_n: k.u_n,
            fixes_orbits_count: k.fixes_orbits_count,
            fixes_orbits_gated: k.fixes_orbits_gated,
            r_normalizer_grows: k.r_normalizer_grows,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub group: String,
    pub order: usize,
    pub normal_subgroup: Vec<usize>,
    pub c_value: usize,
    pub excluded_family: bool,
    pub complete: bool,
    pub counts: CountsBlock,
    /// Empty when the census did not finish.
    pub bounds: BoundReport,
    pub witnesses: BTreeMap<String, Vec<String>>,
}

impl CensusReport {
    pub fn new(gctx: &GroupContext, n: ElemSet, counts: &StratumCounts, complete: bool) -> Self {
        let order = gctx.group.order();
        let witnesses = counts
            .witnesses
            .iter()
            .map(|(name, idx)| {
                let hex = idx.iter().map(|&i| gctx.enumeration.decode(i).to_hex(order)).collect();
                (name.clone(), hex)
            })
            .collect();
        let bounds = if complete { check_bounds(gctx, n.len(), counts) } else { BoundReport::default() };
        CensusReport {
            group: gctx.group.label().to_string(),
            order,
            normal_subgroup: n.to_vec(),
            c_value: gctx.c,
            excluded_family: gctx.excluded_family,
            complete,
            counts: counts.into(),
            bounds,
            witnesses,
        }
    }

    pub fn has_violation(&self) -> bool {
        !self.bounds.all_hold()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusDocument {
    pub version: u32,
    pub seed: u64,
    pub reports: Vec<CensusReport>,
}

impl CensusDocument {
    pub fn new(seed: u64, reports: Vec<CensusReport>) -> Self {
        CensusDocument { version: REPORT_VERSION, seed, reports }
    }

    pub fn has_violation(&self) -> bool {
        self.reports.iter().any(CensusReport::has_violation)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per `(group, N, bound_id)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "seed", "group", "order", "normal_subgroup", "c_value", "bound_id", "count", "lhs_log2", "rhs_exponent",
            "slack", "holds", "vacuous", "gated_reason",
        ])?;
        for rep in &self.reports {
            let n = rep.normal_subgroup.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            for b in &rep.bounds.records {
                w.write_record([
                    self.seed.to_string(),
                    rep.group.clone(),
                    rep.order.to_string(),
                    n.clone(),
                    rep.c_value.to_string(),
                    b.bound_id.clone(),
                    b.count.to_string(),
                    b.lhs_log2.to_string(),
                    b.rhs_exponent.to_string(),
                    b.slack.to_string(),
                    b.holds.map_or_else(String::new, |h| h.to_string()),
                    b.vacuous.to_string(),
                    b.gated_reason.clone().unwrap_or_default(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityRow {
    pub group: String,
    pub order: usize,
    pub c_value: usize,
    pub total_sets: u64,
    pub grr_count: u64,
    pub density: f64,
}

fn grr_block(g: &FiniteGroup, e: &Enumeration, start: u64, end: u64) -> u64 {
    let mut adj = vec![ElemSet::EMPTY; g.order()];
    let mut count = 0;
    for (_, s) in e.range(start, end) {
        let conn = s.difference(ElemSet::singleton(0));
        for (r, row) in adj.iter_mut().enumerate() {
            *row = g.right_mul_set(conn, r);
        }
        if stabilizer_nontrivial(&adj).is_none() {
            count += 1;
        }
    }
    count
}

/// Exhaustive GRR count and density for each group.
pub fn grr_density_report(groups: &[FiniteGroup], max_c: usize, workers: usize) -> Result<Vec<DensityRow>> {
    let mut rows = Vec::with_capacity(groups.len());
    for g in groups {
        if g.order() > crate::perm::MAX_VERTICES {
            return Err(crate::Error::budget("group order", g.order(), crate::perm::MAX_VERTICES));
        }
        let e = Enumeration::with_budget(g, max_c)?;
        let total = e.total();
        let parts = split_range(0, total, workers.max(1));
        let grr: u64 = std::thread::scope(|scope| {
            let e = &e;
            let hs: Vec<_> = parts.iter().map(|&(a, b)| scope.spawn(move || grr_block(g, e, a, b))).collect();
            hs.into_iter().map(|h| h.join().expect("density worker panicked")).sum()
        });
        rows.push(DensityRow {
            group: g.label().to_string(),
            order: g.order(),
            c_value: e.c(),
            total_sets: total,
            grr_count: grr,
            density: grr as f64 / total as f64,
        });
    }
    Ok(rows)
}
