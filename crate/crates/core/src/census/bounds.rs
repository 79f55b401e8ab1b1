use super::context::GroupContext;
use super::run::StratumCounts;
use serde::{Serialize, Serializer};

/// Absolute tolerance in the log2 domain.
pub const TOLERANCE: f64 = 1e-6;

pub const EXCLUDED_FAMILY: &str = "excluded family";

fn ser_f64<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRecord {
    pub bound_id: String,
    pub count: u64,
    #[serde(serialize_with = "ser_f64")]
    pub lhs_log2: f64,
    #[serde(serialize_with = "ser_f64")]
    pub rhs_exponent: f64,
    #[serde(serialize_with = "ser_f64")]
    pub slack: f64,
    /// `None` when the record does not apply to this group.
    pub holds: Option<bool>,
    pub vacuous: bool,
    pub gated_reason: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BoundReport {
    pub records: Vec<BoundRecord>,
}

impl BoundReport {
    pub fn get(&self, id: &str) -> Option<&BoundRecord> {
        self.records.iter().find(|r| r.bound_id == id)
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundRecord> {
        self.records.iter().filter(|r| r.holds == Some(false))
    }

    pub fn all_hold(&self) -> bool {
        self.violations().next().is_none()
    }
}

fn lg(x: f64) -> f64 {
    x.log2()
}

fn log2_count(count: u64) -> f64 {
    if count == 0 {
        f64::NEG_INFINITY
    } else {
        (count as f64).log2()
    }
}

/// Exponents of every bound, keyed by id, as functions of `c`, `|R|`, `|N|`.
pub fn exponents(c: f64, r: f64, n: f64) -> Vec<(&'static str, f64)> {
    let lr = lg(r);
    let ln = lg(n);
    let main1 = c - n / 96.0 + 2.0 * lr + lr * lr + 3.0;
    let main2 = c - r / (192.0 * n) + lr * lr + 3.0;
    let cor = c - r.sqrt() / 192.0 + 2.0 * lr + lr * lr + 3.0;
    vec![
        ("main1", main1),
        ("main1_ungated", main1),
        ("main2", main2),
        ("main2_ungated", main2),
        ("cor", cor),
        ("cor_ungated", cor),
        ("step2", c - n / 2.0 + 2.0 * lr - ln + ln * ln + 2.0),
        ("step3", c - n / 96.0 + ln * ln),
        ("step4", c - n / 8.0 + lr + ln * ln),
        ("step5", c - n / 24.0 + lr + 2.0),
        ("propo_aut", c - r / 96.0 + lr * lr),
        ("u_empty", f64::NEG_INFINITY),
    ]
}

fn count_for(id: &str, k: &StratumCounts) -> u64 {
    match id {
        "main1" => k.t_n + k.u_n,
        "main1_ungated" => k.s_n,
        "main2" | "cor" => k.fixes_orbits_gated,
        "main2_ungated" | "cor_ungated" => k.fixes_orbits_count,
        "step2" => k.t_n1,
        "step3" => k.t_n2,
        "step4" => k.t_n3,
        "step5" => k.t_n4,
        "propo_aut" => k.r_normalizer_grows,
        "u_empty" => k.u_n,
        _ => unreachable!("unknown bound id {id}"),
    }
}

/// Records whose hypotheses exclude abelian groups of exponent > 2 and
/// generalised dicyclic groups.
fn needs_non_excluded(id: &str) -> bool {
    !matches!(id, "main1" | "main2" | "cor")
}

/// Evaluates every bound against completed census counts for `(R, N)`.
pub fn check_bounds(gctx: &GroupContext, n_order: usize, counts: &StratumCounts) -> BoundReport {
    check_bounds_raw(gctx.c, gctx.group.order(), n_order, gctx.excluded_family, counts)
}

pub fn check_bounds_raw(
    c: usize,
    r_order: usize,
    n_order: usize,
    excluded_family: bool,
    counts: &StratumCounts,
) -> BoundReport {
    let c_f = c as f64;
    let records = exponents(c_f, r_order as f64, n_order as f64)
        .into_iter()
        .map(|(id, rhs)| {
            let count = count_for(id, counts);
            let lhs = log2_count(count);
            let gated = excluded_family && needs_non_excluded(id);
            let holds = if gated {
                None
            } else if count == 0 {
                Some(true)
            } else {
                Some(lhs <= rhs + TOLERANCE)
            };
            BoundRecord {
                bound_id: id.to_string(),
                count,
                lhs_log2: lhs,
                rhs_exponent: rhs,
                slack: rhs - lhs,
                holds,
                vacuous: rhs >= c_f,
                gated_reason: gated.then(|| EXCLUDED_FAMILY.to_string()),
            }
        })
        .collect();
    BoundReport { records }
}
