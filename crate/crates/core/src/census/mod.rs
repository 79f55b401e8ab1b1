//! Exhaustive classification of connection sets by the kind of
//! `N`-normalizing, identity-fixing graph automorphisms they admit.

mod bounds;
mod checkpoint;
mod classify;
mod context;
mod nsearch;
mod report;
mod run;

pub use bounds::{check_bounds, check_bounds_raw, exponents, BoundRecord, BoundReport, EXCLUDED_FAMILY, TOLERANCE};
pub use checkpoint::{Checkpoint, CheckpointHeader, CHECKPOINT_VERSION};
pub use classify::{classify_set, classify_set_by_filter, SetClass, P1_LIMIT};
pub use context::{GroupContext, NShape, NormalContext};
pub use report::{grr_density_report, CensusDocument, CensusReport, CountsBlock, DensityRow, REPORT_VERSION};
pub use run::{run_census, run_census_multi, CensusOptions, CensusOutcome, StratumCounts, CHECKPOINT_INTERVAL};
