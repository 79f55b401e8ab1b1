//! Fixed list of small groups expressible in the spec language, one per
//! isomorphism class it covers.

use crate::cli::parse_group_spec;
use crate::group::FiniteGroup;

pub const CATALOG: &[&str] = &[
    "C1", "C2", "C3", "C4", "EA2", "C5", "C6", "D3", "C7", "C8", "C4xC2", "EA3", "D4", "Q8", "C9", "C3xC3",
    "C10", "D5", "C11", "C12", "C6xC2", "D6", "Dic(C6)", "C13", "C14", "D7", "C15", "C16", "C8xC2", "C4xC4",
    "C4xEA2", "EA4", "D8", "Dic(C8)", "Q8xC2", "D4xC2", "Dic(C4xC2;y=1)", "C17", "C18", "C6xC3", "D9", "D3xC3",
    "C19", "C20", "C10xC2", "D10", "Dic(C10)", "C21", "C22", "D11", "C23", "C24", "C12xC2", "C6xEA2", "D12",
    "D6xC2", "D4xC3", "Q8xC3", "D3xC4", "Dic(C12)", "Dic(C6)xC2", "EA5", "Q8xEA2", "Q8xC4", "D4xEA2", "D4xC4",
    "D8xC2", "Dic(C8)xC2", "C4xC4xC2", "C8xC4", "Dic(C16)",
];

pub fn catalog_groups(max_order: usize) -> Vec<FiniteGroup> {
    CATALOG
        .iter()
        .map(|s| parse_group_spec(s).expect("catalog specs parse"))
        .filter(|g| g.order() <= max_order)
        .collect()
}
