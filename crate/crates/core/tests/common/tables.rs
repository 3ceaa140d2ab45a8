//! Loader for `data/reference_tables.txt`.

use std::collections::BTreeMap;

use resdist::rat::{self, Rat};

pub const REFERENCE_TABLES: &str = include_str!("../data/reference_tables.txt");

/// Section name to row-major decimal literals.
pub fn reference_tables() -> BTreeMap<String, Vec<Vec<String>>> {
    let mut out: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for line in REFERENCE_TABLES.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = Some(name.to_string());
            out.insert(name.to_string(), Vec::new());
            continue;
        }
        let name = current.as_ref().expect("row before section header");
        out.get_mut(name)
            .unwrap()
            .push(line.split_whitespace().map(str::to_string).collect());
    }
    out
}

pub fn table(name: &str) -> Vec<Vec<Rat>> {
    reference_tables()[name]
        .iter()
        .map(|row| row.iter().map(|s| rat::parse_decimal(s).unwrap()).collect())
        .collect()
}
