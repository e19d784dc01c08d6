#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn data(name: &str) -> String {
    root().join("data").join(name).to_string_lossy().into_owned()
}

/// (golden file, argument list with data file names in place of paths)
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("merge_spd", &["merge", "@spd_a.toml", "@spd_b.toml"]),
    (
        "merge_opd_cancel",
        &["merge", "--mode", "opd", "@opd_false.toml", "@opd_true.toml"],
    ),
    ("normalize_weighted", &["normalize", "@weighted.toml"]),
    ("normalize_equi", &["normalize", "@weighted_equi.toml"]),
    ("update_pd", &["update", "@joint.toml", "@evidence_b.toml", "--pd"]),
    (
        "update_jeffrey",
        &["update", "@joint.toml", "@evidence_b.toml", "--jeffrey"],
    ),
    (
        "update_jeffrey_point",
        &["update", "@joint.toml", "@evidence_b_sure.toml", "--jeffrey"],
    ),
    ("repair_single", &["repair", "@contingency.toml", "-c", "B:1"]),
    ("repair_zero", &["repair", "@contingency.toml", "-c", "B:0"]),
    ("repair_vacuous", &["repair", "@contingency_vacuous.toml", "-c", "1:3"]),
    (
        "repair_multiple",
        &["repair", "@contingency.toml", "-c", "1:1", "-c", "not-B:2:0.5"],
    ),
    (
        "confirm_straight",
        &["confirm", "@joint.toml", "@evidence_b_sure.toml", "--straight"],
    ),
    (
        "confirm_decisive",
        &["confirm", "@joint.toml", "@evidence_b_decisive.toml", "--straight"],
    ),
    (
        "confirm_marginal",
        &["confirm", "@joint.toml", "@evidence_b_marginal.toml", "--straight"],
    ),
    ("dutchbook_coherent", &["dutchbook", "@bet_coherent.toml"]),
    ("dutchbook_incoherent", &["dutchbook", "@bet_incoherent.toml"]),
    ("dutchbook_null", &["dutchbook", "@bet_null.toml"]),
    ("conditionalize", &["conditionalize", "@first_order.toml"]),
];

pub fn expand(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => data(name),
            None => a.to_string(),
        })
        .collect()
}
