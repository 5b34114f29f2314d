use std::path::{Path, PathBuf};

use additive_designs::differences::Coverage;
use anyhow::Context;
use serde_json::{json, Value};

pub fn cert_path(input: &Path) -> PathBuf {
    let mut s = input.as_os_str().to_owned();
    s.push(".cert");
    PathBuf::from(s)
}

pub fn write(input: &Path, body: Value) -> anyhow::Result<PathBuf> {
    let path = cert_path(input);
    let text = serde_json::to_string_pretty(&body)? + "\n";
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Smallest and largest multiplicity outside the excluded set, the total,
/// and the first irregular element as a display string.
pub fn coverage_summary(cov: &Coverage, display: impl Fn(usize) -> String) -> Value {
    let outside: Vec<usize> = cov
        .map
        .counts()
        .iter()
        .enumerate()
        .filter(|(x, _)| !cov.is_excluded(*x))
        .map(|(_, &c)| c)
        .collect();
    let hit_inside = cov
        .map
        .counts()
        .iter()
        .enumerate()
        .filter(|(x, &c)| cov.is_excluded(*x) && c > 0)
        .count();
    json!({
        "total": cov.map.total(),
        "min": outside.iter().min(),
        "max": outside.iter().max(),
        "constant": cov.constant_lambda,
        "excluded_elements_hit": hit_inside,
        "witness": cov.witness.map(|w| json!({
            "element": display(w),
            "multiplicity": cov.map.get(w),
        })),
    })
}
