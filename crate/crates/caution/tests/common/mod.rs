#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;

use caution::domain::{builtin_domain, DomainModel};
use caution::pipeline::{run, Artifacts, Stage};
use caution::planner::DEFAULT_MAX_DEPTH;

pub fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn golden_lines(name: &str) -> Vec<String> {
    golden(name).lines().map(str::to_string).collect()
}

/// The value of a `LABEL: value` line in a vendored trace.
pub fn trace_field(trace: &str, label: &str) -> String {
    let prefix = format!("{label}: ");
    trace
        .lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {label} line"))
        .to_string()
}

pub fn domain(name: &str) -> DomainModel {
    builtin_domain(name).unwrap()
}

pub fn full_run(name: &str) -> Artifacts {
    run(&domain(name), Stage::Trace, DEFAULT_MAX_DEPTH).unwrap()
}

/// Top-level comma-separated items of a bracketed list, e.g. the POINTS line.
pub fn list_items(list: &str) -> Vec<String> {
    let inner = list
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .expect("bracketed list");
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Plan actions from a nested `do(a,do(b,s0))` rendering, first action first.
pub fn goal_state_actions(text: &str) -> Vec<String> {
    let mut rest = text;
    let mut out = Vec::new();
    while let Some(r) = rest.strip_prefix("do(") {
        let mut depth = 0;
        let end = r
            .char_indices()
            .find(|&(_, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                c == ',' && depth == 0
            })
            .map(|(i, _)| i)
            .expect("do(action,situation)");
        out.push(r[..end].to_string());
        rest = &r[end + 1..];
    }
    out.reverse();
    out
}
