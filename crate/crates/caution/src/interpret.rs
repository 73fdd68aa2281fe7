//! Collapsing runs of repeated device actions into labelled collections.

use crate::domain::DomainModel;
use crate::planner::IndexedPlan;
use crate::sitcalc::{Action, Sym};

/// Collections shorter than this keep their individual indices.
pub const MIN_COLLECTION: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPattern {
    pub index: usize,
    pub label: Sym,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InterpretedPlan {
    pub entries: Vec<(usize, Action)>,
    pub patterns: Vec<LabelPattern>,
}

impl InterpretedPlan {
    pub fn label_at(&self, index: usize) -> Option<&Sym> {
        self.patterns
            .iter()
            .find(|p| p.index == index)
            .map(|p| &p.label)
    }
}

/// Labels every run of at least [`MIN_COLLECTION`] entries whose normal
/// actions share a collection label, gives each run a single index, drops
/// repeated injury suffixes inside it, renumbers the rest consecutively and
/// flattens the result.
pub fn make_interpretations(domain: &DomainModel, plan: &IndexedPlan) -> InterpretedPlan {
    let label_of = |e: &(usize, Vec<Action>)| domain.collection_label(&e.1[0].name).cloned();
    let entries = &plan.entries;
    let mut grouped: Vec<(usize, Vec<Action>)> = Vec::new();
    let mut patterns = Vec::new();
    let mut next = 1;
    let mut i = 0;
    while i < entries.len() {
        if let Some(label) = label_of(&entries[i]) {
            let mut j = i + 1;
            while j < entries.len() && label_of(&entries[j]).as_ref() == Some(&label) {
                j += 1;
            }
            if j - i >= MIN_COLLECTION {
                patterns.push(LabelPattern { index: next, label });
                let run: Vec<_> = entries[i..j].iter().map(|(_, a)| (next, a.clone())).collect();
                grouped.extend(retained_injuries(&run));
                next += 1;
                i = j;
                continue;
            }
        }
        grouped.push((next, entries[i].1.clone()));
        next += 1;
        i += 1;
    }
    let entries = grouped
        .into_iter()
        .flat_map(|(i, actions)| actions.into_iter().map(move |a| (i, a)))
        .collect();
    InterpretedPlan { entries, patterns }
}

/// Keeps the first occurrence of each distinct injury suffix in a
/// collection; normal actions are untouched.
pub fn retained_injuries(entries: &[(usize, Vec<Action>)]) -> Vec<(usize, Vec<Action>)> {
    let mut seen: Vec<&[Action]> = Vec::new();
    entries
        .iter()
        .map(|(i, actions)| {
            let suffix = &actions[1..];
            if suffix.is_empty() || seen.contains(&suffix) {
                (*i, actions[..1].to_vec())
            } else {
                seen.push(suffix);
                (*i, actions.clone())
            }
        })
        .collect()
}
