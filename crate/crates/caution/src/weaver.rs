//! Finding plan prefixes from which an injury is reachable, and weaving the
//! injury sub-plans into the plan.

use crate::domain::DomainModel;
use crate::planner::{plan_injury, IndexedPlan};
use crate::sitcalc::{atom, Action, EvalError, Fluent, Situation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjuryPoint {
    /// Length of the plan prefix the suffix starts from.
    pub index: usize,
    pub suffix: Vec<Action>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeaveError {
    #[error("injury point {0} has no matching plan entry")]
    IndexMismatch(usize),
}

/// The injury goal: the reader gets burned.
pub fn injury_goal() -> Vec<Fluent> {
    vec![atom("burned")]
}

/// Runs the injury planner after every prefix of `plan`, in index order.
pub fn injury_points(
    domain: &DomainModel,
    plan: &IndexedPlan,
    max_depth: usize,
) -> Result<Vec<InjuryPoint>, EvalError> {
    let goal = injury_goal();
    let mut prefix = Situation::s0();
    let mut out = Vec::new();
    for (index, actions) in &plan.entries {
        prefix.push(actions[0].clone());
        if let Some(suffix) = plan_injury(domain, &prefix, &goal, max_depth)? {
            out.push(InjuryPoint {
                index: *index,
                suffix,
            });
        }
    }
    Ok(out)
}

/// Appends each point's suffix to the entry with the same index.
pub fn merge_injuries(plan: &IndexedPlan, points: &[InjuryPoint]) -> Result<IndexedPlan, WeaveError> {
    let mut merged = plan.clone();
    for p in points {
        let entry = merged
            .entries
            .iter_mut()
            .find(|(i, _)| *i == p.index)
            .ok_or(WeaveError::IndexMismatch(p.index))?;
        entry.1.extend(p.suffix.iter().cloned());
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::builtin_domain;
    use crate::planner::{index_actions, plan_normal, DEFAULT_MAX_DEPTH};

    fn planned(name: &str) -> (DomainModel, IndexedPlan) {
        let d = builtin_domain(name).unwrap();
        let plan = plan_normal(&d, &d.goal, &Situation::s0(), DEFAULT_MAX_DEPTH).unwrap();
        (d, index_actions(&plan))
    }

    #[test]
    fn toaster_points() {
        let (d, plan) = planned("toaster");
        let points = injury_points(&d, &plan, DEFAULT_MAX_DEPTH).unwrap();
        let idx: Vec<usize> = points.iter().map(|p| p.index).collect();
        assert_eq!(idx, (3..=10).collect::<Vec<_>>());
        let touch = vec![atom("touch(bread_slot)"), atom("get_burned")];
        assert!(points.iter().all(|p| p.suffix == touch));
    }

    #[test]
    fn breadmaker_points_switch_objects_at_15() {
        let (d, plan) = planned("breadmaker");
        let points = injury_points(&d, &plan, DEFAULT_MAX_DEPTH).unwrap();
        let touched: Vec<(usize, String)> = points
            .iter()
            .map(|p| (p.index, p.suffix[0].to_string()))
            .collect();
        let mut want: Vec<(usize, String)> = (10..=14).map(|i| (i, "touch(main_body)".into())).collect();
        want.extend((15..=22).map(|i| (i, "touch(steam_vent)".to_string())));
        assert_eq!(touched, want);
    }

    #[test]
    fn no_injury_actions_no_points() {
        let (mut d, plan) = planned("toaster");
        d.precond_rules.retain(|r| !["touch", "get_burned"].contains(&r.action.name.as_str()));
        assert!(injury_points(&d, &plan, DEFAULT_MAX_DEPTH).unwrap().is_empty());
    }

    #[test]
    fn merging() {
        let (d, plan) = planned("toaster");
        assert_eq!(merge_injuries(&plan, &[]).unwrap(), plan);
        let points = injury_points(&d, &plan, DEFAULT_MAX_DEPTH).unwrap();
        let merged = merge_injuries(&plan, &points).unwrap();
        let lens: Vec<usize> = merged.entries.iter().map(|e| e.1.len()).collect();
        assert_eq!(lens, [1, 1, 3, 3, 3, 3, 3, 3, 3, 3, 1, 1]);
        assert_eq!(
            merged.entries[2].1,
            [atom("raise_temp(bread_slot)"), atom("touch(bread_slot)"), atom("get_burned")]
        );
        let stray = InjuryPoint { index: 40, suffix: vec![atom("get_burned")] };
        assert_eq!(merge_injuries(&plan, &[stray]), Err(WeaveError::IndexMismatch(40)));
    }
}
