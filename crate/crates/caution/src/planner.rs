//! Depth-first planning, the loop guard, indexing and a breadth-first oracle.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::domain::{ActionFilter, DomainModel};
use crate::sitcalc::{unifiable, Action, Binding, EvalError, Evaluator, Fluent, Situation};

pub const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error("no plan reaches the goal")]
    NoPlan,
    #[error("search exceeded the depth bound of {0}")]
    DepthExceeded(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Plan entries after indexing. Each entry holds its normal action first,
/// followed by any merged injury suffix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexedPlan {
    pub entries: Vec<(usize, Vec<Action>)>,
}

/// True iff every goal fluent holds under some binding. Conjuncts are
/// checked independently.
pub fn satisfied(eval: &Evaluator<'_>, goal: &[Fluent]) -> Result<bool, EvalError> {
    for g in goal {
        if eval.holds(g, &Binding::new())?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience form of [`satisfied`] over a situation.
pub fn satisfied_in(
    domain: &DomainModel,
    goal: &[Fluent],
    situation: &Situation,
) -> Result<bool, EvalError> {
    satisfied(&Evaluator::new(domain, situation), goal)
}

/// Rejects `candidate` when it and the previous action affect a common
/// fluent pattern.
pub fn loop_guard(domain: &DomainModel, last: Option<&Action>, candidate: &Action) -> bool {
    let Some(last) = last else {
        return true;
    };
    let affected = |a: &Action| -> Vec<Fluent> {
        domain
            .affects
            .iter()
            .filter(|e| unifiable(&e.action, a))
            .map(|e| instantiate(&e.action, a, &e.fluent))
            .collect()
    };
    let mine = affected(last);
    let theirs = affected(candidate);
    !mine.iter().any(|f| theirs.iter().any(|g| unifiable(f, g)))
}

/// Applies the bindings from matching `pattern` against the ground `action`
/// to `fluent`; unmatched variables stay open.
fn instantiate(pattern: &Action, action: &Action, fluent: &Fluent) -> Fluent {
    match crate::sitcalc::match_atom(pattern, action, &Binding::new()) {
        Some(b) => b.apply(fluent),
        None => fluent.clone(),
    }
}

/// First plan found by chronological-backtracking depth-first search over
/// normal actions, returned as the actions appended to `start`.
pub fn plan_normal(
    domain: &DomainModel,
    goal: &[Fluent],
    start: &Situation,
    max_depth: usize,
) -> Result<Vec<Action>, PlanError> {
    let mut eval = Evaluator::new(domain, start);
    let base = start.len();
    match dfs(&mut eval, goal, ActionFilter::Normal, base, max_depth)? {
        Some(()) => Ok(eval.actions()[base..].to_vec()),
        None => Err(PlanError::NoPlan),
    }
}

/// The injury-action suffix reaching `goal` from `start`, if one exists
/// within the depth bound.
pub fn plan_injury(
    domain: &DomainModel,
    start: &Situation,
    goal: &[Fluent],
    max_depth: usize,
) -> Result<Option<Vec<Action>>, EvalError> {
    let mut eval = Evaluator::new(domain, start);
    let base = start.len();
    match dfs(&mut eval, goal, ActionFilter::Injury, base, max_depth) {
        Ok(Some(())) => Ok(Some(eval.actions()[base..].to_vec())),
        Ok(None) | Err(PlanError::DepthExceeded(_)) | Err(PlanError::NoPlan) => Ok(None),
        Err(PlanError::Eval(e)) => Err(e),
    }
}

fn dfs(
    eval: &mut Evaluator<'_>,
    goal: &[Fluent],
    filter: ActionFilter,
    base: usize,
    max_depth: usize,
) -> Result<Option<()>, PlanError> {
    if satisfied(eval, goal)? {
        return Ok(Some(()));
    }
    if eval.depth() - base >= max_depth {
        return Err(PlanError::DepthExceeded(max_depth));
    }
    let domain = eval.domain();
    for a in eval.poss(filter)? {
        if !loop_guard(domain, eval.actions().last(), &a) {
            continue;
        }
        eval.push(a);
        match dfs(eval, goal, filter, base, max_depth) {
            Ok(Some(())) => return Ok(Some(())),
            Ok(None) => {}
            Err(e) => return Err(e),
        }
        eval.pop();
    }
    Ok(None)
}

/// Numbers plan actions from 1, one action per entry.
pub fn index_actions(plan: &[Action]) -> IndexedPlan {
    IndexedPlan {
        entries: plan
            .iter()
            .enumerate()
            .map(|(i, a)| (i + 1, vec![a.clone()]))
            .collect(),
    }
}

/// Length of a shortest plan reaching `goal`, by breadth-first search
/// without the loop guard. States are compared by their full set of holding
/// ground fluents.
pub fn bfs_oracle(
    domain: &DomainModel,
    goal: &[Fluent],
    start: &Situation,
    filter: ActionFilter,
    max_depth: usize,
) -> Result<Option<usize>, EvalError> {
    let mut seen: HashSet<BTreeSet<Fluent>> = HashSet::new();
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    seen.insert(state_of(domain, start)?);
    while let Some((s, depth)) = queue.pop_front() {
        let eval = Evaluator::new(domain, &s);
        if satisfied(&eval, goal)? {
            return Ok(Some(depth));
        }
        if depth == max_depth {
            continue;
        }
        for a in eval.poss(filter)? {
            let next = s.after(a);
            if seen.insert(state_of(domain, &next)?) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    Ok(None)
}

/// Every ground fluent holding in `situation`.
pub fn state_of(domain: &DomainModel, situation: &Situation) -> Result<BTreeSet<Fluent>, EvalError> {
    let eval = Evaluator::new(domain, situation);
    let mut names: Vec<&Fluent> = Vec::new();
    for r in &domain.successor_rules {
        names.push(&r.fluent);
    }
    for r in &domain.derived_rules {
        names.push(&r.fluent);
    }
    for f in &domain.initial_fluents {
        if !names.iter().any(|n| n.name == f.name) {
            names.push(f);
        }
    }
    let mut out = BTreeSet::new();
    for n in names {
        let open = open_pattern(n);
        out.extend(eval.instances(&open, eval.depth())?.iter().cloned());
    }
    Ok(out)
}

/// A pattern with the same name and arity as `f` and all-distinct variables.
pub(crate) fn open_pattern(f: &Fluent) -> Fluent {
    let args = (0..f.arity())
        .map(|i| crate::sitcalc::Term::var(&format!("A{i}")))
        .collect();
    Fluent {
        name: f.name.clone(),
        args,
    }
}
