//! Randomized checks shared by the property suite and the acceptance report.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use caution::domain::{builtin_domain, ActionFilter, DomainModel};
use caution::interpret::make_interpretations;
use caution::planner::{
    index_actions, loop_guard, plan_injury, plan_normal, satisfied_in, state_of, DEFAULT_MAX_DEPTH,
};
use caution::realize::realize_plan;
use caution::sitcalc::{Action, Condition, Evaluator, Fluent, Situation, Term};
use caution::spl::{make_spl, Filler};
use caution::weaver::{injury_goal, injury_points, merge_injuries};

pub const CASES: u32 = 1000;

pub type Property = fn(u32) -> Result<(), String>;

pub const PROPERTIES: [(&str, Property); 6] = [
    ("frame property", frame),
    ("plans valid and loop-guard clean", plans_valid),
    ("temperatures on the 20+50k ladder", temperatures),
    ("toasted and finished monotone", monotone),
    ("node ids contiguous", node_ids),
    ("sentences capitalized and terminated", sentences),
];

const NAMES: [&str; 3] = ["toaster", "breadmaker", "combined"];

fn domains() -> &'static [DomainModel; 3] {
    static D: OnceLock<[DomainModel; 3]> = OnceLock::new();
    D.get_or_init(|| NAMES.map(|n| builtin_domain(n).unwrap()))
}

fn golden_plans() -> &'static [Vec<Action>; 3] {
    static P: OnceLock<[Vec<Action>; 3]> = OnceLock::new();
    P.get_or_init(|| {
        let d = domains();
        [0, 1, 2].map(|i| plan_normal(&d[i], &d[i].goal, &Situation::s0(), DEFAULT_MAX_DEPTH).unwrap())
    })
}

/// Follows `choices` through the possible actions, stopping early at a dead end.
fn walk(domain: &DomainModel, filter: ActionFilter, choices: &[usize]) -> Vec<Action> {
    let mut eval = Evaluator::new(domain, &Situation::s0());
    for &c in choices {
        let poss = eval.poss(filter).unwrap();
        if poss.is_empty() {
            break;
        }
        eval.push(poss[c % poss.len()].clone());
    }
    eval.actions().to_vec()
}

fn walks(max_len: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..3usize, prop::collection::vec(any::<usize>(), 0..=max_len))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

/// Whether `action` can change `fluent` in one step: a disjunct tests the
/// action, or reads the post-action value of a fluent that it can change.
fn mentions(domain: &DomainModel, fluent: &str, action: &str, seen: &mut BTreeSet<String>) -> bool {
    if !seen.insert(fluent.to_string()) {
        return false;
    }
    let Some(rule) = domain.successor_rules.iter().find(|r| r.fluent.name.as_str() == fluent) else {
        return false;
    };
    if let Some(p) = &rule.persist {
        if p.unless.iter().any(|a| a.name.as_str() == action) {
            return true;
        }
    }
    let mut next = Vec::new();
    for c in &rule.effects {
        if c.action_patterns().iter().any(|a| a.name.as_str() == action) {
            return true;
        }
        c.walk(&mut |c| {
            if let Condition::HoldsNext(f) = c {
                next.push(f.name.to_string());
            }
        });
    }
    next.iter().any(|n| mentions(domain, n, action, seen))
}

pub fn frame(cases: u32) -> Result<(), String> {
    check(cases, (walks(30), any::<usize>()), |((k, choices), pick)| {
        let d = &domains()[k];
        let before = Situation::from_actions(walk(d, ActionFilter::All, &choices));
        let poss = Evaluator::new(d, &before).poss(ActionFilter::All).unwrap();
        prop_assume!(!poss.is_empty());
        let a = poss[pick % poss.len()].clone();
        let after = before.after(a.clone());
        let s1 = state_of(d, &before).unwrap();
        let s2 = state_of(d, &after).unwrap();
        for f in s1.symmetric_difference(&s2) {
            let framed = d.successor_rule(&f.name).is_some()
                && !mentions(d, f.name.as_str(), a.name.as_str(), &mut BTreeSet::new());
            prop_assert!(!framed, "{f} changed under {a} after {before}");
        }
        Ok(())
    })
}

pub fn plans_valid(cases: u32) -> Result<(), String> {
    let strategy = (0..3usize, any::<usize>(), prop::collection::vec(any::<bool>(), 1..12), walks(25));
    check(cases, strategy, |(k, cut, mask, (_, choices))| {
        let d = &domains()[k];
        let golden = &golden_plans()[k];
        let at = Situation::from_actions(golden[..cut % (golden.len() + 1)].to_vec());
        let state: Vec<Fluent> = state_of(d, &at)
            .unwrap()
            .into_iter()
            .filter(|f| d.successor_rule(&f.name).is_some())
            .collect();
        let goal: Vec<Fluent> = state
            .iter()
            .zip(mask.iter().cycle())
            .filter(|(_, m)| **m)
            .map(|(f, _)| f.clone())
            .collect();
        let plan = plan_normal(d, &goal, &Situation::s0(), DEFAULT_MAX_DEPTH)
            .map_err(|e| TestCaseError::fail(format!("{e} for goal {goal:?}")))?;
        valid_from(d, &Situation::s0(), &plan, ActionFilter::Normal)?;
        prop_assert!(satisfied_in(d, &goal, &Situation::from_actions(plan)).unwrap());

        let start = Situation::from_actions(walk(d, ActionFilter::Normal, &choices));
        if let Some(suffix) = plan_injury(d, &start, &injury_goal(), DEFAULT_MAX_DEPTH).unwrap() {
            valid_from(d, &start, &suffix, ActionFilter::Injury)?;
        }
        Ok(())
    })
}

fn valid_from(
    d: &DomainModel,
    start: &Situation,
    plan: &[Action],
    filter: ActionFilter,
) -> Result<(), TestCaseError> {
    let mut eval = Evaluator::new(d, start);
    let mut last = start.last().cloned();
    for a in plan {
        prop_assert!(d.allows(&a.name, filter), "{a} outside {filter:?}");
        prop_assert!(eval.is_possible(a).unwrap(), "{a} impossible after {}", eval.situation());
        prop_assert!(loop_guard(d, last.as_ref(), a), "{a} follows {last:?}");
        eval.push(a.clone());
        last = Some(a.clone());
    }
    Ok(())
}

pub fn temperatures(cases: u32) -> Result<(), String> {
    check(cases, walks(40), |(k, choices)| {
        let d = &domains()[k];
        let plan = walk(d, ActionFilter::All, &choices);
        let mut eval = Evaluator::new(d, &Situation::s0());
        let query: Fluent = "temperature(X,T)".parse().unwrap();
        for a in plan.into_iter().map(Some).chain([None]) {
            for b in eval.holds(&query, &Default::default()).unwrap() {
                let t = b.get(&"T".into()).cloned();
                prop_assert!(
                    matches!(t, Some(Term::Int(20 | 70 | 120 | 170 | 220))),
                    "temperature {t:?} after {}",
                    eval.situation()
                );
            }
            if let Some(a) = a {
                eval.push(a);
            }
        }
        Ok(())
    })
}

pub fn monotone(cases: u32) -> Result<(), String> {
    check(cases, walks(40), |(k, choices)| {
        let d = &domains()[k];
        let plan = walk(d, ActionFilter::All, &choices);
        let mut eval = Evaluator::new(d, &Situation::s0());
        let queries: Vec<Fluent> = ["toasted(X)", "finished(X)"]
            .iter()
            .filter(|q| d.successor_rule(&q[..q.find('(').unwrap()].into()).is_some())
            .map(|q| q.parse().unwrap())
            .collect();
        let mut held: BTreeSet<Fluent> = BTreeSet::new();
        for a in plan.into_iter().map(Some).chain([None]) {
            let mut now = BTreeSet::new();
            for q in &queries {
                for b in eval.holds(q, &Default::default()).unwrap() {
                    now.insert(b.apply(q));
                }
            }
            prop_assert!(held.is_subset(&now), "lost {:?} at {}", held.difference(&now), eval.situation());
            held = now;
            if let Some(a) = a {
                eval.push(a);
            }
        }
        Ok(())
    })
}

fn pipeline(d: &DomainModel, choices: &[usize]) -> Result<Vec<caution::spl::SplNode>, TestCaseError> {
    let plan = index_actions(&walk(d, ActionFilter::Normal, choices));
    let points = injury_points(d, &plan, DEFAULT_MAX_DEPTH).unwrap();
    let merged = merge_injuries(&plan, &points).unwrap();
    let interpreted = make_interpretations(d, &merged);
    make_spl(&interpreted, d).map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn node_ids(cases: u32) -> Result<(), String> {
    check(cases, walks(36), |(k, choices)| {
        let nodes = pipeline(&domains()[k], &choices)?;
        let mut ids = Vec::new();
        for n in &nodes {
            ids.push(n.id);
            for (_, f) in &n.slots {
                if let Filler::Entity { id, .. } = f {
                    ids.push(*id);
                }
            }
        }
        prop_assert_eq!(ids.clone(), (1..=ids.len()).collect::<Vec<_>>());
        Ok(())
    })
}

pub fn sentences(cases: u32) -> Result<(), String> {
    check(cases, walks(36), |(k, choices)| {
        let d = &domains()[k];
        let nodes = pipeline(d, &choices)?;
        let text = realize_plan(&nodes, &d.lexicon).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(text.len(), nodes.len());
        for s in &text {
            prop_assert!(s.starts_with(|c: char| c.is_uppercase()), "{s}");
            prop_assert!(s.ends_with('.') && !s.ends_with(".."), "{s}");
        }
        Ok(())
    })
}
