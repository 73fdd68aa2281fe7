//! Closed-world evaluation of fluents, conditions and preconditions.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use super::condition::{CmpOp, Condition};
use super::situation::Situation;
use super::term::{can_match, match_atom, Action, Atom, Binding, Fluent, Sym, Term, WILDCARD};
use crate::domain::{ActionFilter, DomainModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unknown fluent `{0}`: no rule and no initial-state entry")]
    UnknownFluent(String),
    #[error("comparison `{0}` needs integer operands")]
    ArithmeticOnUnbound(String),
    #[error("negated fluent `{0}` is not ground")]
    NonGroundNegation(String),
    #[error("rule produced non-ground `{0}`")]
    NonGround(String),
    #[error("`{0}` tests the action, but no action is in scope")]
    NoActionInContext(String),
}

type Instances = Rc<[Fluent]>;

#[derive(Default)]
struct Level {
    memo: HashMap<Fluent, Instances>,
    active: HashSet<Fluent>,
}

/// Where a condition is being evaluated.
#[derive(Clone, Copy)]
struct Ctx<'a> {
    prior: usize,
    next: usize,
    action: Option<&'a Action>,
}

impl Ctx<'_> {
    fn within(level: usize) -> Self {
        Ctx {
            prior: level,
            next: level,
            action: None,
        }
    }
}

/// Evaluates queries against one action history, memoizing fluent instances
/// per prefix. `push`/`pop` keep the memo for shared prefixes, which makes
/// depth-first search cheap.
pub struct Evaluator<'d> {
    domain: &'d DomainModel,
    history: Vec<Action>,
    levels: RefCell<Vec<Level>>,
}

impl<'d> Evaluator<'d> {
    pub fn new(domain: &'d DomainModel, situation: &Situation) -> Self {
        let history = situation.actions().to_vec();
        let levels = (0..=history.len()).map(|_| Level::default()).collect();
        Evaluator {
            domain,
            history,
            levels: RefCell::new(levels),
        }
    }

    pub fn domain(&self) -> &'d DomainModel {
        self.domain
    }

    pub fn actions(&self) -> &[Action] {
        &self.history
    }

    pub fn situation(&self) -> Situation {
        Situation::from_actions(self.history.clone())
    }

    pub fn depth(&self) -> usize {
        self.history.len()
    }

    pub fn push(&mut self, action: Action) {
        self.history.push(action);
        self.levels.get_mut().push(Level::default());
    }

    pub fn pop(&mut self) -> Option<Action> {
        let a = self.history.pop()?;
        self.levels.get_mut().pop();
        Some(a)
    }

    /// Every extension of `binding` under which `query` holds now, in
    /// enumeration order.
    pub fn holds(&self, query: &Fluent, binding: &Binding) -> Result<Vec<Binding>, EvalError> {
        self.holds_at(query, binding, self.depth())
    }

    /// As [`Evaluator::holds`], in the situation made of the first `level`
    /// actions.
    pub fn holds_at(
        &self,
        query: &Fluent,
        binding: &Binding,
        level: usize,
    ) -> Result<Vec<Binding>, EvalError> {
        let pattern = binding.apply(query);
        let found = self.instances(&pattern, level)?;
        Ok(found
            .iter()
            .filter_map(|g| match_atom(&pattern, g, binding))
            .collect())
    }

    pub fn holds_ground(&self, fluent: &Fluent) -> Result<bool, EvalError> {
        Ok(!self.holds(fluent, &Binding::new())?.is_empty())
    }

    /// Ground fluents matching `pattern` at `level`, deduplicated, in
    /// enumeration order.
    pub fn instances(&self, pattern: &Fluent, level: usize) -> Result<Instances, EvalError> {
        let key = canonical(pattern);
        {
            let mut levels = self.levels.borrow_mut();
            let slot = &mut levels[level];
            if let Some(hit) = slot.memo.get(&key) {
                return Ok(hit.clone());
            }
            if !slot.active.insert(key.clone()) {
                // A cyclic dependency contributes nothing new.
                return Ok(Rc::from(Vec::new()));
            }
        }
        let result = if self.domain.derived_rule(&key.name).is_some() || is_open(&key) {
            self.compute(&key, level)
        } else {
            // Successor fluents are computed once per level for the open
            // pattern; narrower queries filter that list.
            let open = canonical(&Atom {
                name: key.name.clone(),
                args: (0..key.arity()).map(|i| Term::var(&format!("V{i}"))).collect(),
            });
            self.instances(&open, level).map(|all| {
                all.iter()
                    .filter(|g| can_match(&key, g, &Binding::new()))
                    .cloned()
                    .collect()
            })
        };
        let mut levels = self.levels.borrow_mut();
        let slot = &mut levels[level];
        slot.active.remove(&key);
        let found: Instances = Rc::from(result?);
        slot.memo.insert(key, found.clone());
        Ok(found)
    }

    fn compute(&self, q: &Fluent, level: usize) -> Result<Vec<Fluent>, EvalError> {
        let d = self.domain;
        let mut out = Collector::default();
        if let Some(rule) = d.derived_rule(&q.name) {
            self.apply_cases(&rule.fluent, &rule.cases, q, Ctx::within(level), &mut out)?;
            return Ok(out.items);
        }
        let successor = d.successor_rule(&q.name);
        let has_initial = d.initial_fluents.iter().any(|f| f.name == q.name);
        if successor.is_none() && !has_initial {
            return Err(EvalError::UnknownFluent(q.name.to_string()));
        }
        match successor {
            Some(rule) if level > 0 => {
                let action = &self.history[level - 1];
                let ctx = Ctx {
                    prior: level - 1,
                    next: level,
                    action: Some(action),
                };
                self.apply_cases(&rule.fluent, &rule.effects, q, ctx, &mut out)?;
                if let Some(persist) = &rule.persist {
                    for g in self.instances(q, level - 1)?.iter() {
                        let Some(hb) = match_atom(&rule.fluent, g, &Binding::new()) else {
                            continue;
                        };
                        if !persist.unless.iter().any(|u| can_match(u, action, &hb)) {
                            out.push(g.clone());
                        }
                    }
                }
            }
            _ => {
                for f in &d.initial_fluents {
                    if can_match(q, f, &Binding::new()) {
                        out.push(f.clone());
                    }
                }
            }
        }
        Ok(out.items)
    }

    fn apply_cases(
        &self,
        head: &Fluent,
        cases: &[Condition],
        q: &Fluent,
        ctx: Ctx<'_>,
        out: &mut Collector,
    ) -> Result<(), EvalError> {
        let Some(pre) = prebind(head, q) else {
            return Ok(());
        };
        for case in cases {
            for b in self.eval(case, &pre, ctx)? {
                let inst = b.apply(head);
                if !inst.is_ground() {
                    return Err(EvalError::NonGround(inst.to_string()));
                }
                if can_match(q, &inst, &Binding::new()) {
                    out.push(inst);
                }
            }
        }
        Ok(())
    }

    /// Evaluates a condition in the current situation, outside any action
    /// context.
    pub fn satisfy(&self, cond: &Condition, binding: &Binding) -> Result<Vec<Binding>, EvalError> {
        self.eval(cond, binding, Ctx::within(self.depth()))
    }

    fn eval(&self, cond: &Condition, b: &Binding, ctx: Ctx<'_>) -> Result<Vec<Binding>, EvalError> {
        let d = self.domain;
        let one = |ok: bool| if ok { vec![b.clone()] } else { Vec::new() };
        Ok(match cond {
            Condition::Holds(f) => self.holds_at(f, b, ctx.prior)?,
            Condition::HoldsNext(f) => self.holds_at(f, b, ctx.next)?,
            Condition::NotHolds(f) => {
                let p = b.apply(f);
                if p.vars().next().is_some() {
                    return Err(EvalError::NonGroundNegation(p.to_string()));
                }
                one(self.instances(&p, ctx.prior)?.is_empty())
            }
            Condition::Static(a) => {
                let p = b.apply(a);
                d.static_facts
                    .iter()
                    .filter_map(|f| match_atom(&p, f, b))
                    .collect()
            }
            Condition::Compare { op, lhs, rhs } => compare(cond, *op, lhs, rhs, b)?,
            Condition::Offset {
                target,
                base,
                offset,
            } => {
                let Some(v) = b.resolve(base).as_int() else {
                    return Err(EvalError::ArithmeticOnUnbound(cond.to_string()));
                };
                let sum = Term::Int(v + offset);
                match b.resolve(target) {
                    Term::Var(name) => {
                        let mut nb = b.clone();
                        nb.bind(&name, &sum);
                        vec![nb]
                    }
                    t => one(t == sum),
                }
            }
            Condition::AboveTouchGuard(t) => match b.resolve(t).as_int() {
                Some(v) => one(v > d.touch_guard_temp),
                None => return Err(EvalError::ArithmeticOnUnbound(cond.to_string())),
            },
            Condition::ActionIs(p) => {
                let a = ctx
                    .action
                    .ok_or_else(|| EvalError::NoActionInContext(cond.to_string()))?;
                match_atom(p, a, b).into_iter().collect()
            }
            Condition::ActionIsNot(p) => {
                let a = ctx
                    .action
                    .ok_or_else(|| EvalError::NoActionInContext(cond.to_string()))?;
                one(!can_match(p, a, b))
            }
            Condition::And(cs) => {
                let mut acc = vec![b.clone()];
                for c in cs {
                    let mut next = Vec::new();
                    for x in &acc {
                        next.extend(self.eval(c, x, ctx)?);
                    }
                    if next.is_empty() {
                        return Ok(next);
                    }
                    acc = next;
                }
                acc
            }
            Condition::Or(cs) => {
                let mut acc = Vec::new();
                for c in cs {
                    acc.extend(self.eval(c, b, ctx)?);
                }
                acc
            }
        })
    }

    /// Ground actions possible now, restricted by `filter`, in rule order.
    pub fn poss(&self, filter: ActionFilter) -> Result<Vec<Action>, EvalError> {
        let mut out = Collector::default();
        for rule in &self.domain.precond_rules {
            if !self.domain.allows(&rule.action.name, filter) {
                continue;
            }
            for b in self.satisfy(&rule.condition, &Binding::new())? {
                let a = b.apply(&rule.action);
                if !a.is_ground() {
                    return Err(EvalError::NonGround(a.to_string()));
                }
                out.push(a);
            }
        }
        Ok(out.items)
    }

    pub fn is_possible(&self, action: &Action) -> Result<bool, EvalError> {
        Ok(self.poss(ActionFilter::All)?.contains(action))
    }
}

fn compare(
    cond: &Condition,
    op: CmpOp,
    lhs: &Term,
    rhs: &Term,
    b: &Binding,
) -> Result<Vec<Binding>, EvalError> {
    let l = b.resolve(lhs);
    let r = b.resolve(rhs);
    let unbound = || EvalError::ArithmeticOnUnbound(cond.to_string());
    let ok = match (op, &l, &r) {
        (CmpOp::Eq, Term::Var(_), Term::Var(_)) => return Err(unbound()),
        (CmpOp::Eq, Term::Var(v), g) | (CmpOp::Eq, g, Term::Var(v)) => {
            let mut nb = b.clone();
            nb.bind(v, g);
            return Ok(vec![nb]);
        }
        (CmpOp::Eq, _, _) => l == r,
        (CmpOp::Ne, Term::Var(_), _) | (CmpOp::Ne, _, Term::Var(_)) => return Err(unbound()),
        (CmpOp::Ne, _, _) => l != r,
        (op, Term::Int(x), Term::Int(y)) => op.test(*x, *y),
        _ => return Err(unbound()),
    };
    Ok(if ok { vec![b.clone()] } else { Vec::new() })
}

/// Binds the rule head's variables from the query's ground positions.
fn prebind(head: &Fluent, q: &Fluent) -> Option<Binding> {
    if head.name != q.name || head.args.len() != q.args.len() {
        return None;
    }
    let mut b = Binding::new();
    for (h, t) in head.args.iter().zip(&q.args) {
        match (h, t) {
            (_, Term::Var(_)) => {}
            (Term::Var(v), g) => {
                if !b.bind(v, g) {
                    return None;
                }
            }
            (x, y) if x == y => {}
            _ => return None,
        }
    }
    Some(b)
}

/// Renames variables to `V0`, `V1`, … by first occurrence, so equal
/// patterns share memo entries regardless of caller naming.
fn is_open(p: &Fluent) -> bool {
    p.args
        .iter()
        .enumerate()
        .all(|(i, t)| matches!(t, Term::Var(v) if v.as_str() == format!("V{i}")))
}

fn canonical(p: &Fluent) -> Fluent {
    let mut names: Vec<Sym> = Vec::new();
    let args = p
        .args
        .iter()
        .map(|t| match t {
            Term::Var(v) if v.as_str() != WILDCARD => {
                let i = names.iter().position(|n| n == v).unwrap_or_else(|| {
                    names.push(v.clone());
                    names.len() - 1
                });
                Term::Var(Sym::new(&format!("V{i}")))
            }
            other => other.clone(),
        })
        .collect();
    Atom {
        name: p.name.clone(),
        args,
    }
}

#[derive(Default)]
struct Collector {
    seen: HashSet<Atom>,
    items: Vec<Atom>,
}

impl Collector {
    fn push(&mut self, a: Atom) {
        if self.seen.insert(a.clone()) {
            self.items.push(a);
        }
    }
}

/// All bindings under which `query` holds in `situation`.
pub fn holds(
    domain: &DomainModel,
    query: &Fluent,
    situation: &Situation,
) -> Result<Vec<Binding>, EvalError> {
    Evaluator::new(domain, situation).holds(query, &Binding::new())
}

/// All ground actions possible in `situation`, in rule order.
pub fn poss(domain: &DomainModel, situation: &Situation) -> Result<Vec<Action>, EvalError> {
    Evaluator::new(domain, situation).poss(ActionFilter::All)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{builtin_domain, load_domain};
    use crate::sitcalc::atom;

    fn toaster() -> DomainModel {
        builtin_domain("toaster").unwrap()
    }

    fn after(items: &[&str]) -> Situation {
        Situation::from_actions(items.iter().map(|s| atom(s)).collect())
    }

    fn values(bs: &[Binding], var: &str) -> Vec<String> {
        bs.iter()
            .map(|b| b.get(&Sym::new(var)).unwrap().to_string())
            .collect()
    }

    #[test]
    fn initial_state_is_closed_world() {
        let d = toaster();
        let s0 = Situation::s0();
        let yes = holds(&d, &atom("temperature(bread_slot,20)"), &s0).unwrap();
        assert_eq!(yes, vec![Binding::new()]);
        assert!(holds(&d, &atom("toasted(bread_slice)"), &s0).unwrap().is_empty());
    }

    #[test]
    fn successor_chain_adds_fifty() {
        let d = toaster();
        let s = after(&["insert(bread_slice,bread_slot)", "press(on_lever)", "raise_temp(bread_slot)"]);
        let bs = holds(&d, &atom("temperature(bread_slot,T)"), &s).unwrap();
        assert_eq!(values(&bs, "T"), ["70"]);
    }

    #[test]
    fn most_recent_binding_comes_first() {
        let d = toaster();
        let s = after(&["insert(bread_slice,bread_slot)", "press(on_lever)", "raise_temp(bread_slot)"]);
        let bs = holds(&d, &atom("temperature(X,T)"), &s).unwrap();
        assert_eq!(values(&bs, "X"), ["bread_slot", "bread_slice"]);
    }

    #[test]
    fn preconditions_at_s0() {
        let d = toaster();
        let p = poss(&d, &Situation::s0()).unwrap();
        assert!(p.contains(&atom("press(on_lever)")));
        assert!(!p.contains(&atom("pop_up")));
        assert!(!p.contains(&atom("get_burned")));
        assert_eq!(p[0], atom("insert(bread_slice,bread_slot)"));
    }

    #[test]
    fn unknown_fluent() {
        let d = toaster();
        assert_eq!(
            holds(&d, &atom("wobbly(on_lever)"), &Situation::s0()),
            Err(EvalError::UnknownFluent("wobbly".into()))
        );
    }

    #[test]
    fn negation_needs_ground_fluent() {
        let d = load_domain(
            "(domain t)
             (init (on a))
             (precond (flip X) (not-holds (on Y)))
             (successor (on X) (persist))
             (classify reader flip)
             (classify normal flip)
             (affects (flip X) (on X))",
        )
        .unwrap();
        let e = Evaluator::new(&d, &Situation::s0());
        assert!(matches!(e.poss(ActionFilter::All), Err(EvalError::NonGroundNegation(_))));
    }

    #[test]
    fn push_pop_matches_fresh_evaluation() {
        let d = toaster();
        let mut e = Evaluator::new(&d, &Situation::s0());
        e.push(atom("insert(bread_slice,bread_slot)"));
        e.push(atom("press(on_lever)"));
        e.push(atom("raise_temp(bread_slot)"));
        let q = atom("temperature(X,T)");
        let fresh = Evaluator::new(&d, &e.situation());
        assert_eq!(e.holds(&q, &Binding::new()), fresh.holds(&q, &Binding::new()));
        e.pop();
        let bs = e.holds(&atom("temperature(bread_slot,T)"), &Binding::new()).unwrap();
        assert_eq!(values(&bs, "T"), ["20"]);
    }

    #[test]
    fn derived_fluents_close_over_interiors() {
        let d = builtin_domain("breadmaker").unwrap();
        let s = after(&[
            "attach(kneading_blade,baking_pan)",
            "pour(water,baking_pan_interior)",
            "open(lid)",
            "insert(baking_pan,main_body_interior)",
        ]);
        let e = Evaluator::new(&d, &s);
        assert!(e.holds_ground(&atom("encloses(baking_pan,water)")).unwrap());
        assert!(e.holds_ground(&atom("encloses(main_body,water)")).unwrap());
        assert!(!e.holds_ground(&atom("contains(main_body,water)")).unwrap());
    }
}
