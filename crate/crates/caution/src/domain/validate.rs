use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::model::{ActionClass, DomainModel, RoleFiller};
use crate::sitcalc::{Atom, Condition, Sym};

/// Action names that can only ever be injury actions.
pub const INJURY_ACTIONS: [&str; 2] = ["touch", "get_burned"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn error(message: String) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message,
        }
    }

    fn warning(message: String) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            message,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{level}: {}", self.message)
    }
}

/// Checks the model's structural invariants. Empty iff all hold; the order
/// of diagnostics is stable.
pub fn validate_domain(m: &DomainModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let actions = action_names(m);

    let mut seen: BTreeMap<(bool, &Sym), ActionClass> = BTreeMap::new();
    for (class, name) in &m.classes {
        let axis = matches!(class, ActionClass::Reader | ActionClass::Device);
        if let Some(prev) = seen.insert((axis, name), *class) {
            out.push(Diagnostic::error(format!(
                "duplicate classification of `{name}` ({} and {})",
                prev.keyword(),
                class.keyword()
            )));
        }
    }

    for name in &actions {
        let is = |c| m.is_class(name, c);
        if !is(ActionClass::Reader) && !is(ActionClass::Device) {
            out.push(Diagnostic::error(format!(
                "unclassified action `{name}`: neither reader nor device"
            )));
        }
        if !is(ActionClass::Normal) && !is(ActionClass::Injury) {
            out.push(Diagnostic::error(format!(
                "unclassified action `{name}`: neither normal nor injury"
            )));
        }
    }

    for name in INJURY_ACTIONS {
        let sym = Sym::new(name);
        if m.is_class(&sym, ActionClass::Normal)
            || (actions.contains(&sym) && !m.is_class(&sym, ActionClass::Injury))
        {
            out.push(Diagnostic::error(format!(
                "injury action misclassified: `{name}` must be an injury action"
            )));
        }
    }

    let housed: BTreeSet<&Sym> = m
        .successor_rules
        .iter()
        .map(|r| &r.fluent.name)
        .chain(m.derived_rules.iter().map(|r| &r.fluent.name))
        .chain(m.initial_fluents.iter().map(|f| &f.name))
        .collect();
    let mut heads = BTreeSet::new();
    for name in m
        .successor_rules
        .iter()
        .map(|r| &r.fluent.name)
        .chain(m.derived_rules.iter().map(|r| &r.fluent.name))
    {
        if !heads.insert(name) {
            out.push(Diagnostic::error(format!("duplicate rule for fluent `{name}`")));
        }
    }

    let fluents = fluent_uses(m);
    let mut arity: BTreeMap<&Sym, usize> = BTreeMap::new();
    let mut reported = BTreeSet::new();
    for f in &fluents {
        if !housed.contains(&f.name) && reported.insert(&f.name) {
            out.push(Diagnostic::error(format!(
                "unhoused fluent `{}`: no successor rule or initial-state entry",
                f.name
            )));
        }
        if let Some(&n) = arity.get(&f.name) {
            if n != f.arity() && reported.insert(&f.name) {
                out.push(Diagnostic::error(format!(
                    "fluent `{}` used with arities {n} and {}",
                    f.name,
                    f.arity()
                )));
            }
        } else {
            arity.insert(&f.name, f.arity());
        }
    }

    for r in &m.roles {
        if !actions.contains(&r.action) {
            out.push(Diagnostic::warning(format!(
                "role entry for unknown action `{}`",
                r.action
            )));
        }
        if let RoleFiller::Arg(k) = r.filler {
            let too_far = m
                .precond_rules
                .iter()
                .any(|p| p.action.name == r.action && p.action.arity() < k);
            if too_far {
                out.push(Diagnostic::error(format!(
                    "role `{}` of `{}` refers to missing argument {k}",
                    r.slot.keyword(),
                    r.action
                )));
            }
        }
    }

    for rule in &m.precond_rules {
        let name = &rule.action.name;
        let planned = m.is_class(name, ActionClass::Normal) || m.is_class(name, ActionClass::Injury);
        if m.is_reader(name) && planned && !m.affects.iter().any(|a| &a.action.name == name) {
            out.push(Diagnostic::warning(format!(
                "action lacks affects entry: `{name}` (loop guard cannot see it)"
            )));
        }
    }
    out.dedup();
    out
}

/// Every action name the model's rules, tables and affects mention.
fn action_names(m: &DomainModel) -> BTreeSet<Sym> {
    let mut names = BTreeSet::new();
    let mut visit = |c: &Condition| {
        for p in c.action_patterns() {
            names.insert(p.name.clone());
        }
    };
    for r in &m.precond_rules {
        visit(&r.condition);
    }
    for r in &m.successor_rules {
        r.effects.iter().for_each(&mut visit);
    }
    for r in &m.derived_rules {
        r.cases.iter().for_each(&mut visit);
    }
    for r in &m.precond_rules {
        names.insert(r.action.name.clone());
    }
    for r in &m.successor_rules {
        for u in r.persist.iter().flat_map(|p| &p.unless) {
            names.insert(u.name.clone());
        }
    }
    for a in &m.affects {
        names.insert(a.action.name.clone());
    }
    names
}

fn fluent_uses(m: &DomainModel) -> Vec<&Atom> {
    let mut out = Vec::new();
    for r in &m.precond_rules {
        out.extend(r.condition.fluents());
    }
    for r in &m.successor_rules {
        out.push(&r.fluent);
        for e in &r.effects {
            out.extend(e.fluents());
        }
    }
    for r in &m.derived_rules {
        out.push(&r.fluent);
        for c in &r.cases {
            out.extend(c.fluents());
        }
    }
    out.extend(m.initial_fluents.iter());
    out.extend(m.affects.iter().map(|a| &a.fluent));
    out.extend(m.actor_queries.iter().map(|q| &q.query));
    out.extend(m.goal.iter());
    out
}
