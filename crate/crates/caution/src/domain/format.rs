//! The textual domain-file format: one s-expression form per declaration.

use std::fmt::Write as _;

use super::model::*;
use super::sexpr::{self, Pos, Sexpr, SyntaxError};
use super::validate::{validate_domain, Diagnostic, Severity};
use crate::sitcalc::{Atom, CmpOp, Condition, Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("parse error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("parse error at {pos}: {message}")]
    Form { pos: Pos, message: String },
    #[error("invalid domain: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("unknown built-in domain `{0}`")]
    UnknownDomain(String),
}

fn join_diagnostics(ds: &[Diagnostic]) -> String {
    ds.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn form_err<T>(at: &Sexpr, message: impl Into<String>) -> Result<T, DomainError> {
    Err(DomainError::Form {
        pos: at.pos(),
        message: message.into(),
    })
}

/// Parses and validates a domain file. Warnings are tolerated; any
/// error-severity diagnostic fails the load.
pub fn load_domain(text: &str) -> Result<DomainModel, DomainError> {
    let model = parse_domain(text)?;
    let errors: Vec<Diagnostic> = validate_domain(&model)
        .into_iter()
        .filter(|d| d.severity == Severity::Error)
        .collect();
    if errors.is_empty() {
        Ok(model)
    } else {
        Err(DomainError::Invalid(errors))
    }
}

/// Parses a domain file without validating it.
pub fn parse_domain(text: &str) -> Result<DomainModel, DomainError> {
    let mut m = DomainModel::empty("unnamed");
    for form in sexpr::parse(text)? {
        declaration(&mut m, &form)?;
    }
    Ok(m)
}

fn declaration(m: &mut DomainModel, form: &Sexpr) -> Result<(), DomainError> {
    let Some(items) = form.as_list() else {
        return form_err(form, "expected a declaration form");
    };
    let Some(head) = form.head() else {
        return form_err(form, "declaration needs a keyword");
    };
    let args = &items[1..];
    match head {
        "domain" => {
            let [name] = args else {
                return form_err(form, "expected (domain <name>)");
            };
            m.name = symbol(name)?.to_string();
        }
        "static" => {
            let Some((name, rest)) = args.split_first() else {
                return form_err(form, "expected (static <name> <args…>)");
            };
            let args = rest.iter().map(term).collect::<Result<_, _>>()?;
            m.static_facts.push(Atom {
                name: symbol(name)?,
                args,
            });
        }
        "init" => {
            for f in args {
                let f = atom_of(f)?;
                if !f.is_ground() {
                    return form_err(form, "initial fluents must be ground");
                }
                m.initial_fluents.push(f);
            }
        }
        "precond" => {
            let (action, condition, planner_guard) = match args {
                [a, c] => (a, c, false),
                [a, c, g] if g.as_atom() == Some(":guard") => (a, c, true),
                _ => return form_err(form, "expected (precond <action> <condition> [:guard])"),
            };
            m.precond_rules.push(PrecondRule {
                action: atom_of(action)?,
                condition: condition_of(condition)?,
                planner_guard,
            });
        }
        "successor" => {
            let Some((head, clauses)) = args.split_first() else {
                return form_err(form, "expected (successor <fluent> <clauses…>)");
            };
            let mut rule = SuccessorRule {
                fluent: atom_of(head)?,
                effects: Vec::new(),
                persist: None,
            };
            for c in clauses {
                match c.head() {
                    Some("when") => rule.effects.push(when(c)?),
                    Some("persist") if rule.persist.is_none() => {
                        rule.persist = Some(persistence(c)?);
                    }
                    Some("persist") => return form_err(c, "duplicate persist clause"),
                    _ => return form_err(c, "expected (when …) or (persist …)"),
                }
            }
            m.successor_rules.push(rule);
        }
        "derived" => {
            let Some((head, clauses)) = args.split_first() else {
                return form_err(form, "expected (derived <fluent> <clauses…>)");
            };
            let cases = clauses.iter().map(when).collect::<Result<_, _>>()?;
            m.derived_rules.push(DerivedRule {
                fluent: atom_of(head)?,
                cases,
            });
        }
        "classify" => {
            let Some((class, names)) = args.split_first() else {
                return form_err(form, "expected (classify <class> <names…>)");
            };
            let Some(class) = class.as_atom().and_then(ActionClass::from_keyword) else {
                return form_err(class, "class must be reader, device, normal or injury");
            };
            for n in names {
                m.classes.push((class, symbol(n)?));
            }
        }
        "affects" => {
            let [a, f] = args else {
                return form_err(form, "expected (affects <action> <fluent>)");
            };
            m.affects.push(Affects {
                action: atom_of(a)?,
                fluent: atom_of(f)?,
            });
        }
        "role" => {
            let [action, slot, filler] = args else {
                return form_err(form, "expected (role <action> <slot> <filler>)");
            };
            let Some(slot) = slot.as_atom().and_then(SlotName::from_keyword) else {
                return form_err(slot, "unknown slot");
            };
            m.roles.push(RoleEntry {
                action: symbol(action)?,
                slot,
                filler: role_filler(filler)?,
            });
        }
        "actor-query" => {
            let [action, query, var] = args else {
                return form_err(form, "expected (actor-query <action> <fluent> <Var>)");
            };
            let Term::Var(var) = term(var)? else {
                return form_err(var, "actor-query result must be a variable");
            };
            m.actor_queries.push(ActorQuery {
                action: symbol(action)?,
                query: atom_of(query)?,
                var,
            });
        }
        "polarity" => {
            let [action, p] = args else {
                return form_err(form, "expected (polarity <action> positive|negative)");
            };
            let p = match p.as_atom() {
                Some("positive") => Polarity::Positive,
                Some("negative") => Polarity::Negative,
                _ => return form_err(p, "polarity must be positive or negative"),
            };
            m.polarities.push((symbol(action)?, p));
        }
        "collection" => {
            let [trigger, label] = args else {
                return form_err(form, "expected (collection <action> <label>)");
            };
            m.collections.push(Collection {
                trigger: symbol(trigger)?,
                label: symbol(label)?,
            });
        }
        "guard" => {
            let [kind, value] = args else {
                return form_err(form, "expected (guard touch-temp <int>)");
            };
            if kind.as_atom() != Some("touch-temp") {
                return form_err(kind, "only the touch-temp guard is supported");
            }
            let Term::Int(v) = term(value)? else {
                return form_err(value, "guard value must be an integer");
            };
            m.touch_guard_temp = v;
        }
        "lexeme" => {
            let [sym, Sexpr::Str(surface, _)] = args else {
                return form_err(form, "expected (lexeme <symbol> \"<surface>\")");
            };
            m.lexicon.push((symbol(sym)?, surface.clone()));
        }
        "goal" => {
            for f in args {
                m.goal.push(atom_of(f)?);
            }
        }
        other => return form_err(form, format!("unknown declaration `{other}`")),
    }
    Ok(())
}

fn symbol(x: &Sexpr) -> Result<Sym, DomainError> {
    match x.as_atom() {
        Some(s) if matches!(Term::from_token(s), Term::Sym(_)) => Ok(Sym::new(s)),
        _ => form_err(x, "expected a lowercase symbol"),
    }
}

fn term(x: &Sexpr) -> Result<Term, DomainError> {
    match x.as_atom() {
        Some(s) => Ok(Term::from_token(s)),
        None => form_err(x, "expected a term"),
    }
}

/// `name` or `(name args…)`.
fn atom_of(x: &Sexpr) -> Result<Atom, DomainError> {
    match x {
        Sexpr::Atom(..) => Ok(Atom {
            name: symbol(x)?,
            args: Vec::new(),
        }),
        Sexpr::List(items, _) if !items.is_empty() => {
            let args = items[1..].iter().map(term).collect::<Result<_, _>>()?;
            Ok(Atom {
                name: symbol(&items[0])?,
                args,
            })
        }
        _ => form_err(x, "expected an atom"),
    }
}

fn when(x: &Sexpr) -> Result<Condition, DomainError> {
    match x.as_list() {
        Some([_, c]) if x.head() == Some("when") => condition_of(c),
        _ => form_err(x, "expected (when <condition>)"),
    }
}

fn persistence(x: &Sexpr) -> Result<Persistence, DomainError> {
    let items = x.as_list().unwrap_or_default();
    match items {
        [_] => Ok(Persistence::default()),
        [_, kw, pats @ ..] if kw.as_atom() == Some("unless") && !pats.is_empty() => {
            Ok(Persistence {
                unless: pats.iter().map(atom_of).collect::<Result<_, _>>()?,
            })
        }
        _ => form_err(x, "expected (persist) or (persist unless <action>…)"),
    }
}

fn role_filler(x: &Sexpr) -> Result<RoleFiller, DomainError> {
    let Some(s) = x.as_atom() else {
        return form_err(x, "expected a role filler");
    };
    Ok(match s {
        "reader" => RoleFiller::Reader,
        _ => match s.strip_prefix("arg").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if k >= 1 => RoleFiller::Arg(k),
            _ => RoleFiller::Fixed(symbol(x)?),
        },
    })
}

fn condition_of(x: &Sexpr) -> Result<Condition, DomainError> {
    let (Some(items), Some(head)) = (x.as_list(), x.head()) else {
        return form_err(x, "expected a condition form");
    };
    let args = &items[1..];
    let one = || match args {
        [a] => Ok(a),
        _ => form_err(x, format!("`{head}` takes one argument")),
    };
    Ok(match head {
        "and" => Condition::And(args.iter().map(condition_of).collect::<Result<_, _>>()?),
        "or" => Condition::Or(args.iter().map(condition_of).collect::<Result<_, _>>()?),
        "holds" => Condition::Holds(atom_of(one()?)?),
        "holds-next" => Condition::HoldsNext(atom_of(one()?)?),
        "not-holds" => Condition::NotHolds(atom_of(one()?)?),
        "action" => Condition::ActionIs(atom_of(one()?)?),
        "not-action" => Condition::ActionIsNot(atom_of(one()?)?),
        "above-touch-guard" => Condition::AboveTouchGuard(term(one()?)?),
        "fact" => {
            let Some((name, rest)) = args.split_first() else {
                return form_err(x, "expected (fact <name> <args…>)");
            };
            Condition::Static(Atom {
                name: symbol(name)?,
                args: rest.iter().map(term).collect::<Result<_, _>>()?,
            })
        }
        "cmp" => {
            let [op, l, r] = args else {
                return form_err(x, "expected (cmp <op> <lhs> <rhs>)");
            };
            let op_text = op.as_atom().unwrap_or_default();
            if let Some(op) = CmpOp::from_symbol(op_text) {
                Condition::Compare {
                    op,
                    lhs: term(l)?,
                    rhs: term(r)?,
                }
            } else if let Some(k) = offset(op_text) {
                Condition::Offset {
                    target: term(l)?,
                    base: term(r)?,
                    offset: k,
                }
            } else {
                return form_err(op, "unknown comparison operator");
            }
        }
        other => return form_err(x, format!("unknown condition `{other}`")),
    })
}

/// `+50` or `-20`: an offset-equality operator.
fn offset(op: &str) -> Option<i64> {
    if op.starts_with('+') || op.starts_with('-') {
        op.parse().ok()
    } else {
        None
    }
}

/// Writes the model in canonical section order. Loading the output yields an
/// equal model.
pub fn serialize_domain(m: &DomainModel) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "(domain {})", m.name);
    let _ = writeln!(o, "(guard touch-temp {})", m.touch_guard_temp);
    for f in &m.static_facts {
        o.push_str("(static ");
        o.push_str(f.name.as_str());
        for a in &f.args {
            let _ = write!(o, " {a}");
        }
        o.push_str(")\n");
    }
    for f in &m.initial_fluents {
        let _ = writeln!(o, "(init {})", sx(f));
    }
    for r in &m.precond_rules {
        let guard = if r.planner_guard { " :guard" } else { "" };
        let _ = writeln!(
            o,
            "(precond {}\n  {}{guard})",
            sx(&r.action),
            cond(&r.condition)
        );
    }
    for r in &m.successor_rules {
        let _ = write!(o, "(successor {}", sx(&r.fluent));
        for e in &r.effects {
            let _ = write!(o, "\n  (when {})", cond(e));
        }
        match &r.persist {
            Some(p) if p.unless.is_empty() => o.push_str("\n  (persist)"),
            Some(p) => {
                o.push_str("\n  (persist unless");
                for u in &p.unless {
                    let _ = write!(o, " {}", sx(u));
                }
                o.push(')');
            }
            None => {}
        }
        o.push_str(")\n");
    }
    for r in &m.derived_rules {
        let _ = write!(o, "(derived {}", sx(&r.fluent));
        for c in &r.cases {
            let _ = write!(o, "\n  (when {})", cond(c));
        }
        o.push_str(")\n");
    }
    let mut i = 0;
    while i < m.classes.len() {
        let class = m.classes[i].0;
        let _ = write!(o, "(classify {}", class.keyword());
        while i < m.classes.len() && m.classes[i].0 == class {
            let _ = write!(o, " {}", m.classes[i].1);
            i += 1;
        }
        o.push_str(")\n");
    }
    for a in &m.affects {
        let _ = writeln!(o, "(affects {} {})", sx(&a.action), sx(&a.fluent));
    }
    for r in &m.roles {
        let filler = match &r.filler {
            RoleFiller::Arg(k) => format!("arg{k}"),
            RoleFiller::Reader => "reader".to_string(),
            RoleFiller::Fixed(s) => s.to_string(),
        };
        let _ = writeln!(o, "(role {} {} {filler})", r.action, r.slot.keyword());
    }
    for q in &m.actor_queries {
        let _ = writeln!(o, "(actor-query {} {} {})", q.action, sx(&q.query), q.var);
    }
    for (a, p) in &m.polarities {
        let p = match p {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        };
        let _ = writeln!(o, "(polarity {a} {p})");
    }
    for c in &m.collections {
        let _ = writeln!(o, "(collection {} {})", c.trigger, c.label);
    }
    for (s, surface) in &m.lexicon {
        let _ = writeln!(o, "(lexeme {s} {})", sexpr::quote(surface));
    }
    if !m.goal.is_empty() {
        o.push_str("(goal");
        for g in &m.goal {
            let _ = write!(o, " {}", sx(g));
        }
        o.push_str(")\n");
    }
    o
}

fn sx(a: &Atom) -> String {
    if a.args.is_empty() {
        return a.name.to_string();
    }
    let mut s = format!("({}", a.name);
    for t in &a.args {
        let _ = write!(s, " {t}");
    }
    s.push(')');
    s
}

fn cond(c: &Condition) -> String {
    let list = |kw: &str, cs: &[Condition]| {
        let mut s = format!("({kw}");
        for c in cs {
            s.push(' ');
            s.push_str(&cond(c));
        }
        s.push(')');
        s
    };
    match c {
        Condition::Holds(f) => format!("(holds {})", sx(f)),
        Condition::HoldsNext(f) => format!("(holds-next {})", sx(f)),
        Condition::NotHolds(f) => format!("(not-holds {})", sx(f)),
        Condition::Static(a) => {
            let mut s = format!("(fact {}", a.name);
            for t in &a.args {
                let _ = write!(s, " {t}");
            }
            s.push(')');
            s
        }
        Condition::Compare { op, lhs, rhs } => format!("(cmp {} {lhs} {rhs})", op.symbol()),
        Condition::Offset {
            target,
            base,
            offset,
        } => format!("(cmp {offset:+} {target} {base})"),
        Condition::AboveTouchGuard(t) => format!("(above-touch-guard {t})"),
        Condition::ActionIs(a) => format!("(action {})", sx(a)),
        Condition::ActionIsNot(a) => format!("(not-action {})", sx(a)),
        Condition::And(cs) => list("and", cs),
        Condition::Or(cs) => list("or", cs),
    }
}
