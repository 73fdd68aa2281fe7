//! Sentence plans: choosing what to mention, filling roles, and the SPL
//! text format.

use std::fmt::Write as _;

use crate::domain::sexpr::{self, Sexpr};
use crate::domain::{ActionClass, DomainModel, Polarity, RoleFiller, SlotName};
use crate::interpret::InterpretedPlan;
use crate::sitcalc::{Action, Atom, Binding, EvalError, Evaluator, Situation, Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filler {
    /// A thing referred to with the definite determiner.
    Entity { id: usize, head: Sym },
    /// The reader; consumes no id.
    Hearer,
    /// A bare keyword such as a tense or speech act.
    Plain(Sym),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplNode {
    pub id: usize,
    pub process: Sym,
    pub slots: Vec<(SlotName, Filler)>,
}

impl SplNode {
    pub fn slot(&self, name: SlotName) -> Option<&Filler> {
        self.slots.iter().find(|(s, _)| *s == name).map(|(_, f)| f)
    }

    pub fn plain(&self, name: SlotName) -> Option<&str> {
        match self.slot(name)? {
            Filler::Plain(s) => Some(s.as_str()),
            _ => None,
        }
    }

    /// The highest id this node uses.
    pub fn last_id(&self) -> usize {
        self.slots
            .iter()
            .filter_map(|(_, f)| match f {
                Filler::Entity { id, .. } => Some(*id),
                _ => None,
            })
            .fold(self.id, usize::max)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplError {
    #[error("`{0}` is mentioned but has no role table entry")]
    RoleGap(String),
    #[error("role of `{action}` refers to argument {index}, which is not a symbol")]
    BadRoleArgument { action: String, index: usize },
    #[error("actor query for `{0}` found nothing")]
    NoActor(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Builds sentence plans for an interpreted plan.
///
/// A device action is mentioned when it directly follows the last member of
/// a labelled collection, causes a salient change, and is followed by a
/// reader action; both are then mentioned. Otherwise only reader actions are
/// mentioned. Injury actions without role entries stay silent.
pub fn make_spl(plan: &InterpretedPlan, domain: &DomainModel) -> Result<Vec<SplNode>, SplError> {
    let actions: Vec<Action> = plan.entries.iter().map(|(_, a)| a.clone()).collect();
    let eval = Evaluator::new(domain, &Situation::from_actions(actions));
    let e = &plan.entries;
    let mut nodes = Vec::new();
    let mut id = 0;
    let mut k = 0;
    while k < e.len() {
        if k + 2 < e.len() {
            let ((i1, a1), (i2, a2), (_, a3)) = (&e[k], &e[k + 1], &e[k + 2]);
            if *i2 == i1 + 1
                && domain.is_device(&a1.name)
                && domain.is_device(&a2.name)
                && domain.is_reader(&a3.name)
                && caused_salient_change(&eval, k + 1, domain)?
                && plan.label_at(*i1).is_some()
            {
                for pos in [k + 1, k + 2] {
                    let node = sentence(pos, plan, domain, &eval, id + 1)?;
                    id = node.last_id();
                    nodes.push(node);
                }
                k += 3;
                continue;
            }
        }
        let a = &e[k].1;
        if domain.is_reader(&a.name) {
            let silent = domain.roles_of(&a.name).next().is_none();
            if silent && !domain.is_class(&a.name, ActionClass::Injury) {
                return Err(SplError::RoleGap(a.name.to_string()));
            }
            if !silent {
                let node = sentence(k, plan, domain, &eval, id + 1)?;
                id = node.last_id();
                nodes.push(node);
            }
        }
        k += 1;
    }
    Ok(nodes)
}

fn sentence(
    pos: usize,
    plan: &InterpretedPlan,
    domain: &DomainModel,
    eval: &Evaluator<'_>,
    id: usize,
) -> Result<SplNode, SplError> {
    let mut next = id;
    let slots = role_fillers(pos, plan, domain, eval, &mut next)?;
    Ok(SplNode {
        id,
        process: plan.entries[pos].1.name.clone(),
        slots,
    })
}

/// The slot list for the entry at `pos`. Entity ids are taken from
/// `counter`, which holds the last id used.
pub fn role_fillers(
    pos: usize,
    plan: &InterpretedPlan,
    domain: &DomainModel,
    eval: &Evaluator<'_>,
    counter: &mut usize,
) -> Result<Vec<(SlotName, Filler)>, SplError> {
    let (index, action) = &plan.entries[pos];
    let device = domain.is_device(&action.name);
    let mut entity = |head: Sym| {
        *counter += 1;
        Filler::Entity { id: *counter, head }
    };
    let mut slots = Vec::new();

    let actor = if let Some(q) = domain.actor_query(&action.name) {
        let found = eval.holds_at(&q.query, &Binding::new(), pos + 1)?;
        match found.first().and_then(|b| b.get(&q.var)) {
            Some(Term::Sym(s)) => Some(s.clone()),
            _ => return Err(SplError::NoActor(action.to_string())),
        }
    } else {
        match domain.role(&action.name, SlotName::Actor) {
            Some(f) => filler_symbol(action, f)?,
            None => None,
        }
    };
    slots.push((
        SlotName::Actor,
        match actor {
            Some(s) => entity(s),
            None => Filler::Hearer,
        },
    ));

    for slot in [SlotName::Actee, SlotName::Source, SlotName::Destination] {
        if let Some(f) = domain.role(&action.name, slot) {
            slots.push((
                slot,
                match filler_symbol(action, f)? {
                    Some(s) => entity(s),
                    None => Filler::Hearer,
                },
            ));
        }
    }
    if let Some(label) = plan
        .label_at(*index)
        .filter(|_| domain.is_class(&action.name, ActionClass::Injury))
    {
        slots.push((SlotName::ExhaustiveDuration, entity(label.clone())));
    }
    let (tense, act) = if device {
        ("future", "assertion")
    } else if domain.polarity(&action.name) == Polarity::Negative {
        ("present", "neg-imperative")
    } else {
        ("present", "imperative")
    };
    slots.push((SlotName::Tense, Filler::Plain(Sym::new(tense))));
    slots.push((SlotName::Speechact, Filler::Plain(Sym::new(act))));
    Ok(slots)
}

/// `None` stands for the reader.
fn filler_symbol(action: &Action, f: &RoleFiller) -> Result<Option<Sym>, SplError> {
    match f {
        RoleFiller::Reader => Ok(None),
        RoleFiller::Fixed(s) => Ok(Some(s.clone())),
        RoleFiller::Arg(k) => match action.args.get(k - 1) {
            Some(Term::Sym(s)) => Ok(Some(s.clone())),
            _ => Err(SplError::BadRoleArgument {
                action: action.to_string(),
                index: *k,
            }),
        },
    }
}

/// True iff the action at `pos` makes some physical object or raw material
/// newly exposed, or its actor is a declared indicator.
pub fn caused_salient_change(
    eval: &Evaluator<'_>,
    pos: usize,
    domain: &DomainModel,
) -> Result<bool, EvalError> {
    let action = &eval.actions()[pos];
    if let Some(RoleFiller::Arg(k)) = domain.role(&action.name, SlotName::Actor) {
        if let Some(Term::Sym(s)) = action.args.get(k - 1) {
            if domain.is_indicator(s) {
                return Ok(true);
            }
        }
    }
    let candidates = domain
        .static_facts
        .iter()
        .filter(|f| matches!(f.name.as_str(), "physical_object" | "raw_material") && f.arity() == 1);
    for f in candidates {
        let exposed = Atom {
            name: Sym::new("exposed"),
            args: f.args.clone(),
        };
        let before = eval.holds_at(&exposed, &Binding::new(), pos)?;
        let after = eval.holds_at(&exposed, &Binding::new(), pos + 1)?;
        if before.is_empty() && !after.is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

const SLOT_INDENT: usize = 8;

/// Serializes sentence plans in the SPL file layout.
pub fn write_spl(nodes: &[SplNode]) -> String {
    let mut o = String::from("(setq plan '(");
    for (i, n) in nodes.iter().enumerate() {
        if i > 0 {
            o.push('\n');
        }
        let _ = write!(o, "(ID{} / {}", n.id, n.process);
        let pad = " ".repeat(SLOT_INDENT);
        for (slot, filler) in &n.slots {
            let _ = write!(o, "\n{pad}:");
            match filler {
                Filler::Hearer => o.push_str("actor (hearer / person)"),
                Filler::Plain(v) => {
                    let _ = write!(o, "{} {v}", slot.keyword());
                }
                Filler::Entity { id, head } => {
                    let inner = " ".repeat(2 * SLOT_INDENT);
                    let _ = write!(
                        o,
                        "{} (ID{id} / {head}\n{inner}:determiner the)",
                        slot.keyword()
                    );
                }
            }
        }
        o.push(')');
    }
    o.push_str("))\n");
    o
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplParseError {
    #[error("SPL syntax error at {0}")]
    Syntax(#[from] sexpr::SyntaxError),
    #[error("SPL structure error at {pos}: {message}")]
    Shape { pos: sexpr::Pos, message: String },
}

fn shape<T>(at: &Sexpr, message: &str) -> Result<T, SplParseError> {
    Err(SplParseError::Shape {
        pos: at.pos(),
        message: message.to_string(),
    })
}

/// Parses text produced by [`write_spl`].
pub fn read_spl(text: &str) -> Result<Vec<SplNode>, SplParseError> {
    let forms = sexpr::parse(text)?;
    let [top] = forms.as_slice() else {
        return Err(SplParseError::Shape {
            pos: sexpr::Pos { line: 1, column: 1 },
            message: "expected a single (setq plan '(…)) form".into(),
        });
    };
    let items = top.as_list().unwrap_or_default();
    let [setq, plan, quote, body] = items else {
        return shape(top, "expected (setq plan '(…))");
    };
    if setq.as_atom() != Some("setq") || plan.as_atom() != Some("plan") || quote.as_atom() != Some("'")
    {
        return shape(top, "expected (setq plan '(…))");
    }
    let Some(sentences) = body.as_list() else {
        return shape(body, "expected a list of sentences");
    };
    sentences.iter().map(read_sentence).collect()
}

/// `(ID<n> / <head> …)` as (id, head, rest).
fn read_head(x: &Sexpr) -> Result<(usize, Sym, &[Sexpr]), SplParseError> {
    let items = x.as_list().unwrap_or_default();
    let [id, slash, head, rest @ ..] = items else {
        return shape(x, "expected (ID<n> / <name> …)");
    };
    let id = id
        .as_atom()
        .and_then(|s| s.strip_prefix("ID"))
        .and_then(|s| s.parse().ok());
    match (id, slash.as_atom(), head.as_atom()) {
        (Some(id), Some("/"), Some(h)) => Ok((id, Sym::new(h), rest)),
        _ => shape(x, "expected (ID<n> / <name> …)"),
    }
}

fn read_sentence(x: &Sexpr) -> Result<SplNode, SplParseError> {
    let (id, process, mut rest) = read_head(x)?;
    let mut slots = Vec::new();
    while let [key, value, tail @ ..] = rest {
        let Some(slot) = key
            .as_atom()
            .and_then(|k| k.strip_prefix(':'))
            .and_then(SlotName::from_keyword)
        else {
            return shape(key, "expected a slot keyword");
        };
        let filler = match value {
            Sexpr::Atom(v, _) => Filler::Plain(Sym::new(v)),
            Sexpr::List(items, _) if is_hearer(items) => Filler::Hearer,
            Sexpr::List(..) => {
                let (id, head, sub) = read_head(value)?;
                match sub {
                    [d, the] if d.as_atom() == Some(":determiner") && the.as_atom() == Some("the") => {}
                    _ => return shape(value, "expected :determiner the"),
                }
                Filler::Entity { id, head }
            }
            Sexpr::Str(..) => return shape(value, "unexpected string"),
        };
        slots.push((slot, filler));
        rest = tail;
    }
    if !rest.is_empty() {
        return shape(x, "slot without a filler");
    }
    Ok(SplNode { id, process, slots })
}

fn is_hearer(items: &[Sexpr]) -> bool {
    matches!(
        items,
        [h, s, p] if h.as_atom() == Some("hearer") && s.as_atom() == Some("/") && p.as_atom() == Some("person")
    )
}
