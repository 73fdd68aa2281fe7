use std::fmt;

use super::term::{Action, Atom, Fluent, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Ge,
    Gt,
    /// Equality; binds an unbound variable operand.
    Eq,
    Ne,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "<" => CmpOp::Lt,
            "<=" => CmpOp::Le,
            ">=" => CmpOp::Ge,
            ">" => CmpOp::Gt,
            "=" => CmpOp::Eq,
            "!=" => CmpOp::Ne,
            _ => return None,
        })
    }

    pub fn test(self, l: i64, r: i64) -> bool {
        match self {
            CmpOp::Lt => l < r,
            CmpOp::Le => l <= r,
            CmpOp::Ge => l >= r,
            CmpOp::Gt => l > r,
            CmpOp::Eq => l == r,
            CmpOp::Ne => l != r,
        }
    }
}

/// An evaluable condition. Conjunctions evaluate left to right and
/// disjunctions in declared order; that order fixes the binding stream order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Condition {
    /// The fluent holds in the situation before the action (or the current
    /// situation, outside successor rules).
    Holds(Fluent),
    /// The fluent holds in the situation after the action.
    HoldsNext(Fluent),
    /// Negation as failure. The fluent must be ground when evaluated.
    NotHolds(Fluent),
    Static(Atom),
    Compare {
        op: CmpOp,
        lhs: Term,
        rhs: Term,
    },
    /// `target = base + offset`, binding `target` when it is unbound.
    Offset {
        target: Term,
        base: Term,
        offset: i64,
    },
    /// The integer term exceeds the domain's touch guard temperature.
    AboveTouchGuard(Term),
    ActionIs(Action),
    ActionIsNot(Action),
    And(Vec<Condition>),
    Or(Vec<Condition>),
}

impl Condition {
    /// Visits this condition and every nested one, depth first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Condition)) {
        f(self);
        if let Condition::And(cs) | Condition::Or(cs) = self {
            for c in cs {
                c.walk(f);
            }
        }
    }

    /// Every fluent referenced by a holds-style conjunct.
    pub fn fluents(&self) -> Vec<&Fluent> {
        let mut out = Vec::new();
        self.walk(&mut |c| {
            if let Condition::Holds(f) | Condition::HoldsNext(f) | Condition::NotHolds(f) = c {
                out.push(f);
            }
        });
        out
    }

    /// Every action pattern the condition tests the last action against.
    pub fn action_patterns(&self) -> Vec<&Action> {
        let mut out = Vec::new();
        self.walk(&mut |c| {
            if let Condition::ActionIs(a) | Condition::ActionIsNot(a) = c {
                out.push(a);
            }
        });
        out
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Holds(x) => write!(f, "holds({x})"),
            Condition::HoldsNext(x) => write!(f, "holds_next({x})"),
            Condition::NotHolds(x) => write!(f, "\\+ holds({x})"),
            Condition::Static(x) => write!(f, "{x}"),
            Condition::Compare { op, lhs, rhs } => write!(f, "{lhs} {} {rhs}", op.symbol()),
            Condition::Offset {
                target,
                base,
                offset,
            } => write!(f, "{target} is {base}{offset:+}"),
            Condition::AboveTouchGuard(t) => write!(f, "{t} > touch_guard"),
            Condition::ActionIs(a) => write!(f, "A = {a}"),
            Condition::ActionIsNot(a) => write!(f, "\\+ A = {a}"),
            Condition::And(cs) => join(f, cs, ", "),
            Condition::Or(cs) => join(f, cs, "; "),
        }
    }
}

fn join(f: &mut fmt::Formatter<'_>, cs: &[Condition], sep: &str) -> fmt::Result {
    f.write_str("(")?;
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}
