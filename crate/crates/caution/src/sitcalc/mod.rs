//! Situation calculus core: terms, conditions, situations and evaluation.

mod condition;
mod eval;
mod situation;
mod term;

pub use condition::{CmpOp, Condition};
pub use eval::{holds, poss, EvalError, Evaluator};
pub use situation::Situation;
pub use term::{
    atom, can_match, match_atom, unifiable, Action, Atom, AtomParseError, Binding, Fluent, Sym,
    Term, WILDCARD,
};
