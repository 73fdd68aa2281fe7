//! Device–environment models: types, the domain-file format, validation and
//! the built-in domains.

mod builtin;
mod format;
mod model;
pub(crate) mod sexpr;
mod validate;

pub use builtin::{builtin_domain, builtin_source, BUILTIN_NAMES};
pub use format::{load_domain, parse_domain, serialize_domain, DomainError};
pub use model::{
    ActionClass, ActionFilter, ActorQuery, Affects, Collection, DerivedRule, DomainModel,
    Persistence, Polarity, PrecondRule, RoleEntry, RoleFiller, SlotName, SuccessorRule,
    DEFAULT_TOUCH_GUARD,
};
pub use sexpr::{Pos, SyntaxError};
pub use validate::{validate_domain, Diagnostic, Severity, INJURY_ACTIONS};
