//! The shipped domains, stored as domain files.

use super::format::{load_domain, DomainError};
use super::model::DomainModel;

pub const BUILTIN_NAMES: [&str; 3] = ["toaster", "breadmaker", "combined"];

/// The source text of a built-in domain.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    match name {
        "toaster" => Some(include_str!("builtin/toaster.dom")),
        "breadmaker" => Some(include_str!("builtin/breadmaker.dom")),
        "combined" => Some(include_str!("builtin/combined.dom")),
        _ => None,
    }
}

pub fn builtin_domain(name: &str) -> Result<DomainModel, DomainError> {
    let text = builtin_source(name).ok_or_else(|| DomainError::UnknownDomain(name.to_string()))?;
    load_domain(text)
}
