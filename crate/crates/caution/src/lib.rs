//! Situation-calculus planning and warning-instruction generation.

pub mod domain;
pub mod interpret;
pub mod pipeline;
pub mod planner;
pub mod realize;
pub mod sitcalc;
pub mod spl;
pub mod weaver;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/situations.md")]
mod situations_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/domains.md")]
mod domains_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/planning.md")]
mod planning_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/interpretation.md")]
mod interpretation_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/sentence-plans.md")]
mod sentence_plans_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod cli_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/toaster-axioms.md")]
mod toaster_axioms_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
