//! The end-to-end run and its trace rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::domain::DomainModel;
use crate::interpret::{make_interpretations, InterpretedPlan};
use crate::planner::{index_actions, plan_normal, IndexedPlan, PlanError};
use crate::realize::{realize_plan, RealizeError};
use crate::sitcalc::{Action, EvalError, Situation};
use crate::spl::{make_spl, write_spl, SplError, SplNode};
use crate::weaver::{injury_points, merge_injuries, InjuryPoint, WeaveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Plan,
    Points,
    Merged,
    Interpret,
    Spl,
    Text,
    Trace,
}

impl Stage {
    pub const ALL: [Stage; 7] = [
        Stage::Plan,
        Stage::Points,
        Stage::Merged,
        Stage::Interpret,
        Stage::Spl,
        Stage::Text,
        Stage::Trace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Plan => "plan",
            Stage::Points => "points",
            Stage::Merged => "merged",
            Stage::Interpret => "interpret",
            Stage::Spl => "spl",
            Stage::Text => "text",
            Stage::Trace => "trace",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown stage `{0}`")]
pub struct UnknownStage(pub String);

impl FromStr for Stage {
    type Err = UnknownStage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| UnknownStage(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("planning failed: {0}")]
    Plan(#[from] PlanError),
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Weave(#[from] WeaveError),
    #[error("sentence planning failed: {0}")]
    Spl(#[from] SplError),
    #[error("realization failed: {0}")]
    Realize(#[from] RealizeError),
}

/// Everything a run produced, up to the stage it stopped at.
#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub plan: Vec<Action>,
    pub indexed: IndexedPlan,
    pub points: Vec<InjuryPoint>,
    pub merged: IndexedPlan,
    pub interpreted: InterpretedPlan,
    pub nodes: Vec<SplNode>,
    pub spl: String,
    pub sentences: Vec<String>,
}

/// Runs plan → points → merge → interpret → SPL → text, stopping after
/// `until`. The trace stage runs everything.
pub fn run(domain: &DomainModel, until: Stage, max_depth: usize) -> Result<Artifacts, PipelineError> {
    let mut out = Artifacts {
        plan: plan_normal(domain, &domain.goal, &Situation::s0(), max_depth)?,
        ..Artifacts::default()
    };
    out.indexed = index_actions(&out.plan);
    if until == Stage::Plan {
        return Ok(out);
    }
    out.points = injury_points(domain, &out.indexed, max_depth)?;
    if until == Stage::Points {
        return Ok(out);
    }
    out.merged = merge_injuries(&out.indexed, &out.points)?;
    if until == Stage::Merged {
        return Ok(out);
    }
    out.interpreted = make_interpretations(domain, &out.merged);
    if until == Stage::Interpret {
        return Ok(out);
    }
    out.nodes = make_spl(&out.interpreted, domain)?;
    out.spl = write_spl(&out.nodes);
    if until == Stage::Spl {
        return Ok(out);
    }
    out.sentences = realize_plan(&out.nodes, &domain.lexicon)?;
    Ok(out)
}

fn list<T>(items: &[T], mut f: impl FnMut(&T) -> String) -> String {
    let parts: Vec<String> = items.iter().map(&mut f).collect();
    format!("[{}]", parts.join(","))
}

fn actions(a: &[Action]) -> String {
    list(a, |x| x.to_string())
}

pub fn format_plan(plan: &[Action]) -> String {
    Situation::from_actions(plan.to_vec()).to_string()
}

pub fn format_index(plan: &IndexedPlan) -> String {
    let parts: Vec<String> = plan.entries.iter().map(|(i, _)| format!("[{i}]")).collect();
    parts.join(" ")
}

pub fn format_points(points: &[InjuryPoint]) -> String {
    list(points, |p| format!("({},{})", p.index, actions(&p.suffix)))
}

pub fn format_indexed(plan: &IndexedPlan) -> String {
    list(&plan.entries, |(i, a)| format!("({i},{})", actions(a)))
}

pub fn format_interpretations(plan: &InterpretedPlan) -> String {
    list(&plan.entries, |(i, a)| format!("({i},{a})"))
}

pub fn format_patterns(plan: &InterpretedPlan) -> String {
    list(&plan.patterns, |p| format!("({},{})", p.index, p.label))
}

/// The run transcript: labelled sections in the order the stages run.
pub fn format_trace(a: &Artifacts) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "GOAL STATE: {}", format_plan(&a.plan));
    let _ = writeln!(o, "Inserting injuries...");
    let _ = writeln!(o, "INDEX: {}", format_index(&a.indexed));
    let _ = writeln!(o, "POINTS: {}", format_points(&a.points));
    let _ = writeln!(o, "WITH INJURIES: {}", format_indexed(&a.merged));
    let _ = writeln!(o, "Making interpretations...");
    let _ = writeln!(o, "INTERPRETATIONS: {}", format_interpretations(&a.interpreted));
    let _ = writeln!(o, "PATTERNS: {}", format_patterns(&a.interpreted));
    let _ = writeln!(o, "Making SPL...");
    let _ = writeln!(o, "Done.");
    o
}
