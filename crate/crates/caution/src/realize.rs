//! Template-based English realization of sentence plans.

use crate::domain::SlotName;
use crate::spl::{Filler, SplNode};
use crate::sitcalc::Sym;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("no verb template for `{0}`")]
    MissingTemplate(String),
    #[error("no lexicon entry for `{0}`")]
    MissingLexeme(String),
    #[error("template for `{process}` needs the {slot} slot")]
    MissingSlot { process: String, slot: &'static str },
    #[error("sentence {index}: {source}")]
    InSentence {
        index: usize,
        #[source]
        source: Box<RealizeError>,
    },
}

/// Verb-phrase templates. `{slot}` holes take the slot's noun phrase.
pub const TEMPLATES: [(&str, &str); 13] = [
    ("insert", "insert {actee} into {destination}"),
    ("remove", "take {actee} out of {source}"),
    ("press", "press {actee}"),
    ("touch", "touch {actee}"),
    ("pop_up", "pop up"),
    ("raise_temp", "heat {actee}"),
    ("attach", "attach {actee} to {destination}"),
    ("pour", "pour {actee} into {destination}"),
    ("open", "open {actee}"),
    ("close", "close {actee}"),
    ("steamify", "fill {actee} with steam"),
    ("flash", "flash"),
    ("slice", "cut {actee} from {source}"),
];

pub fn template(process: &str) -> Option<&'static str> {
    TEMPLATES
        .iter()
        .find(|(p, _)| *p == process)
        .map(|(_, t)| *t)
}

fn lexeme<'a>(lexicon: &'a [(Sym, String)], head: &Sym) -> Result<&'a str, RealizeError> {
    lexicon
        .iter()
        .find(|(s, _)| s == head)
        .map(|(_, l)| l.as_str())
        .ok_or_else(|| RealizeError::MissingLexeme(head.to_string()))
}

fn noun_phrase(lexicon: &[(Sym, String)], f: &Filler) -> Result<String, RealizeError> {
    match f {
        Filler::Entity { head, .. } => Ok(format!("the {}", lexeme(lexicon, head)?)),
        Filler::Hearer => Ok("you".to_string()),
        Filler::Plain(s) => Ok(s.to_string()),
    }
}

/// One sentence: capitalized and period-terminated.
pub fn realize(node: &SplNode, lexicon: &[(Sym, String)]) -> Result<String, RealizeError> {
    let process = node.process.as_str();
    let tpl = template(process).ok_or_else(|| RealizeError::MissingTemplate(process.to_string()))?;
    let mut vp = String::new();
    let mut rest = tpl;
    while let Some(open) = rest.find('{') {
        vp.push_str(&rest[..open]);
        let close = open + rest[open..].find('}').expect("template holes are closed");
        let name = &rest[open + 1..close];
        let slot = SlotName::from_keyword(name).expect("template holes name slots");
        let filler = node.slot(slot).ok_or(RealizeError::MissingSlot {
            process: process.to_string(),
            slot: slot.keyword(),
        })?;
        vp.push_str(&noun_phrase(lexicon, filler)?);
        rest = &rest[close + 1..];
    }
    vp.push_str(rest);
    if let Some(f) = node.slot(SlotName::ExhaustiveDuration) {
        vp.push_str(" during ");
        vp.push_str(&noun_phrase(lexicon, f)?);
    }
    let body = match node.plain(SlotName::Speechact) {
        Some("neg-imperative") => format!("do not {vp}"),
        Some("assertion") => {
            let actor = match node.slot(SlotName::Actor) {
                Some(f) => noun_phrase(lexicon, f)?,
                None => "it".to_string(),
            };
            let aux = if node.plain(SlotName::Tense) == Some("future") {
                "will"
            } else {
                "does"
            };
            format!("{actor} {aux} {vp}")
        }
        _ => vp,
    };
    Ok(format!("{}.", capitalize(&body)))
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Realizes every node, stopping at the first failure.
pub fn realize_plan(nodes: &[SplNode], lexicon: &[(Sym, String)]) -> Result<Vec<String>, RealizeError> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            realize(n, lexicon).map_err(|e| RealizeError::InSentence {
                index: i + 1,
                source: Box::new(e),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Vec<(Sym, String)> {
        [("bread_slot", "toaster's bread slot"), ("heating_period", "heating period"), ("bread_slice", "bread slice")]
            .into_iter()
            .map(|(s, l)| (Sym::new(s), l.to_string()))
            .collect()
    }

    fn entity(id: usize, head: &str) -> Filler {
        Filler::Entity {
            id,
            head: Sym::new(head),
        }
    }

    fn plain(s: &str) -> Filler {
        Filler::Plain(Sym::new(s))
    }

    #[test]
    fn warning_sentence() {
        let node = SplNode {
            id: 6,
            process: Sym::new("touch"),
            slots: vec![
                (SlotName::Actor, Filler::Hearer),
                (SlotName::Actee, entity(7, "bread_slot")),
                (SlotName::ExhaustiveDuration, entity(8, "heating_period")),
                (SlotName::Tense, plain("present")),
                (SlotName::Speechact, plain("neg-imperative")),
            ],
        };
        assert_eq!(
            realize(&node, &lex()).unwrap(),
            "Do not touch the toaster's bread slot during the heating period."
        );
    }

    #[test]
    fn device_assertion() {
        let node = SplNode {
            id: 9,
            process: Sym::new("pop_up"),
            slots: vec![
                (SlotName::Actor, entity(10, "bread_slice")),
                (SlotName::Tense, plain("future")),
                (SlotName::Speechact, plain("assertion")),
            ],
        };
        assert_eq!(realize(&node, &lex()).unwrap(), "The bread slice will pop up.");
    }

    #[test]
    fn errors() {
        let mut node = SplNode {
            id: 1,
            process: Sym::new("juggle"),
            slots: vec![],
        };
        assert_eq!(
            realize(&node, &lex()),
            Err(RealizeError::MissingTemplate("juggle".into()))
        );
        node.process = Sym::new("press");
        node.slots = vec![(SlotName::Actee, entity(2, "on_lever"))];
        assert_eq!(
            realize(&node, &lex()),
            Err(RealizeError::MissingLexeme("on_lever".into()))
        );
        assert!(realize_plan(&[], &lex()).unwrap().is_empty());
    }
}
