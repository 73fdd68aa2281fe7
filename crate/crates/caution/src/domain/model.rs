use crate::sitcalc::{Action, Atom, Condition, Fluent, Sym};

/// `Poss(action_pattern, s) ≡ condition`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecondRule {
    pub action: Action,
    pub condition: Condition,
    /// Extra conditions present only to keep the forward planner on track.
    pub planner_guard: bool,
}

/// A successor-state rule: the fluent holds after the last action iff one of
/// the effect disjuncts holds, or (when `persist` is set) it held before and
/// the action matches none of the `persist` exceptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessorRule {
    pub fluent: Fluent,
    pub effects: Vec<Condition>,
    pub persist: Option<Persistence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Persistence {
    pub unless: Vec<Action>,
}

/// A fluent defined within each situation from other fluents and facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedRule {
    pub fluent: Fluent,
    pub cases: Vec<Condition>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActionClass {
    Reader,
    Device,
    Normal,
    Injury,
}

impl ActionClass {
    pub const ALL: [ActionClass; 4] = [
        ActionClass::Reader,
        ActionClass::Device,
        ActionClass::Normal,
        ActionClass::Injury,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            ActionClass::Reader => "reader",
            ActionClass::Device => "device",
            ActionClass::Normal => "normal",
            ActionClass::Injury => "injury",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        ActionClass::ALL.into_iter().find(|c| c.keyword() == s)
    }
}

/// Which actions a search may choose from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionFilter {
    Normal,
    Injury,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affects {
    pub action: Action,
    pub fluent: Fluent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotName {
    Actor,
    Actee,
    Source,
    Destination,
    ExhaustiveDuration,
    Tense,
    Speechact,
}

impl SlotName {
    /// Canonical slot order of a sentence plan.
    pub const ORDER: [SlotName; 7] = [
        SlotName::Actor,
        SlotName::Actee,
        SlotName::Source,
        SlotName::Destination,
        SlotName::ExhaustiveDuration,
        SlotName::Tense,
        SlotName::Speechact,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            SlotName::Actor => "actor",
            SlotName::Actee => "actee",
            SlotName::Source => "source",
            SlotName::Destination => "destination",
            SlotName::ExhaustiveDuration => "exhaustive-duration",
            SlotName::Tense => "tense",
            SlotName::Speechact => "speechact",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        SlotName::ORDER.into_iter().find(|c| c.keyword() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoleFiller {
    /// 1-based argument position of the action.
    Arg(usize),
    /// The person following the instructions.
    Reader,
    Fixed(Sym),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleEntry {
    pub action: Sym,
    pub slot: SlotName,
    pub filler: RoleFiller,
}

/// Resolves the actor of an argument-less device action by querying the
/// state at its plan position, e.g. what the bread slot contains at pop-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActorQuery {
    pub action: Sym,
    pub query: Fluent,
    pub var: Sym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collection {
    pub trigger: Sym,
    pub label: Sym,
}

/// A declarative device–environment model.
///
/// Every list keeps declaration order; the evaluator and planner depend on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainModel {
    pub name: String,
    pub static_facts: Vec<Atom>,
    pub initial_fluents: Vec<Fluent>,
    pub precond_rules: Vec<PrecondRule>,
    pub successor_rules: Vec<SuccessorRule>,
    pub derived_rules: Vec<DerivedRule>,
    pub classes: Vec<(ActionClass, Sym)>,
    pub affects: Vec<Affects>,
    pub roles: Vec<RoleEntry>,
    pub actor_queries: Vec<ActorQuery>,
    pub polarities: Vec<(Sym, Polarity)>,
    pub collections: Vec<Collection>,
    pub touch_guard_temp: i64,
    pub lexicon: Vec<(Sym, String)>,
    pub goal: Vec<Fluent>,
}

pub const DEFAULT_TOUCH_GUARD: i64 = 20;

impl DomainModel {
    pub fn empty(name: &str) -> Self {
        DomainModel {
            name: name.to_string(),
            static_facts: Vec::new(),
            initial_fluents: Vec::new(),
            precond_rules: Vec::new(),
            successor_rules: Vec::new(),
            derived_rules: Vec::new(),
            classes: Vec::new(),
            affects: Vec::new(),
            roles: Vec::new(),
            actor_queries: Vec::new(),
            polarities: Vec::new(),
            collections: Vec::new(),
            touch_guard_temp: DEFAULT_TOUCH_GUARD,
            lexicon: Vec::new(),
            goal: Vec::new(),
        }
    }

    pub fn is_class(&self, name: &Sym, class: ActionClass) -> bool {
        self.classes.iter().any(|(c, n)| *c == class && n == name)
    }

    pub fn is_reader(&self, name: &Sym) -> bool {
        self.is_class(name, ActionClass::Reader)
    }

    pub fn is_device(&self, name: &Sym) -> bool {
        self.is_class(name, ActionClass::Device)
    }

    pub fn allows(&self, name: &Sym, filter: ActionFilter) -> bool {
        match filter {
            ActionFilter::Normal => self.is_class(name, ActionClass::Normal),
            ActionFilter::Injury => self.is_class(name, ActionClass::Injury),
            ActionFilter::All => true,
        }
    }

    pub fn names_in(&self, class: ActionClass) -> impl Iterator<Item = &Sym> {
        self.classes
            .iter()
            .filter(move |(c, _)| *c == class)
            .map(|(_, n)| n)
    }

    pub fn successor_rule(&self, name: &Sym) -> Option<&SuccessorRule> {
        self.successor_rules.iter().find(|r| &r.fluent.name == name)
    }

    pub fn derived_rule(&self, name: &Sym) -> Option<&DerivedRule> {
        self.derived_rules.iter().find(|r| &r.fluent.name == name)
    }

    pub fn facts_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Atom> + 'a {
        self.static_facts
            .iter()
            .filter(move |f| f.name.as_str() == name)
    }

    pub fn has_fact(&self, name: &str, args: &[&str]) -> bool {
        self.facts_named(name).any(|f| {
            f.args.len() == args.len()
                && f.args.iter().zip(args).all(|(t, a)| t.to_string() == *a)
        })
    }

    pub fn roles_of<'a>(&'a self, action: &'a Sym) -> impl Iterator<Item = &'a RoleEntry> + 'a {
        self.roles.iter().filter(move |r| &r.action == action)
    }

    pub fn role(&self, action: &Sym, slot: SlotName) -> Option<&RoleFiller> {
        self.roles
            .iter()
            .find(|r| &r.action == action && r.slot == slot)
            .map(|r| &r.filler)
    }

    pub fn actor_query(&self, action: &Sym) -> Option<&ActorQuery> {
        self.actor_queries.iter().find(|q| &q.action == action)
    }

    pub fn polarity(&self, action: &Sym) -> Polarity {
        self.polarities
            .iter()
            .find(|(a, _)| a == action)
            .map(|(_, p)| *p)
            .unwrap_or(Polarity::Positive)
    }

    pub fn collection_label(&self, action: &Sym) -> Option<&Sym> {
        self.collections
            .iter()
            .find(|c| &c.trigger == action)
            .map(|c| &c.label)
    }

    pub fn lexeme(&self, symbol: &Sym) -> Option<&str> {
        self.lexicon
            .iter()
            .find(|(s, _)| s == symbol)
            .map(|(_, l)| l.as_str())
    }

    pub fn is_indicator(&self, component: &Sym) -> bool {
        self.has_fact("indicator", &[component.as_str()])
    }
}
