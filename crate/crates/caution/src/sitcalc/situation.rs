use std::fmt;

use super::term::Action;

/// A history of actions from the initial situation. Element `i` is the
/// `(i+1)`-th action performed.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Situation {
    actions: Vec<Action>,
}

impl Situation {
    /// The initial situation.
    pub fn s0() -> Self {
        Situation::default()
    }

    pub fn from_actions(actions: Vec<Action>) -> Self {
        debug_assert!(actions.iter().all(Action::is_ground));
        Situation { actions }
    }

    /// `do(a, s)`.
    pub fn after(&self, action: Action) -> Self {
        let mut actions = self.actions.clone();
        actions.push(action);
        Situation { actions }
    }

    pub fn push(&mut self, action: Action) {
        self.actions.push(action);
    }

    pub fn pop(&mut self) -> Option<Action> {
        self.actions.pop()
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn last(&self) -> Option<&Action> {
        self.actions.last()
    }

    /// The situation made of the first `n` actions.
    pub fn prefix(&self, n: usize) -> Situation {
        Situation {
            actions: self.actions[..n].to_vec(),
        }
    }

    pub fn into_actions(self) -> Vec<Action> {
        self.actions
    }
}

/// Nested rendering, innermost first: `do(b,do(a,s0))`.
impl fmt::Display for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.actions.iter().rev() {
            write!(f, "do({a},")?;
        }
        f.write_str("s0")?;
        for _ in &self.actions {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
