//! Terms, atoms, bindings and one-way matching.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// An interned-by-refcount identifier. Cheap to clone, compared by content.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(s: &str) -> Self {
        Sym(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Sym {
    fn from(s: &str) -> Self {
        Sym::new(s)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The anonymous variable. It matches anything and never binds.
pub const WILDCARD: &str = "_";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Sym(Sym),
    Int(i64),
    Var(Sym),
}

impl Term {
    pub fn sym(s: &str) -> Self {
        Term::Sym(Sym::new(s))
    }

    pub fn var(s: &str) -> Self {
        Term::Var(Sym::new(s))
    }

    pub fn is_ground(&self) -> bool {
        !matches!(self, Term::Var(_))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Term::Int(v) => Some(*v),
            _ => None,
        }
    }

    /// Parses one term token: integers, variables (uppercase or `_` initial)
    /// and symbols.
    pub fn from_token(tok: &str) -> Term {
        if let Ok(v) = tok.parse::<i64>() {
            return Term::Int(v);
        }
        match tok.chars().next() {
            Some(c) if c.is_ascii_uppercase() || c == '_' => Term::var(tok),
            _ => Term::sym(tok),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Sym(s) | Term::Var(s) => write!(f, "{s}"),
            Term::Int(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A named predicate over terms. Fluents and actions share this shape.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub name: Sym,
    pub args: Vec<Term>,
}

pub type Fluent = Atom;
pub type Action = Atom;

impl Atom {
    pub fn new(name: &str, args: Vec<Term>) -> Self {
        Atom {
            name: Sym::new(name),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Sym> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) if v.as_str() != WILDCARD => Some(v),
            _ => None,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse atom `{0}`")]
pub struct AtomParseError(pub String);

/// Prolog-style syntax: `contains(Y,X)`, `burned`, `temperature(bread_slot,20)`.
impl FromStr for Atom {
    type Err = AtomParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || AtomParseError(s.to_string());
        let (name, args) = match s.find('(') {
            None => (s, Vec::new()),
            Some(open) => {
                let inner = s[open + 1..].strip_suffix(')').ok_or_else(err)?;
                let args = inner
                    .split(',')
                    .map(|a| a.trim())
                    .map(|a| {
                        if a.is_empty() || a.contains(['(', ')']) {
                            Err(err())
                        } else {
                            Ok(Term::from_token(a))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (&s[..open], args)
            }
        };
        let valid = !name.is_empty()
            && name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if !valid {
            return Err(err());
        }
        Ok(Atom::new(name, args))
    }
}

/// Parses a Prolog-style atom, panicking on malformed input. For fixtures.
pub fn atom(s: &str) -> Atom {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}

/// Variable assignments. A variable is bound at most once.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Binding(BTreeMap<Sym, Term>);

impl Binding {
    pub fn new() -> Self {
        Binding(BTreeMap::new())
    }

    pub fn get(&self, var: &Sym) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Sym, &Term)> {
        self.0.iter()
    }

    /// Binds `var` to a ground `value`. Returns false on a conflicting
    /// rebinding; binding the wildcard is a no-op.
    pub fn bind(&mut self, var: &Sym, value: &Term) -> bool {
        debug_assert!(value.is_ground());
        if var.as_str() == WILDCARD {
            return true;
        }
        match self.0.get(var) {
            Some(existing) => existing == value,
            None => {
                self.0.insert(var.clone(), value.clone());
                true
            }
        }
    }

    pub fn resolve(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.0.get(v).cloned().unwrap_or_else(|| t.clone()),
            _ => t.clone(),
        }
    }

    pub fn apply(&self, a: &Atom) -> Atom {
        Atom {
            name: a.name.clone(),
            args: a.args.iter().map(|t| self.resolve(t)).collect(),
        }
    }

    /// Keeps only the given variables.
    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a Sym>) -> Binding {
        let mut out = Binding::new();
        for v in vars {
            if let Some(t) = self.0.get(v) {
                out.0.insert(v.clone(), t.clone());
            }
        }
        out
    }
}

impl fmt::Debug for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}->{v}")?;
        }
        f.write_str("}")
    }
}

impl<const N: usize> From<[(&str, Term); N]> for Binding {
    fn from(pairs: [(&str, Term); N]) -> Self {
        let mut b = Binding::new();
        for (k, v) in pairs {
            assert!(b.bind(&Sym::new(k), &v), "conflicting fixture binding");
        }
        b
    }
}

/// One-way matching of `pattern` against the ground atom `ground`, extending
/// `binding`. `None` on name/arity mismatch or a conflicting binding.
pub fn match_atom(pattern: &Atom, ground: &Atom, binding: &Binding) -> Option<Binding> {
    if pattern.name != ground.name || pattern.args.len() != ground.args.len() {
        return None;
    }
    let mut out = binding.clone();
    for (p, g) in pattern.args.iter().zip(&ground.args) {
        debug_assert!(g.is_ground(), "ground side contains a variable");
        match p {
            Term::Var(v) => match out.get(v) {
                Some(bound) if bound != g => return None,
                Some(_) => {}
                None => {
                    out.bind(v, g);
                }
            },
            _ if p == g => {}
            _ => return None,
        }
    }
    Some(out)
}

/// True iff some extension of `binding` lets `pattern` match `ground`.
pub fn can_match(pattern: &Atom, ground: &Atom, binding: &Binding) -> bool {
    match_atom(pattern, ground, binding).is_some()
}

/// Unification of two patterns whose variables live in separate scopes.
pub fn unifiable(left: &Atom, right: &Atom) -> bool {
    if left.name != right.name || left.args.len() != right.args.len() {
        return false;
    }
    let mut lb = Binding::new();
    let mut rb = Binding::new();
    for (l, r) in left.args.iter().zip(&right.args) {
        let l = lb.resolve(l);
        let r = rb.resolve(r);
        match (&l, &r) {
            (Term::Var(_), Term::Var(_)) => {}
            (Term::Var(v), g) => {
                lb.bind(v, g);
            }
            (g, Term::Var(v)) => {
                rb.bind(v, g);
            }
            _ if l == r => {}
            _ => return false,
        }
    }
    true
}
