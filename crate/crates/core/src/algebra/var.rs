use std::collections::HashMap;
use std::fmt;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::AlgebraError;

/// Whether a variable is a coordinate along the fibers (differentiated by the
/// relative differential) or a parameter of the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Fiber,
    Parameter,
}

/// An interned polynomial variable. Cheap to copy and compare.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

struct Interner {
    names: Vec<(String, VarKind)>,
    ids: HashMap<String, u32>,
}

static INTERNER: Lazy<RwLock<Interner>> = Lazy::new(|| {
    RwLock::new(Interner {
        names: Vec::new(),
        ids: HashMap::new(),
    })
});

impl Var {
    /// Interns `name` with the given tag. Re-interning with the same tag returns
    /// the same variable; a different tag is an error.
    pub fn new(name: &str, kind: VarKind) -> Result<Var, AlgebraError> {
        if let Some(&id) = INTERNER.read().ids.get(name) {
            return Var::check(id, name, kind);
        }
        let mut table = INTERNER.write();
        if let Some(&id) = table.ids.get(name) {
            drop(table);
            return Var::check(id, name, kind);
        }
        let id = table.names.len() as u32;
        table.names.push((name.to_string(), kind));
        table.ids.insert(name.to_string(), id);
        Ok(Var(id))
    }

    fn check(id: u32, name: &str, kind: VarKind) -> Result<Var, AlgebraError> {
        let existing = INTERNER.read().names[id as usize].1;
        if existing != kind {
            return Err(AlgebraError::TagConflict {
                name: name.to_string(),
                existing,
                requested: kind,
            });
        }
        Ok(Var(id))
    }

    /// Fiber variable; panics on a tag conflict.
    pub fn fiber(name: &str) -> Var {
        Var::new(name, VarKind::Fiber).expect("fiber variable")
    }

    /// Parameter variable; panics on a tag conflict.
    pub fn parameter(name: &str) -> Var {
        Var::new(name, VarKind::Parameter).expect("parameter variable")
    }

    pub fn lookup(name: &str) -> Option<Var> {
        INTERNER.read().ids.get(name).map(|&id| Var(id))
    }

    pub fn name(self) -> String {
        INTERNER.read().names[self.0 as usize].0.clone()
    }

    pub fn kind(self) -> VarKind {
        INTERNER.read().names[self.0 as usize].1
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_idempotent() {
        assert_eq!(Var::fiber("var_test_a"), Var::fiber("var_test_a"));
        assert_ne!(Var::fiber("var_test_a"), Var::fiber("var_test_b"));
        assert_eq!(Var::fiber("var_test_a").name(), "var_test_a");
    }

    #[test]
    fn retagging_is_rejected() {
        Var::parameter("var_test_p");
        assert!(matches!(
            Var::new("var_test_p", VarKind::Fiber),
            Err(AlgebraError::TagConflict { .. })
        ));
    }
}
