use crate::automata::{Automaton, OutputAutomaton};
use crate::error::{Error, Result};
use crate::logic::{parse_script, Entry, Library, Script, StatementReport};
use crate::restivo::{builtin_env, lookup_library, LOOKUP_SCRIPT};

pub const OVERLAP_SCRIPT: &str = include_str!("../../scripts/overlap.wal");
pub const LEXLEAST_SCRIPT: &str = include_str!("../../scripts/lexleast.wal");
pub const POWER73_SCRIPT: &str = include_str!("../../scripts/power73.wal");
pub const SQUARES_SCRIPT: &str = include_str!("../../scripts/squares.wal");
pub const ENUMERATION_SCRIPT: &str = include_str!("../../scripts/enumeration.wal");

/// Every entry of the catalog, in dependency order.
pub const CATALOG: &[&str] = &[
    "hasover", "ovlf", "good", "ovlfg", "agrees", "ispref", "min", "lexlt", "lexlte", "lexleast",
    "prefixc", "lastnzcode", "tmagree", "changebits", "avoid73", "avoid73g", "two1",
    "large_overl", "has_square", "squ", "squ3", "squ3b", "squ4g", "squaresin", "squr3", "squr3b",
    "squr4g", "fourthr", "maxexp", "prefixequal", "mincode", "minmat",
];

/// Entries that need the heavy opt-in.
pub const HEAVY: &[&str] = &["lexleast"];

/// The lookup listing plus every application listing, built lazily.
#[derive(Clone, Debug)]
pub struct Catalog {
    lib: Library,
    allow_heavy: bool,
}

impl Catalog {
    pub fn new(allow_heavy: bool) -> Self {
        Self::build_library(lookup_library(), allow_heavy)
    }

    /// A catalog whose own definitions take precedence over the listings.
    pub fn with_script(script: &Script, allow_heavy: bool) -> Self {
        let mut lib = Library::new(builtin_env());
        lib.add_script(script);
        lib.add_script(&parse_script(LOOKUP_SCRIPT).expect("lookup listing parses"));
        Self::build_library(lib, allow_heavy)
    }

    fn build_library(mut lib: Library, allow_heavy: bool) -> Self {
        for text in [
            OVERLAP_SCRIPT,
            LEXLEAST_SCRIPT,
            POWER73_SCRIPT,
            SQUARES_SCRIPT,
            ENUMERATION_SCRIPT,
        ] {
            lib.add_script(&parse_script(text).expect("catalog listings parse"));
        }
        Catalog { lib, allow_heavy }
    }

    pub fn library(&self) -> &Library {
        &self.lib
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lib.statement(name).is_some() || self.lib.env().contains(name)
    }

    /// Fails for unknown names, and for heavy ones without the opt-in.
    pub fn gate(&self, name: &str) -> Result<()> {
        if !self.contains(name) {
            return Err(Error::UnknownEntry(name.to_string()));
        }
        if !self.allow_heavy {
            if let Some(h) = self.lib.closure(name)?.iter().find(|n| HEAVY.contains(&n.as_str())) {
                return Err(Error::HeavyRefused(h.clone()));
            }
        }
        Ok(())
    }

    pub fn build(&mut self, name: &str) -> Result<&Entry> {
        self.gate(name)?;
        self.lib.build(name)
    }

    pub fn build_with(&mut self, name: &str, progress: &mut dyn FnMut(&StatementReport)) -> Result<&Entry> {
        self.gate(name)?;
        self.lib.build_with(name, progress)?;
        self.lib.build(name)
    }

    pub fn acceptor(&mut self, name: &str) -> Result<Automaton> {
        match self.build(name)? {
            Entry::Acceptor(a) => Ok(a.clone()),
            Entry::Output(_) => Err(Error::Invalid(format!("`{name}` has outputs"))),
        }
    }

    pub fn output(&mut self, name: &str) -> Result<OutputAutomaton> {
        match self.build(name)? {
            Entry::Output(o) => Ok(o.clone()),
            Entry::Acceptor(_) => Err(Error::Invalid(format!("`{name}` is an acceptor"))),
        }
    }

    pub fn eval(&mut self, name: &str) -> Result<bool> {
        self.gate(name)?;
        self.lib.eval(name)
    }

    pub fn is_eval(&self, name: &str) -> bool {
        matches!(
            self.lib.statement(name).map(|s| &s.kind),
            Some(crate::logic::StatementKind::Eval { .. })
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_entry_exists() {
        let c = Catalog::new(false);
        for name in CATALOG {
            assert!(c.contains(name), "{name}");
        }
    }

    #[test]
    fn heavy_entries_are_gated() {
        let mut c = Catalog::new(false);
        assert!(matches!(c.build("lexleast"), Err(Error::HeavyRefused(_))));
        assert!(matches!(c.build("nope"), Err(Error::UnknownEntry(_))));
    }
}
