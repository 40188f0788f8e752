//! CI inference over four variables: rule tables, ground instances,
//! closure, exhaustive enumeration and the meet semilattice.

mod enumerate;
mod ground;
mod lattice;
mod rules;

pub use enumerate::{enumerate, EnumerateOptions, Enumeration};
pub use ground::{closure, ground_rules, instances, is_closed, Engine, GroundRule, RuleSet};
pub use lattice::{is_coatom, is_meet_irreducible, meet_closure};
pub use rules::{rule, rule_table, InferenceRule, RuleFamily};

/// Number of ground rules over four variables after deduplication.
pub const GROUND_RULES_SEMI_GRAPHOID: usize = 48;

/// Number of ground rules for all 27 rules over four variables.
pub const GROUND_RULES_ALL: usize = 500;

#[cfg(test)]
mod tests;
