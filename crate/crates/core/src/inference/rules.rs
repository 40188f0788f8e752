//! The abstract CI rules over placeholders `X`, `Y`, `Z`, `U`.

use std::sync::OnceLock;

use crate::pattern::Pattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleFamily {
    /// Triviality, symmetry and the exchange rule.
    SemiGraphoid,
    /// Two-way rules valid for every polymatroid.
    Equivalence,
    /// One-way rules valid for entropy functions.
    Implication,
}

/// A rule `premises ⇒ conclusions` (both ways when `bidirectional`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceRule {
    pub id: &'static str,
    pub family: RuleFamily,
    pub premises: Vec<Pattern>,
    pub conclusions: Vec<Pattern>,
    pub bidirectional: bool,
}

impl InferenceRule {
    fn new(
        id: &'static str,
        family: RuleFamily,
        premises: &[(&str, &str, &str)],
        conclusions: &[(&str, &str, &str)],
        bidirectional: bool,
    ) -> Self {
        let pats = |v: &[(&str, &str, &str)]| v.iter().map(|&(a, b, c)| Pattern::of(a, b, c)).collect();
        Self {
            id,
            family,
            premises: pats(premises),
            conclusions: pats(conclusions),
            bidirectional,
        }
    }
}

/// All 27 rules: S0–S2, E1–E5, I1–I19.
pub fn rule_table() -> &'static [InferenceRule] {
    static TABLE: OnceLock<Vec<InferenceRule>> = OnceLock::new();
    TABLE.get_or_init(build)
}

/// Looks a rule up by id (`"E4"`, `"I13"`, ...).
pub fn rule(id: &str) -> Option<&'static InferenceRule> {
    rule_table().iter().find(|r| r.id == id)
}

fn build() -> Vec<InferenceRule> {
    use RuleFamily::*;
    let s = |id, p: &[_], c: &[_], both| InferenceRule::new(id, SemiGraphoid, p, c, both);
    let e = |id, p: &[_], c: &[_]| InferenceRule::new(id, Equivalence, p, c, true);
    let i = |id, p: &[_], c: &[_]| InferenceRule::new(id, Implication, p, c, false);
    vec![
        s("S0", &[], &[("", "Y", "Z")], false),
        s("S1", &[("X", "Y", "Z")], &[("Y", "X", "Z")], true),
        s("S2", &[("X", "YZ", "U")], &[("X", "Y", "ZU"), ("X", "Z", "U")], true),
        e(
            "E1",
            &[("X", "Y", "Z"), ("X", "Z", "U"), ("X", "U", "Y")],
            &[("X", "Y", "U"), ("X", "Z", "Y"), ("X", "U", "Z")],
        ),
        e(
            "E2",
            &[("X", "Y", "Z"), ("X", "U", "Y"), ("Y", "Z", "U"), ("Z", "U", "X")],
            &[("X", "Y", "U"), ("X", "U", "Z"), ("Y", "Z", "X"), ("Z", "U", "Y")],
        ),
        e(
            "E3",
            &[("X", "Y", "ZU"), ("X", "Z", ""), ("Y", "U", ""), ("Z", "U", "XY")],
            &[("X", "Y", ""), ("X", "Z", "YU"), ("Y", "U", "XZ"), ("Z", "U", "")],
        ),
        e(
            "E4",
            &[("X", "Y", ""), ("X", "Y", "ZU"), ("Z", "U", "X"), ("Z", "U", "Y")],
            &[("X", "Y", "Z"), ("X", "Y", "U"), ("Z", "U", ""), ("Z", "U", "XY")],
        ),
        e(
            "E5",
            &[("X", "Y", "ZU"), ("X", "U", "Y"), ("Y", "Z", ""), ("Z", "U", "X")],
            &[("X", "Y", "U"), ("X", "U", "YZ"), ("Y", "Z", "X"), ("Z", "U", "")],
        ),
        i("I1", &[("X", "Y", ""), ("X", "Y", "Z"), ("Z", "U", "X"), ("Z", "U", "Y")], &[("Z", "U", "")]),
        i("I2", &[("X", "Y", ""), ("X", "Z", "U"), ("Z", "U", "X"), ("Z", "U", "Y")], &[("Z", "XU", "")]),
        i("I3", &[("X", "Y", ""), ("X", "Y", "U"), ("X", "Z", "U"), ("Z", "U", "Y")], &[("X", "Z", "")]),
        i("I4", &[("X", "Y", ""), ("X", "Z", "U"), ("X", "U", "Z"), ("Z", "U", "Y")], &[("X", "ZU", "")]),
        i("I5", &[("X", "Y", ""), ("X", "Z", "U"), ("Y", "U", "Z"), ("Z", "U", "Y")], &[("X", "Z", "")]),
        i("I6", &[("X", "Y", ""), ("X", "Z", "U"), ("Y", "Z", "U"), ("Z", "U", "Y")], &[("X", "Z", "")]),
        i("I7", &[("X", "Y", ""), ("X", "Y", "Z"), ("X", "Z", "U"), ("Z", "U", "Y")], &[("X", "YZ", "")]),
        i("I8", &[("X", "Y", "Z"), ("X", "Z", "U"), ("Y", "U", "Z"), ("Z", "U", "Y")], &[("X", "Z", "Y")]),
        i("I9", &[("X", "Y", "Z"), ("X", "Y", "U"), ("X", "Z", "U"), ("Z", "U", "Y")], &[("X", "Z", "Y")]),
        i("I10", &[("X", "Y", "Z"), ("X", "Z", "U"), ("X", "U", "Z"), ("Z", "U", "Y")], &[("X", "Z", "Y")]),
        i("I11", &[("X", "Y", "Z"), ("X", "Z", "U"), ("Z", "U", "X"), ("Z", "U", "Y")], &[("X", "Z", "Y")]),
        i("I12", &[("X", "Y", "Z"), ("X", "Z", "U"), ("Y", "Z", "U"), ("Z", "U", "Y")], &[("X", "Z", "Y")]),
        i("I13", &[("X", "Y", ""), ("X", "Y", "Z"), ("X", "Y", "U"), ("Z", "U", "XY")], &[("X", "Y", "ZU")]),
        i("I14", &[("X", "Y", "Z"), ("X", "Y", "U"), ("X", "Z", "U"), ("Z", "U", "XY")], &[("X", "YZ", "U")]),
        i("I15", &[("X", "Y", ""), ("X", "Y", "Z"), ("X", "Z", "U"), ("Z", "U", "XY")], &[("X", "Z", "YU")]),
        i("I16", &[("X", "Y", "Z"), ("X", "Z", "U"), ("Y", "U", "Z"), ("Z", "U", "XY")], &[("X", "Z", "YU")]),
        i("I17", &[("X", "Y", "Z"), ("X", "Z", "U"), ("X", "U", "Z"), ("Z", "U", "XY")], &[("X", "Z", "YU")]),
        i("I18", &[("X", "Y", "Z"), ("X", "Z", "U"), ("Z", "U", "X"), ("Z", "U", "XY")], &[("X", "Z", "YU")]),
        i("I19", &[("X", "Y", "Z"), ("X", "Z", "U"), ("Y", "Z", "U"), ("Z", "U", "XY")], &[("Z", "XY", "U")]),
    ]
}
