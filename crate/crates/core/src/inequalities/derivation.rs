//! Schematic derivations of the implication rules I1–I19 from a
//! conditional Ingleton inequality and a mask form.
//!
//! Linear identities between Δ-expressions are checked by evaluating both
//! sides on every indicator function `δ_T`, `T ⊆ {x, y, z, u}`, with the
//! placeholders sent to distinct singletons. Distinct placeholder unions map
//! to distinct subsets, so agreement on this basis is agreement as formal
//! combinations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ConditionalIngletonRule;
use crate::basic_set::{BasicSet, SubsetMask};
use crate::error::{Error, Result};
use crate::inference::rule;
use crate::pattern::{Assignment, Pattern, Slots};
use crate::report::Report;
use crate::scalar::Rational;
use crate::setfn::{mask_terms, SetFunction};

const BUNDLED: &str = include_str!("../../data/derivations.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPremise {
    pub triplet: String,
    /// One of the two premises of the conditional inequality.
    #[serde(default)]
    pub over: bool,
    /// A vanishing positive term of the mask form.
    #[serde(default)]
    pub under: bool,
}

/// `Δ(conclusion) + Δ(with) = Δ(result)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub with: String,
    pub result: String,
}

/// One derivation record: implication `I<target>` follows from rule `rule`
/// (after `substitution`) and mask form `mask`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationSchema {
    pub target: u8,
    pub rule: u8,
    /// Images of `X, Y, Z, U`, e.g. `"YXUZ"` for the exchanged variants.
    pub substitution: String,
    pub mask: u8,
    pub premises: Vec<MarkedPremise>,
    pub conclusion: String,
    pub extension: Option<Extension>,
}

impl DerivationSchema {
    /// `I3` is derived from rule 2 exchanged: label `cI2`; plain rules are `2cI`.
    pub fn rule_label(&self) -> String {
        if self.substitution == "XYZU" {
            format!("{}cI", self.rule)
        } else {
            format!("cI{}", self.rule)
        }
    }
}

/// The 19 bundled records.
pub fn derivation_schemas() -> Vec<DerivationSchema> {
    serde_json::from_str(BUNDLED).expect("bundled derivations parse")
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedSchema(msg.into())
}

fn pattern(text: &str) -> Result<Pattern> {
    let p: Pattern = text.parse().map_err(|e| malformed(format!("`{text}`: {e}")))?;
    if p.left.is_empty() || p.right.is_empty() || !p.is_disjoint() {
        return Err(malformed(format!("`{text}` is not a triplet of disjoint sets")));
    }
    Ok(p)
}

fn substitution(text: &str) -> Result<[usize; 4]> {
    let letters: Vec<char> = text.chars().collect();
    let mut perm = [0; 4];
    if letters.len() != 4 {
        return Err(malformed(format!("substitution `{text}` needs four letters")));
    }
    for (k, c) in letters.iter().enumerate() {
        let s = Slots::parse(&c.to_string())?;
        if s.0.count_ones() != 1 {
            return Err(malformed(format!("bad letter in substitution `{text}`")));
        }
        perm[k] = s.0.trailing_zeros() as usize;
    }
    let mut seen = perm.to_vec();
    seen.sort_unstable();
    if seen != [0, 1, 2, 3] {
        return Err(malformed(format!("substitution `{text}` is not a permutation")));
    }
    Ok(perm)
}

/// Coefficients of `Σ sign·Δ(term)` on the indicator basis.
fn functional(terms: &[(i64, Pattern)]) -> Vec<Rational> {
    let base = BasicSet::xyzu();
    let a = Assignment::singletons([0, 1, 2, 3]);
    base.subsets()
        .map(|t| {
            let f = SetFunction::<Rational>::indicator(base.clone(), t).expect("subset of the base");
            terms.iter().fold(Rational::from_integer(0.into()), |acc, &(s, p)| {
                acc + Rational::from_integer(s.into()) * f.delta_pattern(p, &a).expect("in range")
            })
        })
        .collect()
}

fn ingleton_functional() -> Vec<Rational> {
    let base = BasicSet::xyzu();
    let [x, y, z, u] = [0, 1, 2, 3].map(SubsetMask::singleton);
    base.subsets()
        .map(|t| {
            SetFunction::<Rational>::indicator(base.clone(), t)
                .and_then(|f| f.ingleton(x, y, z, u))
                .expect("disjoint singletons")
        })
        .collect()
}

fn canonical_set(ps: impl IntoIterator<Item = Pattern>) -> BTreeSet<Pattern> {
    ps.into_iter().map(Pattern::canonical).collect()
}

/// Per-check report for a record; errors only when the record is malformed.
pub fn explain_derivation(s: &DerivationSchema) -> Result<Report> {
    let mut r = Report::new(format!("I{}", s.target));
    if !(1..=5).contains(&s.mask) {
        return Err(malformed(format!("mask {} out of range", s.mask)));
    }
    let base_rule = ConditionalIngletonRule::get(s.rule).map_err(|e| malformed(e.to_string()))?;
    let perm = substitution(&s.substitution)?;
    if s.premises.len() != 4 {
        return Err(malformed(format!("{} premises, expected 4", s.premises.len())));
    }
    let premises = s
        .premises
        .iter()
        .map(|m| Ok((pattern(&m.triplet)?, m.over, m.under)))
        .collect::<Result<Vec<_>>>()?;
    let conclusion = pattern(&s.conclusion)?;

    // (a) the mask form is the Ingleton expression
    let mask: Vec<(i64, Pattern)> = mask_terms(s.mask)?.iter().map(|&(k, p)| (k as i64, p)).collect();
    let ingleton = ingleton_functional();
    r.check("mask identity", functional(&mask) == ingleton, format!("mask {}", s.mask));

    // (b) the overbraced premises are the rule's premises
    let over = canonical_set(premises.iter().filter(|p| p.1).map(|p| p.0));
    let expected = canonical_set(base_rule.premises_under(&perm));
    r.check(
        "rule premises",
        over == expected && premises.iter().filter(|p| p.1).count() == 2,
        format!("{} with {}", s.rule_label(), s.substitution),
    );

    // (c) dropping the mask terms that are premises leaves -Δ(conclusion)
    let all_premises = canonical_set(premises.iter().map(|p| p.0));
    let (dropped, kept): (Vec<_>, Vec<_>) = mask.iter().partition(|(_, p)| all_premises.contains(&p.canonical()));
    let under = canonical_set(premises.iter().filter(|p| p.2).map(|p| p.0));
    let forced = functional(&kept) == functional(&[(-1, conclusion)]);
    let marks_agree = dropped.iter().all(|(k, _)| *k > 0)
        && canonical_set(dropped.iter().map(|(_, p)| *p)) == under
        && premises.iter().all(|p| p.1 || p.2);
    r.check(
        "conclusion forced",
        forced && marks_agree,
        format!("mask {} without {} premise terms is -Δ{conclusion}", s.mask, dropped.len()),
    );

    // (d) the optional strengthening by the chain rule
    let mut final_conclusion = conclusion;
    if let Some(ext) = &s.extension {
        let with = pattern(&ext.with)?;
        let result = pattern(&ext.result)?;
        let lhs = functional(&[(1, conclusion), (1, with)]);
        let among = canonical_set(premises.iter().map(|p| p.0)).contains(&with.canonical());
        r.check(
            "extension",
            lhs == functional(&[(1, result)]) && among,
            format!("Δ{conclusion} + Δ{with} = Δ{result}"),
        );
        final_conclusion = result;
    }

    // the record proves the tabulated implication
    match rule(&format!("I{}", s.target)) {
        Some(ir) => {
            let same_premises = canonical_set(ir.premises.iter().copied()) == canonical_set(premises.iter().map(|p| p.0));
            let same_conclusion = canonical_set(ir.conclusions.iter().copied()) == canonical_set([final_conclusion]);
            r.check(
                "matches the rule table",
                same_premises && same_conclusion,
                format!("I{}", s.target),
            );
        }
        None => return Err(malformed(format!("no implication I{}", s.target))),
    }
    Ok(r)
}

/// Single-field corruptions of a record: next mask, next rule, and a
/// replaced first premise. None of them should verify.
pub fn single_field_mutations(s: &DerivationSchema) -> [DerivationSchema; 3] {
    let mut mask = s.clone();
    mask.mask = s.mask % 5 + 1;
    let mut rule = s.clone();
    rule.rule = s.rule % 5 + 1;
    let mut premise = s.clone();
    if let Some(first) = premise.premises.first_mut() {
        first.triplet = if first.triplet == "(Y,U|X)" { "(X,U|Y)" } else { "(Y,U|X)" }.into();
    }
    [mask, rule, premise]
}

/// True iff every check of [`explain_derivation`] passes.
pub fn verify_derivation(s: &DerivationSchema) -> Result<bool> {
    Ok(explain_derivation(s)?.passed())
}
