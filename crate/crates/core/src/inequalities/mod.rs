//! The five conditional Ingleton inequalities, the counterexamples showing
//! which premise sets do not suffice, and the derivation records behind the
//! implication rules.

mod derivation;
mod sampling;

use serde::Serialize;

use crate::basic_set::SubsetMask;
use crate::catalog;
use crate::dist::JointDistribution;
use crate::error::{Error, Result};
use crate::pattern::{Assignment, Pattern};
use crate::report::Report;
use crate::scalar::ratio;
use crate::setfn::mask_terms;

pub use derivation::{
    derivation_schemas, explain_derivation, single_field_mutations, verify_derivation, DerivationSchema, Extension, MarkedPremise,
};
pub use sampling::{check_rule_on_samples, sample_enforcing, SampleSummary};

/// Tolerance for "the inequality holds" on float entropies.
pub const INGLETON_TOL: f64 = 1e-9;

/// Exchange `[X,Z] <-> [Y,U]` as a placeholder substitution.
pub const SWAP: [usize; 4] = [1, 0, 3, 2];

/// `□(X,Y) >= 0` whenever both premises hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionalIngletonRule {
    pub id: u8,
    pub premises: [Pattern; 2],
}

impl ConditionalIngletonRule {
    pub fn get(id: u8) -> Result<Self> {
        let p = Pattern::of;
        let premises = match id {
            1 => [p("X", "Y", ""), p("X", "Y", "Z")],
            2 => [p("X", "Y", "Z"), p("Y", "U", "Z")],
            3 => [p("X", "Z", "U"), p("X", "U", "Z")],
            4 => [p("X", "Z", "U"), p("Z", "U", "X")],
            5 => [p("X", "Z", "U"), p("Y", "Z", "U")],
            _ => return Err(Error::Parse(format!("conditional Ingleton rule id must be in 1..=5, got {id}"))),
        };
        Ok(Self { id, premises })
    }

    pub fn all() -> [Self; 5] {
        [1, 2, 3, 4, 5].map(|k| Self::get(k).expect("valid id"))
    }

    /// Premises after renaming placeholders (`perm[k]` is the image of slot `k`).
    pub fn premises_under(&self, perm: &[usize; 4]) -> [Pattern; 2] {
        self.premises.map(|p| p.substitute(perm))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IngletonCheck {
    pub premises_hold: bool,
    pub ingleton_value: f64,
}

impl IngletonCheck {
    /// False only when the premises hold and the value is clearly negative.
    pub fn consistent(&self) -> bool {
        !self.premises_hold || self.ingleton_value >= -INGLETON_TOL
    }
}

fn check_assignment(p: &JointDistribution, a: &Assignment) -> Result<()> {
    for &m in &a.0 {
        if !m.is_subset_of(p.space().full()) {
            return Err(Error::MaskOutOfRange {
                mask: m.0,
                size: p.size(),
            });
        }
        if m.is_empty() {
            return Err(Error::NotDisjoint);
        }
    }
    if !a.is_disjoint() {
        return Err(Error::NotDisjoint);
    }
    Ok(())
}

/// Exact premise test plus the float Ingleton value under `a`.
pub fn check_premises(p: &JointDistribution, premises: &[Pattern], a: &Assignment) -> Result<IngletonCheck> {
    check_assignment(p, a)?;
    let mut premises_hold = true;
    for &q in premises {
        let (l, r, c) = q.apply(a);
        premises_hold &= p.is_ci(l, r, c)?;
    }
    let [x, y, z, u] = a.0;
    let ingleton_value = p.entropy_function()?.ingleton(x, y, z, u)?;
    Ok(IngletonCheck {
        premises_hold,
        ingleton_value,
    })
}

pub fn check_conditional_ingleton(
    p: &JointDistribution,
    rule: &ConditionalIngletonRule,
    a: &Assignment,
) -> Result<IngletonCheck> {
    check_premises(p, &rule.premises, a)
}

fn xyzu_assignment() -> Assignment {
    Assignment::singletons([0, 1, 2, 3])
}

/// Value of one mask form on a counterexample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaskValue {
    pub mask: u8,
    pub value: f64,
    /// The subtracted Δ-term and its value.
    pub negated_term: String,
    pub negated_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub id: u8,
    pub ingleton: f64,
    pub masks: Vec<MaskValue>,
    pub report: Report,
}

/// Required margin below zero for the Ingleton expression.
pub fn counterexample_margin(id: u8) -> f64 {
    if id == 5 {
        1e-3 / 16.0
    } else {
        1e-3
    }
}

/// `32 ln 2 + 30 ln 3 - 10 ln 5 + 7 ln 7 - 22 ln 11`, sixteen times the
/// Ingleton expression of the fifth counterexample.
pub fn example_five_closed_form() -> f64 {
    let l = |v: f64| v.ln();
    32.0 * l(2.0) + 30.0 * l(3.0) - 10.0 * l(5.0) + 7.0 * l(7.0) - 22.0 * l(11.0)
}

/// Checks a counterexample from the catalog: its CI statements (exactly),
/// and a negative Ingleton expression through its mask forms.
pub fn verify_counterexample(id: u8) -> Result<CounterexampleReport> {
    if !(1..=5).contains(&id) {
        return Err(Error::UnknownCatalogId(format!("EX{id}")));
    }
    let entry = catalog::get(&format!("EX{id}"))?;
    let p = entry.distribution.as_ref().expect("counterexamples carry a distribution");
    let claimed = entry.claimed_statements.as_ref().expect("counterexamples carry claims");
    let mut r = Report::new(format!("EX{id}"));
    for t in claimed.triplets() {
        let (x, y, z) = t.masks();
        let holds = p.is_ci(x, y, z)?;
        r.check(format!("holds {}", t.render(claimed.base())), holds, "exact");
    }
    let h = p.entropy_function()?;
    let a = xyzu_assignment();
    let [x, y, z, u] = a.0;
    let ingleton = h.ingleton(x, y, z, u)?;
    let margin = counterexample_margin(id);
    r.check("negative", ingleton < -margin, format!("□ = {ingleton:.9}, margin {margin:e}"));
    let mut masks = Vec::new();
    for &k in &entry.masks {
        let value = h.mask_form(k, x, y, z, u)?;
        r.check(
            format!("mask {k} equals the Ingleton expression"),
            (value - ingleton).abs() <= INGLETON_TOL,
            format!("{value:.12}"),
        );
        let mut negated = None;
        for (sign, q) in mask_terms(k)? {
            let (l, rt, c) = q.apply(&a);
            if sign > 0 {
                let zero = p.is_ci(l, rt, c)?;
                r.check(format!("mask {k} term {q} vanishes"), zero, "exact");
            } else {
                negated = Some((q, h.delta(l, rt, c)?));
            }
        }
        let (q, d) = negated.expect("every mask subtracts one term");
        r.check(
            format!("mask {k}: □ = -Δ{q}"),
            (ingleton + d).abs() <= INGLETON_TOL && d > margin,
            format!("Δ{q} = {d:.9}"),
        );
        masks.push(MaskValue {
            mask: k,
            value,
            negated_term: q.to_string(),
            negated_value: d,
        });
    }
    match id {
        1 => {
            let d = h.delta(z, u, SubsetMask::EMPTY)?;
            let expected = 2.5 * 2f64.ln() - 1.5 * 3f64.ln();
            r.check("Δ(Z,U|∅) = 5/2 ln 2 - 3/2 ln 3", (d - expected).abs() <= INGLETON_TOL, format!("{d:.12}"));
        }
        5 => example_five_checks(&mut r, p, ingleton)?,
        _ => {}
    }
    Ok(CounterexampleReport {
        id,
        ingleton,
        masks,
        report: r,
    })
}

fn example_five_checks(r: &mut Report, p: &JointDistribution, ingleton: f64) -> Result<()> {
    let induced = p.induced_ci_structure()?;
    r.check("only two statements", induced.len() == 2, format!("{:?}", induced));
    // two-dimensional marginals of the form (1±α)/4
    for (pair, num) in [([0, 1], 1), ([0, 2], 3), ([1, 3], 3), ([2, 3], 4)] {
        let m = p.marginal(SubsetMask::singleton(pair[0]).union(SubsetMask::singleton(pair[1])))?;
        let alpha = ratio(num, 8);
        let one = ratio(1, 1);
        let quarter = ratio(1, 4);
        let ok = [[0, 0], [0, 1], [1, 0], [1, 1]].iter().all(|c| {
            let expected = if c[0] == c[1] {
                &quarter * (&one + &alpha)
            } else {
                &quarter * (&one - &alpha)
            };
            m.prob(c) == expected
        });
        let names = p.names();
        r.check(
            format!("marginal {}{} has α = {num}/8", names[pair[0]], names[pair[1]]),
            ok,
            "exact",
        );
    }
    let closed = example_five_closed_form();
    r.check(
        "16·□ closed form",
        (16.0 * ingleton - closed).abs() <= 1e-9,
        format!("16·□ = {:.12}, closed form {closed:.12}", 16.0 * ingleton),
    );
    r.check(
        "16·□ ≈ -0.0876256",
        (16.0 * ingleton + 0.0876256).abs() <= 1e-6,
        format!("{:.7}", 16.0 * ingleton),
    );
    Ok(())
}

/// `X ⊥ Z | U` and `Y ⊥ U | Z` with the Ingleton value, on `x, y, z, u`.
pub fn sixth_premises(p: &JointDistribution) -> Result<IngletonCheck> {
    check_premises(p, &[Pattern::of("X", "Z", "U"), Pattern::of("Y", "U", "Z")], &xyzu_assignment())
}

/// The sixth premise pair holds on the fifth counterexample while the
/// Ingleton expression is negative.
pub fn check_sixth_failure() -> Result<Report> {
    let p = catalog::get("EX5")?.distribution.expect("has a distribution");
    let c = sixth_premises(&p)?;
    let mut r = Report::new("sixth premise pair");
    r.check("premises hold", c.premises_hold, "x _||_ z | u, y _||_ u | z");
    r.check(
        "Ingleton negative",
        c.ingleton_value < -counterexample_margin(5),
        format!("□ = {:.9}", c.ingleton_value),
    );
    Ok(r)
}
