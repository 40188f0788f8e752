//! One-shot reproduction of the published numbers, grouped into twelve
//! numbered criteria. Each criterion yields a [`Report`].

use std::collections::BTreeSet;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basic_set::{BasicSet, SubsetMask};
use crate::catalog::{self, Claim};
use crate::dist::{random_distribution, random_joint, JointDistribution, SampleSpace};
use crate::error::{Error, Result};
use crate::inequalities::{
    check_rule_on_samples, check_sixth_failure, counterexample_margin, derivation_schemas, example_five_closed_form,
    explain_derivation, single_field_mutations, verify_counterexample, verify_derivation,
};
use crate::inference::{enumerate, is_meet_irreducible, meet_closure, EnumerateOptions, RuleSet};
use crate::report::Report;
use crate::scalar::{ratio, Rational};
use crate::setfn::{h_xy, SetFunction};
use crate::structure::CIStructure;

pub const SEMI_GRAPHOID_COUNT: u64 = 26_424;
pub const STRUCTURE_COUNT: u64 = 18_478;
pub const IRREDUCIBLE_COUNT: usize = 92;
pub const ORBIT_SIZES: [usize; 14] = [6, 4, 1, 4, 1, 6, 1, 4, 4, 6, 24, 24, 6, 1];
pub const CONSTRUCTION_COUNTS: [usize; 9] = [20, 18, 18, 18, 18, 14, 12, 12, 12];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub number: u8,
    pub name: &'static str,
    pub title: &'static str,
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion { number: 1, name: "semigraphoid-count", title: "semi-graphoids over four variables" },
    Criterion { number: 2, name: "structure-count", title: "closed CI structures over four variables" },
    Criterion { number: 3, name: "lattice-equivalence", title: "irreducibles generate the closed family" },
    Criterion { number: 4, name: "irreducible-census", title: "92 irreducibles in 14 types" },
    Criterion { number: 5, name: "example-five", title: "closed form of the fifth counterexample" },
    Criterion { number: 6, name: "counterexamples", title: "counterexamples one to four" },
    Criterion { number: 7, name: "catalog", title: "sub-maximal constructions" },
    Criterion { number: 8, name: "mask-identities", title: "mask forms equal the Ingleton expression" },
    Criterion { number: 9, name: "h-xy", title: "the rank function h_xy" },
    Criterion { number: 10, name: "derivations", title: "derivation records and their mutations" },
    Criterion { number: 11, name: "conditional-inequalities", title: "conditional inequalities on sampled distributions" },
    Criterion { number: 12, name: "distribution-algebra", title: "distribution algebra" },
];

/// Looks a criterion up by number (`"7"`) or name (`"catalog"`).
pub fn criterion(key: &str) -> Option<Criterion> {
    let key = key.trim();
    CRITERIA
        .iter()
        .find(|c| key == c.number.to_string() || key.eq_ignore_ascii_case(c.name))
        .copied()
}

#[derive(Clone, Copy, Debug)]
pub struct ReproduceOptions {
    /// Worker threads for enumeration; 0 means all cores.
    pub threads: usize,
    /// Sampled distributions per conditional inequality.
    pub samples: usize,
    /// Consonant pairs for the conditional-product checks.
    pub pairs: usize,
    /// Random set functions for the mask identities.
    pub set_functions: usize,
    pub seed: u64,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        Self {
            threads: 0,
            samples: 200,
            pairs: 500,
            set_functions: 1000,
            seed: 2007,
        }
    }
}

/// What `verify-paper --only` selects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Criterion(Criterion),
    CatalogEntry(String),
}

/// A criterion number or name, or else a catalog id.
pub fn resolve_target(key: &str) -> Result<Target> {
    if let Some(c) = criterion(key) {
        return Ok(Target::Criterion(c));
    }
    let e = catalog::get(key)?;
    Ok(Target::CatalogEntry(e.id))
}

pub fn run_criterion(number: u8, opts: &ReproduceOptions) -> Result<Report> {
    let c = CRITERIA
        .iter()
        .find(|c| c.number == number)
        .ok_or_else(|| Error::Parse(format!("criterion must be in 1..=12, got {number}")))?;
    let mut r = match number {
        1 => count(RuleSet::SemiGraphoid, SEMI_GRAPHOID_COUNT, opts)?,
        2 => count(RuleSet::All, STRUCTURE_COUNT, opts)?,
        3 => lattice_equivalence(opts)?,
        4 => irreducible_census()?,
        5 => example_five()?,
        6 => counterexamples()?,
        7 => constructions()?,
        8 => mask_identities(opts)?,
        9 => rank_h_xy()?,
        10 => derivations()?,
        11 => conditional_inequalities(opts)?,
        _ => distribution_algebra(opts)?,
    };
    r.subject = format!("{}. {}", c.number, c.title);
    Ok(r)
}

/// Verification of one catalog entry: its claims and, for irreducible
/// types, its position in the lattice.
pub fn run_catalog_entry(id: &str) -> Result<Report> {
    let e = catalog::get(id)?;
    let mut r = Report::new(e.id.clone());
    r.extend(catalog::verify(&e));
    if e.id.starts_with("CON") || e.id == "FULL" || (e.id.starts_with("EX") && e.id != "EX5") {
        r.extend(catalog::check_lattice_position(&e));
    }
    if let Some(k) = e.id.strip_prefix("EX").and_then(|k| k.parse::<u8>().ok()) {
        r.extend(verify_counterexample(k)?.report);
    }
    Ok(r)
}

pub fn run_target(t: &Target, opts: &ReproduceOptions) -> Result<Report> {
    match t {
        Target::Criterion(c) => run_criterion(c.number, opts),
        Target::CatalogEntry(id) => run_catalog_entry(id),
    }
}

fn count(rules: RuleSet, expected: u64, opts: &ReproduceOptions) -> Result<Report> {
    let e = enumerate(rules, &EnumerateOptions { threads: opts.threads, ..Default::default() })?;
    let mut r = Report::new("count");
    r.check("count", e.count == expected, format!("{} (expected {expected})", e.count));
    Ok(r)
}

fn lattice_equivalence(opts: &ReproduceOptions) -> Result<Report> {
    let mut r = Report::new("lattice");
    let closed = enumerate(RuleSet::All, &EnumerateOptions { threads: opts.threads, collect: true, progress: None })?;
    let closed: BTreeSet<u128> = closed.members.into_iter().flatten().map(u128::from).collect();
    let family: BTreeSet<u128> = meet_closure(&catalog::all_irreducibles()?)?.iter().map(CIStructure::bits).collect();
    r.check(
        "meet closure equals the closed family",
        family == closed,
        format!("{} generated, {} closed, {} in common", family.len(), closed.len(), family.intersection(&closed).count()),
    );
    Ok(r)
}

fn irreducible_census() -> Result<Report> {
    let mut r = Report::new("census");
    let types = catalog::irreducible_types()?;
    let sizes: Vec<usize> = types.iter().map(|t| t.orbit.len()).collect();
    r.check("14 types", types.len() == 14, format!("{}", types.len()));
    r.check("orbit sizes", sizes == ORBIT_SIZES, format!("{sizes:?}"));
    let all = catalog::all_irreducibles()?;
    r.check("92 distinct", all.len() == IRREDUCIBLE_COUNT, format!("{}", all.len()));
    // the meet-irreducibles of the family generated by the 92 are the 92
    let family = meet_closure(&all)?;
    let irreducible: BTreeSet<u128> =
        family.iter().filter(|s| is_meet_irreducible(s, &family)).map(CIStructure::bits).collect();
    let listed: BTreeSet<u128> = all.iter().filter(|s| !s.is_full()).map(CIStructure::bits).collect();
    r.check(
        "meet-irreducible in the family",
        irreducible == listed,
        format!("{} irreducible besides the full structure", irreducible.len()),
    );
    Ok(r)
}

fn example_five() -> Result<Report> {
    let c = verify_counterexample(5)?;
    let mut r = Report::new("EX5");
    let v = 16.0 * c.ingleton;
    let closed = example_five_closed_form();
    r.check("16·□ closed form within 1e-9", (v - closed).abs() <= 1e-9, format!("{v:.12} vs {closed:.12}"));
    r.check("16·□ ≈ -0.0876256 within 1e-6", (v + 0.0876256).abs() <= 1e-6, format!("{v:.9}"));
    r.extend(c.report);
    Ok(r)
}

fn counterexamples() -> Result<Report> {
    let mut r = Report::new("counterexamples");
    for id in 1..=4 {
        let c = verify_counterexample(id)?;
        r.check(
            format!("EX{id} below -1e-3"),
            c.ingleton < -counterexample_margin(id) && !c.masks.is_empty(),
            format!("□ = {:.9} via masks {:?}", c.ingleton, c.masks.iter().map(|m| m.mask).collect::<Vec<_>>()),
        );
        r.extend(c.report);
    }
    Ok(r)
}

fn constructions() -> Result<Report> {
    let mut r = Report::new("constructions");
    for (k, &n) in CONSTRUCTION_COUNTS.iter().enumerate() {
        let e = catalog::get(&format!("CON{}", k + 1))?;
        let induced = e.induced_structure()?;
        r.check(
            format!("{} statement count", e.id),
            e.claim == Claim::Exact && induced.len() == n && e.rank_function.is_some() && e.log_base.is_some(),
            format!("{} (expected {n})", induced.len()),
        );
        r.extend(catalog::verify(&e));
    }
    Ok(r)
}

fn random_set_function(rng: &mut ChaCha8Rng, base: BasicSet) -> SetFunction<Rational> {
    let values = base.subsets().map(|_| ratio(rng.random_range(-50..=50), rng.random_range(1..=12))).collect();
    SetFunction::new(base, values).expect("one value per subset")
}

/// Disjoint non-empty subsets of `0..n` for the four arguments.
fn random_assignment(rng: &mut ChaCha8Rng, n: usize) -> [SubsetMask; 4] {
    loop {
        let mut parts = [SubsetMask::EMPTY; 4];
        for i in 0..n {
            let k = rng.random_range(0..5);
            if k < 4 {
                parts[k] = parts[k].union(SubsetMask::singleton(i));
            }
        }
        if parts.iter().all(|p| !p.is_empty()) {
            return parts;
        }
    }
}

fn mask_identities(opts: &ReproduceOptions) -> Result<Report> {
    let mut r = Report::new("masks");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let bases = [BasicSet::xyzu(), BasicSet::new(["a", "b", "c", "d", "e", "f"])?];
    let mut mismatches = 0;
    for n in 0..opts.set_functions {
        let base = bases[n % 2].clone();
        let [x, y, z, u] = if base.size() == 4 {
            [0, 1, 2, 3].map(SubsetMask::singleton)
        } else {
            random_assignment(&mut rng, base.size())
        };
        let h = random_set_function(&mut rng, base);
        let ing = h.ingleton(x, y, z, u)?;
        for k in 1..=5 {
            if h.mask_form(k, x, y, z, u)? != ing {
                mismatches += 1;
            }
        }
    }
    r.check(
        "random rational set functions",
        mismatches == 0,
        format!("{} functions, {mismatches} mismatches", opts.set_functions),
    );
    // a linear identity holds iff it holds on every indicator function
    let base = BasicSet::xyzu();
    let [x, y, z, u] = [0, 1, 2, 3].map(SubsetMask::singleton);
    for k in 1..=5 {
        let mut ok = true;
        for t in base.subsets() {
            let f = SetFunction::<Rational>::indicator(base.clone(), t)?;
            ok &= f.mask_form(k, x, y, z, u)? == f.ingleton(x, y, z, u)?;
        }
        r.check(format!("mask {k} on the indicator basis"), ok, "16 indicators");
    }
    Ok(r)
}

fn rank_h_xy() -> Result<Report> {
    let mut r = Report::new("h_xy");
    let h = h_xy();
    let [x, y, z, u] = [0, 1, 2, 3].map(SubsetMask::singleton);
    r.check("polymatroid", h.is_polymatroid().ok, "");
    r.check("tight", h.is_tight(), "");
    r.check("not a matroid", !h.is_matroid(), "");
    let v = h.ingleton(x, y, z, u)?;
    r.check("ingleton = -1", v == ratio(-1, 1), format!("{v}"));
    Ok(r)
}

fn derivations() -> Result<Report> {
    let mut r = Report::new("derivations");
    let all = derivation_schemas();
    r.check("19 records", all.len() == 19, format!("{}", all.len()));
    let mut rejected = 0;
    let mut total = 0;
    for s in &all {
        r.extend(explain_derivation(s)?);
        for m in single_field_mutations(s) {
            total += 1;
            // a malformed mutation counts as rejected
            if !verify_derivation(&m).unwrap_or(false) {
                rejected += 1;
            }
        }
    }
    r.check("mutations rejected", rejected == total && total == 57, format!("{rejected} of {total}"));
    Ok(r)
}

fn conditional_inequalities(opts: &ReproduceOptions) -> Result<Report> {
    let mut r = Report::new("conditional inequalities");
    for id in 1..=5 {
        let s = check_rule_on_samples(id, opts.samples, opts.seed)?;
        r.check(
            format!("rule {id}"),
            s.passed,
            format!("{} samples, premises held on {}, min □ = {:.3e}", s.samples, s.premises_held, s.min_ingleton),
        );
    }
    r.extend(check_sixth_failure()?);
    Ok(r)
}

fn distribution_algebra(opts: &ReproduceOptions) -> Result<Report> {
    let mut r = Report::new("distribution algebra");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = Vec::new();
    for n in 0..opts.pairs {
        if let Err(e) = conditional_product_pair(&mut rng) {
            failures.push(format!("pair {n}: {e}"));
        }
    }
    r.check(
        "conditional product postconditions",
        failures.is_empty(),
        format!("{} pairs, {}", opts.pairs, failures.first().map_or("all exact", String::as_str)),
    );

    let entries: Vec<_> = catalog::all()?.into_iter().filter_map(|e| e.distribution.map(|p| (e.id, p))).collect();
    let triples = disjoint_triples(4);
    let mut worst = 0.0f64;
    for (_, p) in &entries {
        let h = p.entropy_function()?;
        for &(a, b, c) in &triples {
            let q = p.conditional_product_of_marginals(a, b, c)?;
            let kl = p.marginal(a.union(b).union(c))?.kl_divergence(&q)?;
            worst = worst.max((kl - h.delta(a, b, c)?).abs());
        }
    }
    r.check(
        "KL divergence = Δ on catalog entries",
        worst <= 1e-9,
        format!("{} entries × {} triples, max error {worst:.2e}", entries.len(), triples.len()),
    );

    let mut applied = 0;
    let mut bad = Vec::new();
    for (id, p) in &entries {
        for &(a, b, c) in triples.iter().filter(|t| !t.2.is_empty()) {
            if p.is_ci(a, b, c)? && p.is_ci(a, c, b)? {
                applied += 1;
                if !double_markov_holds(p, a, b, c)? {
                    bad.push(format!("{id} {a:?} {b:?} {c:?}"));
                }
            }
        }
    }
    for _ in 0..opts.pairs {
        let p = block_instance(&mut rng);
        let [a, b, c] = [0, 1, 2].map(SubsetMask::singleton);
        if p.is_ci(a, b, c)? && p.is_ci(a, c, b)? {
            applied += 1;
            if !double_markov_holds(&p, a, b, c)? {
                bad.push(format!("{:?}", p.density()));
            }
        }
    }
    r.check(
        "double-Markov postconditions",
        bad.is_empty() && applied > 0,
        format!("{applied} instances, {}", bad.first().map_or("all exact", String::as_str)),
    );

    let mut mismatched = Vec::new();
    let structures: Vec<CIStructure> = entries.iter().map(|(_, p)| p.induced_ci_structure()).collect::<Result<_>>()?;
    for (i, (id_q, q)) in entries.iter().enumerate() {
        for (j, (id_r, rr)) in entries.iter().enumerate().skip(i) {
            let prod = JointDistribution::lattice_product(q, rr)?;
            if prod.induced_ci_structure()? != structures[i].meet(&structures[j])? {
                mismatched.push(format!("{id_q} × {id_r}"));
            }
        }
    }
    let pairs = entries.len() * (entries.len() + 1) / 2;
    r.check(
        "lattice product meets structures",
        mismatched.is_empty(),
        format!("{pairs} pairs, mismatched: {mismatched:?}"),
    );
    Ok(r)
}

/// `(A, B, C)` pairwise disjoint with `A`, `B` non-empty.
fn disjoint_triples(n: usize) -> Vec<(SubsetMask, SubsetMask, SubsetMask)> {
    let full = SubsetMask::full(n);
    let mut out = Vec::new();
    for a in full.subsets().filter(|s| !s.is_empty()) {
        for b in full.difference(a).subsets().filter(|s| !s.is_empty()) {
            for c in full.difference(a.union(b)).subsets() {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn double_markov_holds(p: &JointDistribution, a: SubsetMask, b: SubsetMask, c: SubsetMask) -> Result<bool> {
    let ext = p.double_markov_extend(a, b, c)?;
    let abc = a.union(b).union(c);
    // positions of a, b, c inside the extension (abc in order, then w)
    let relabel = |m: SubsetMask| {
        SubsetMask(abc.iter().enumerate().filter(|(_, i)| m.contains(*i)).fold(0, |acc, (k, _)| acc | 1 << k))
    };
    let (ea, eb, ec) = (relabel(a), relabel(b), relabel(c));
    let w = SubsetMask::singleton(abc.len());
    Ok(ext.is_ci(w, w, eb)?
        && ext.is_ci(w, w, ec)?
        && ext.is_ci(ea, eb.union(ec), w)?
        && ext.marginal(SubsetMask::full(abc.len()))? == p.marginal(abc)?)
}

/// Random `(a, b, c)` where `b` and `c` refine a common block variable that
/// `a` depends on, so both Markov premises hold; some blocks are dropped.
fn block_instance(rng: &mut ChaCha8Rng) -> JointDistribution {
    let blocks = rng.random_range(1..=3usize);
    let (mb, mc) = (rng.random_range(1..=2usize), rng.random_range(1..=2usize));
    let card_a = rng.random_range(1..=3usize);
    let cond: Vec<Vec<i64>> = (0..blocks).map(|_| (0..card_a).map(|_| rng.random_range(1..=4)).collect()).collect();
    let mut weights = Vec::new();
    for b in 0..blocks * mb {
        for c in 0..blocks * mc {
            if b / mb == c / mc && rng.random_bool(0.7) {
                let w = rng.random_range(1..=5i64);
                let block = &cond[b / mb];
                let tw: i64 = block.iter().sum();
                for (a, t) in block.iter().enumerate() {
                    weights.push((vec![a, b, c], ratio(w * t, tw)));
                }
            }
        }
    }
    if weights.is_empty() {
        weights.push((vec![0, 0, 0], ratio(1, 1)));
    }
    let total: Rational = weights.iter().map(|(_, w)| w).sum();
    let rows: Vec<_> = weights.into_iter().map(|(cfg, w)| (cfg, w / &total)).collect();
    let space = SampleSpace::new(["a", "b", "c"].map(String::from).to_vec(), vec![card_a, blocks * mb, blocks * mc])
        .expect("distinct names");
    JointDistribution::new(space, rows).expect("normalized")
}

/// Random consonant pair `q` over `A ∪ C`, `r` over `B ∪ C`: `r` starts from
/// an unrelated density and is rescaled to agree with `q` on `C`. Checks
/// that the product recovers both and makes `A ⊥ B | C`.
fn conditional_product_pair(rng: &mut ChaCha8Rng) -> Result<()> {
    let p = random_joint(rng, &["a", "c1", "c2"], 3);
    let c = SubsetMask(rng.random_range(0..4u32) << 1);
    let q = p.marginal(SubsetMask(1).union(c))?;
    let q_c = p.marginal(c)?;
    let nb = rng.random_range(1..=2usize);
    let mut names: Vec<String> = (0..nb).map(|k| format!("b{k}")).collect();
    let mut cards: Vec<usize> = (0..nb).map(|_| rng.random_range(1..=3)).collect();
    names.extend(q_c.names().iter().cloned());
    cards.extend(q_c.space().cardinalities());
    let other = random_distribution(rng, SampleSpace::new(names, cards)?, 6, 0.3);
    let r = rescale(&other, &q_c, nb)?;
    let joined = JointDistribution::conditional_product(&q, &r)?;
    let fail = |what: &str| Err(Error::InvalidDistribution(what.into()));
    if joined.marginal(SubsetMask::full(q.size()))? != q {
        return fail("q not recovered");
    }
    let r_names: Vec<&String> = r.names().iter().collect();
    if joined.marginal(joined.mask(&r_names)?)?.reorder(&r_names)? != r {
        return fail("r not recovered");
    }
    let a = joined.mask(&["a"])?;
    let b = joined.mask(&r_names[..nb])?;
    let cm = joined.mask(q_c.names())?;
    if !joined.is_ci(a, b, cm)? {
        return fail("A ⊥ B | C fails");
    }
    Ok(())
}

/// `r` (first `nb` variables free, the rest matching `target`) rescaled so
/// its marginal on the rest is `target`. Unsupported rest values put all
/// their mass on the all-zero free configuration.
fn rescale(r: &JointDistribution, target: &JointDistribution, nb: usize) -> Result<JointDistribution> {
    let rest = SubsetMask::full(r.size()).difference(SubsetMask::full(nb));
    let r_rest = r.marginal(rest)?;
    let mut rows = Vec::new();
    for (cc, pc) in target.density() {
        let rc = r_rest.prob(cc);
        if rc.is_zero() {
            let mut cfg = vec![0; nb];
            cfg.extend_from_slice(cc);
            rows.push((cfg, pc.clone()));
        } else {
            for (cfg, pr) in r.density() {
                if &cfg[nb..] == cc.as_slice() {
                    rows.push((cfg.clone(), pr * pc / &rc));
                }
            }
        }
    }
    JointDistribution::new(r.space().clone(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_number_or_name() {
        assert_eq!(criterion("7").unwrap().name, "catalog");
        assert_eq!(criterion("H-XY").unwrap().number, 9);
        assert!(criterion("13").is_none());
        assert_eq!(resolve_target("con3").unwrap(), Target::CatalogEntry("CON3".into()));
        assert!(resolve_target("nothing").is_err());
    }

    #[test]
    fn triples_over_four() {
        assert_eq!(disjoint_triples(4).len(), 110);
    }

    #[test]
    fn quick_criteria_pass() {
        let opts = ReproduceOptions { samples: 20, pairs: 40, set_functions: 50, ..Default::default() };
        for n in [5, 6, 8, 9, 10, 11] {
            let r = run_criterion(n, &opts).unwrap();
            assert!(r.passed(), "{}: {:?}", r.subject, r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn catalog_targets_pass() {
        for id in catalog::ids() {
            let r = run_catalog_entry(&id).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
