//! Explicit distributions and rank functions with their claimed CI
//! structures, shipped as JSON data files.
//!
//! Ids: `EX1`..`EX5` (Ingleton counterexamples), `HXY`, `CON1`..`CON9`
//! (sub-maximal constructions) and `FULL` (independent uniform bits).

use serde::{Deserialize, Serialize};

use crate::dist::JointDistribution;
use crate::error::{Error, Result};
use crate::inference::{is_coatom, is_closed};
use crate::report::Report;
use crate::scalar::{parse_rational, Rational};
use crate::setfn::{SetFunction, SetFunctionFile};
use crate::structure::{CIStructure, StructureFile};
use crate::BasicSet;

/// Per-subset tolerance for the entropy/rank proportionality check.
pub const PROPORTIONALITY_TOL: f64 = 1e-9;

macro_rules! data_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../data/catalog/", $name)))),*]
    };
}

const FILES: &[(&str, &str)] = data_files![
    "manifest.json",
    "ex1.dist.json", "ex1.claims.json",
    "ex2.dist.json", "ex2.claims.json",
    "ex3.dist.json", "ex3.claims.json",
    "ex4.dist.json", "ex4.claims.json",
    "ex5.dist.json", "ex5.claims.json",
    "hxy.rank.json",
    "con1.dist.json", "con1.rank.json", "con1.claims.json",
    "con2.dist.json", "con2.rank.json", "con2.claims.json",
    "con3.dist.json", "con3.rank.json", "con3.claims.json",
    "con4.dist.json", "con4.rank.json", "con4.claims.json",
    "con5.dist.json", "con5.rank.json", "con5.claims.json",
    "con6.dist.json", "con6.rank.json", "con6.claims.json",
    "con7.dist.json", "con7.rank.json", "con7.claims.json",
    "con8.dist.json", "con8.rank.json", "con8.claims.json",
    "con9.dist.json", "con9.rank.json", "con9.claims.json",
    "full.dist.json", "full.rank.json", "full.claims.json",
];

fn file(name: &str) -> Result<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::Parse(format!("catalog file `{name}` is not bundled")))
}

/// How the claimed statements relate to the induced structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    /// The induced structure is exactly the listed statements.
    Exact,
    /// The listed statements hold; others may too.
    Holds,
}

#[derive(Deserialize)]
struct ManifestEntry {
    id: String,
    description: String,
    distribution: Option<String>,
    rank_function: Option<String>,
    claimed_statements: Option<String>,
    claim: Option<Claim>,
    orbit: Option<usize>,
    log_base: Option<u32>,
    matroid: Option<bool>,
    tight: Option<bool>,
    ingleton: Option<String>,
    #[serde(default)]
    masks: Vec<u8>,
}

fn manifest() -> Result<Vec<ManifestEntry>> {
    Ok(serde_json::from_str(file("manifest.json")?)?)
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub distribution: Option<JointDistribution>,
    pub rank_function: Option<SetFunction<Rational>>,
    pub claimed_statements: Option<CIStructure>,
    pub claim: Claim,
    pub claimed_orbit_size: Option<usize>,
    /// Entropy equals `ln(base)` times the rank function.
    pub log_base: Option<u32>,
    pub matroid: Option<bool>,
    pub tight: Option<bool>,
    /// Exact value of the Ingleton expression on `(x, y, z, u)`.
    pub ingleton: Option<Rational>,
    /// Mask forms that exhibit a negative Ingleton expression.
    pub masks: Vec<u8>,
}

impl CatalogEntry {
    fn load(m: ManifestEntry) -> Result<Self> {
        let ctx = |what: &str, e: Error| Error::Parse(format!("catalog {} {what}: {e}", m.id));
        let distribution = m
            .distribution
            .as_deref()
            .map(|f| JointDistribution::from_json(file(f)?))
            .transpose()
            .map_err(|e| ctx("distribution", e))?;
        let rank_function = m
            .rank_function
            .as_deref()
            .map(|f| -> Result<_> {
                let parsed: SetFunctionFile = serde_json::from_str(file(f)?)?;
                SetFunction::from_file(&parsed)
            })
            .transpose()
            .map_err(|e| ctx("rank function", e))?;
        let claimed_statements = m
            .claimed_statements
            .as_deref()
            .map(|f| -> Result<_> {
                let parsed: StructureFile = serde_json::from_str(file(f)?)?;
                CIStructure::from_file(&parsed)
            })
            .transpose()
            .map_err(|e| ctx("claims", e))?;
        let ingleton = m
            .ingleton
            .as_deref()
            .map(parse_rational)
            .transpose()
            .map_err(|e| ctx("ingleton", e))?;
        if distribution.is_none() && rank_function.is_none() {
            return Err(Error::Parse(format!("catalog {} has no distribution or rank function", m.id)));
        }
        Ok(Self {
            id: m.id,
            description: m.description,
            distribution,
            rank_function,
            claimed_statements,
            claim: m.claim.unwrap_or(Claim::Exact),
            claimed_orbit_size: m.orbit,
            log_base: m.log_base,
            matroid: m.matroid,
            tight: m.tight,
            ingleton,
            masks: m.masks,
        })
    }

    /// Induced structure of the distribution, or of the rank function when
    /// there is no distribution.
    pub fn induced_structure(&self) -> Result<CIStructure> {
        match (&self.distribution, &self.rank_function) {
            (Some(p), _) => p.induced_ci_structure(),
            (None, Some(h)) => h.induced_ci_structure_of_rank(0.0),
            (None, None) => unreachable!("checked on load"),
        }
    }
}

/// Catalog ids in file order.
pub fn ids() -> Vec<String> {
    manifest()
        .expect("bundled manifest parses")
        .into_iter()
        .map(|m| m.id)
        .collect()
}

/// Entry by id (case insensitive).
pub fn get(id: &str) -> Result<CatalogEntry> {
    let m = manifest()?
        .into_iter()
        .find(|m| m.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownCatalogId(id.to_string()))?;
    CatalogEntry::load(m)
}

pub fn all() -> Result<Vec<CatalogEntry>> {
    manifest()?.into_iter().map(CatalogEntry::load).collect()
}

/// Checks every claim an entry carries.
pub fn verify(entry: &CatalogEntry) -> Report {
    let mut r = Report::new(&entry.id);
    if let Some(p) = &entry.distribution {
        let total: Rational = p.density().values().sum();
        r.check("normalized", total == Rational::from_integer(1.into()), format!("sum = {total}"));
    }
    if let (Some(p), Some(h)) = (&entry.distribution, &entry.rank_function) {
        check_proportional(&mut r, p, h, entry.log_base);
    }
    let induced = match entry.induced_structure() {
        Ok(s) => s,
        Err(e) => {
            r.fail("induced structure", e);
            return r;
        }
    };
    if let Some(claimed) = &entry.claimed_statements {
        let ok = match entry.claim {
            Claim::Exact => &induced == claimed,
            Claim::Holds => claimed.is_subset_of(&induced),
        };
        r.check(
            "claimed statements",
            ok,
            format!("{} claimed ({:?}), {} induced", claimed.len(), entry.claim, induced.len()),
        );
        if entry.claim == Claim::Exact {
            if let Some(h) = &entry.rank_function {
                let from_rank = h.induced_ci_structure_of_rank(0.0);
                r.check(
                    "rank function structure",
                    from_rank.as_ref().is_ok_and(|s| s == claimed),
                    format!("{:?}", from_rank.map(|s| s.len())),
                );
            }
        }
    }
    if let Some(n) = entry.claimed_orbit_size {
        let got = induced.orbit().len();
        r.check("orbit size", got == n, format!("{got} (claimed {n})"));
    }
    if let Some(h) = &entry.rank_function {
        let w = h.is_polymatroid();
        r.check("polymatroid", w.ok, format!("{:?}", w.violating_triplet));
        if let Some(m) = entry.matroid {
            let got = h.is_matroid();
            r.check("matroid", got == m, format!("{got} (claimed {m})"));
        }
        if let Some(t) = entry.tight {
            let got = h.is_tight();
            r.check("tight", got == t, format!("{got} (claimed {t})"));
        }
        if let Some(v) = &entry.ingleton {
            let [x, y, z, u] = [0, 1, 2, 3].map(crate::SubsetMask::singleton);
            match h.ingleton(x, y, z, u) {
                Ok(got) => r.check("ingleton", &got == v, format!("{got} (claimed {v})")),
                Err(e) => {
                    r.fail("ingleton", e);
                    false
                }
            };
        }
    }
    r
}

fn check_proportional(r: &mut Report, p: &JointDistribution, h: &SetFunction<Rational>, log_base: Option<u32>) {
    let ent = match p.entropy_function() {
        Ok(e) => e,
        Err(e) => return r.fail("entropy", e),
    };
    let rank = h.to_f64();
    if ent.base() != rank.base() {
        return r.fail("proportional", Error::BaseMismatch(format!("{:?} vs {:?}", ent.base(), rank.base())));
    }
    let full = ent.base().full();
    let r_full = rank.values()[full.0 as usize];
    if r_full <= 0.0 {
        r.check("proportional", false, "rank of the whole set is not positive");
        return;
    }
    let c = ent.values()[full.0 as usize] / r_full;
    let worst = ent
        .values()
        .iter()
        .zip(rank.values())
        .map(|(e, v)| (e - c * v).abs())
        .fold(0.0, f64::max);
    r.check(
        "proportional",
        c > 0.0 && worst <= PROPORTIONALITY_TOL,
        format!("c = {c:.12}, max deviation {worst:.2e}"),
    );
    if let Some(b) = log_base {
        let expected = (b as f64).ln();
        r.check(
            "constant",
            (c - expected).abs() <= PROPORTIONALITY_TOL,
            format!("c = {c:.12}, ln {b} = {expected:.12}"),
        );
    }
}

/// One permutation type of irreducible structures.
#[derive(Clone, Debug)]
pub struct IrreducibleType {
    /// Catalog entry whose induced structure represents the type.
    pub id: String,
    pub representative: CIStructure,
    pub orbit: Vec<CIStructure>,
}

const IRREDUCIBLE_IDS: [&str; 14] = [
    "CON1", "CON2", "CON3", "CON4", "CON5", "CON6", "CON7", "CON8", "CON9", "EX1", "EX2", "EX3", "EX4", "FULL",
];

/// The permutation types of irreducible structures: the nine sub-maximal
/// constructions, the four counterexample structures and the full structure.
pub fn irreducible_types() -> Result<Vec<IrreducibleType>> {
    IRREDUCIBLE_IDS
        .iter()
        .map(|id| {
            let rep = get(id)?.induced_structure()?;
            Ok(IrreducibleType {
                id: id.to_string(),
                orbit: rep.orbit(),
                representative: rep,
            })
        })
        .collect()
}

/// All 92 irreducible structures, deduplicated, in type order.
pub fn all_irreducibles() -> Result<Vec<CIStructure>> {
    let mut seen = std::collections::HashSet::new();
    Ok(irreducible_types()?
        .into_iter()
        .flat_map(|t| t.orbit)
        .filter(|s| seen.insert(s.bits()))
        .collect())
}

/// Closedness and, for the sub-maximal constructions, the co-atom property.
pub fn check_lattice_position(entry: &CatalogEntry) -> Report {
    let mut r = Report::new(&entry.id);
    let s = match entry.induced_structure() {
        Ok(s) => s,
        Err(e) => {
            r.fail("induced structure", e);
            return r;
        }
    };
    let s = CIStructure::from_bits(BasicSet::xyzu(), s.bits()).expect("four variables");
    r.check("closed", is_closed(&s).unwrap_or(false), format!("{} statements", s.len()));
    if entry.id.starts_with("CON") {
        r.check("co-atom", is_coatom(&s).unwrap_or(false), "every one-statement extension closes to full");
    }
    r
}
