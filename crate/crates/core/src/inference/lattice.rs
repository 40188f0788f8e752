//! Intersection-closed families of CI structures.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::structure::CIStructure;

/// Least intersection-closed family containing `seeds` and the full structure.
pub fn meet_closure(seeds: &[CIStructure]) -> Result<Vec<CIStructure>> {
    let Some(first) = seeds.first() else {
        return Err(Error::Parse("meet closure needs at least one seed".into()));
    };
    let base = first.base().clone();
    let full = CIStructure::full(base.clone())?;
    let mut family: BTreeSet<u128> = BTreeSet::from([full.bits()]);
    for s in seeds {
        if s.base() != &base {
            return Err(Error::BaseMismatch(format!("{:?} vs {:?}", s.base(), base)));
        }
        let meets: Vec<u128> = family.iter().map(|f| f & s.bits()).collect();
        family.extend(meets);
    }
    family
        .into_iter()
        .map(|b| CIStructure::from_bits(base.clone(), b))
        .collect()
}

/// Whether `s` is not the meet of two closed structures strictly above it,
/// judged within `family` (which must be intersection closed).
pub fn is_meet_irreducible(s: &CIStructure, family: &[CIStructure]) -> bool {
    if s.is_full() {
        return false;
    }
    let above: Vec<u128> = family
        .iter()
        .filter(|f| f.bits() != s.bits() && s.is_subset_of(f))
        .map(CIStructure::bits)
        .collect();
    let meet_of_covers = above.iter().fold(u128::MAX, |acc, b| acc & b);
    meet_of_covers != s.bits()
}

/// Closed under all rules, not full, and every one-statement extension
/// closes to the full structure (four variables).
pub fn is_coatom(s: &CIStructure) -> Result<bool> {
    if s.is_full() || !super::is_closed(s)? {
        return Ok(false);
    }
    let full = CIStructure::full(s.base().clone())?.bits();
    let engine = super::Engine::xyzu(super::RuleSet::All);
    Ok((0..crate::structure::ElementaryTriplet::count(4))
        .filter(|b| s.bits() >> b & 1 == 0)
        .all(|b| engine.closure_bits(s.bits() | 1 << b) == full))
}
