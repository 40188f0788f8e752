//! Ground rule instances as bitmask pairs and the closure engine.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::rules::{rule_table, InferenceRule, RuleFamily};
use crate::basic_set::{BasicSet, SubsetMask};
use crate::error::{Error, Result};
use crate::pattern::{Assignment, Pattern};
use crate::structure::{bit_of, expand_to_elementary, permutations, CIStructure, ElementaryTriplet};

/// Which rules an engine applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleSet {
    /// The semi-graphoid exchange rule only.
    SemiGraphoid,
    /// All 27 rules (four variables only).
    All,
}

/// `premises ⊆ s` forces `conclusions ⊆ s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundRule {
    pub premises: u128,
    pub conclusions: u128,
}

fn bits_of(n: usize, triplets: &[ElementaryTriplet]) -> u128 {
    triplets.iter().fold(0, |acc, &t| acc | 1 << bit_of(n, t))
}

/// Elementary exchange form of the semi-graphoid rule:
/// `{(i,j|kK), (i,k|K)} ⇒ {(i,k|jK), (i,j|K)}` for distinct `i, j, k`.
fn semi_graphoid_instances(n: usize) -> Vec<GroundRule> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let rest = SubsetMask::full(n).difference(SubsetMask(1 << i | 1 << j | 1 << k));
                for kk in rest.subsets() {
                    let t = |a, b, c: SubsetMask| ElementaryTriplet::new(a, b, c).expect("disjoint");
                    let jk = kk.union(SubsetMask::singleton(j));
                    let kk_k = kk.union(SubsetMask::singleton(k));
                    out.push(GroundRule {
                        premises: bits_of(n, &[t(i, j, kk_k), t(i, k, kk)]),
                        conclusions: bits_of(n, &[t(i, k, jk), t(i, j, kk)]),
                    });
                }
            }
        }
    }
    out
}

fn expand_all(n: usize, pats: &[Pattern], a: &Assignment) -> u128 {
    let mut bits = 0;
    for &p in pats {
        let (l, r, c) = p.apply(a);
        let ts = expand_to_elementary(l, r, c).expect("rule patterns are disjoint");
        bits |= bits_of(n, &ts);
    }
    bits
}

/// Instances of one four-placeholder rule under all singleton assignments.
pub fn instances(rule: &InferenceRule) -> Vec<GroundRule> {
    let n = 4;
    let mut out = Vec::new();
    for perm in permutations(n) {
        let a = Assignment::singletons([perm[0], perm[1], perm[2], perm[3]]);
        let p = expand_all(n, &rule.premises, &a);
        let c = expand_all(n, &rule.conclusions, &a);
        out.push(GroundRule {
            premises: p,
            conclusions: c,
        });
        if rule.bidirectional {
            out.push(GroundRule {
                premises: c,
                conclusions: p,
            });
        }
    }
    out
}

/// Ground instances over `base`, deduplicated and with trivial ones
/// (conclusions already among the premises) removed.
pub fn ground_rules(base: &BasicSet, rules: RuleSet) -> Result<Vec<GroundRule>> {
    let n = base.size();
    if n > crate::structure::MAX_STRUCTURE_VARIABLES {
        return Err(Error::BasicSetTooLarge(n));
    }
    let mut set: BTreeSet<GroundRule> = semi_graphoid_instances(n).into_iter().collect();
    if rules == RuleSet::All {
        if n != 4 {
            return Err(Error::UnsupportedBaseSize(n));
        }
        for r in rule_table() {
            // S0 and S1 are built into the canonical triplet encoding, S2 into
            // the exchange instances above.
            if r.family == RuleFamily::SemiGraphoid {
                continue;
            }
            set.extend(instances(r));
        }
    }
    Ok(set
        .into_iter()
        .filter(|g| g.conclusions & !g.premises != 0)
        .collect())
}

/// Closure and membership tests for a fixed set of ground rules.
#[derive(Clone, Debug)]
pub struct Engine {
    base: BasicSet,
    rules: Vec<GroundRule>,
    /// Rule indices by premise bit.
    buckets: Vec<Vec<usize>>,
}

impl Engine {
    pub fn new(base: BasicSet, rules: RuleSet) -> Result<Self> {
        let ground = ground_rules(&base, rules)?;
        let width = ElementaryTriplet::count(base.size());
        let mut buckets = vec![Vec::new(); width];
        for (k, g) in ground.iter().enumerate() {
            for (b, bucket) in buckets.iter_mut().enumerate() {
                if g.premises >> b & 1 == 1 {
                    bucket.push(k);
                }
            }
        }
        Ok(Self {
            base,
            rules: ground,
            buckets,
        })
    }

    /// Shared engine over `{x, y, z, u}`.
    pub fn xyzu(rules: RuleSet) -> &'static Engine {
        static SG: OnceLock<Engine> = OnceLock::new();
        static ALL: OnceLock<Engine> = OnceLock::new();
        let cell = match rules {
            RuleSet::SemiGraphoid => &SG,
            RuleSet::All => &ALL,
        };
        cell.get_or_init(|| Engine::new(BasicSet::xyzu(), rules).expect("four variables"))
    }

    pub fn base(&self) -> &BasicSet {
        &self.base
    }

    pub fn rules(&self) -> &[GroundRule] {
        &self.rules
    }

    /// Least superset of `bits` closed under every rule.
    pub fn closure_bits(&self, bits: u128) -> u128 {
        let mut cur = bits;
        let mut queue: Vec<usize> = (0..self.buckets.len()).filter(|b| bits >> b & 1 == 1).collect();
        while let Some(b) = queue.pop() {
            for &k in &self.buckets[b] {
                let g = self.rules[k];
                if g.premises & !cur == 0 {
                    let fresh = g.conclusions & !cur;
                    if fresh != 0 {
                        cur |= fresh;
                        queue.extend((0..self.buckets.len()).filter(|t| fresh >> t & 1 == 1));
                    }
                }
            }
        }
        cur
    }

    pub fn is_closed_bits(&self, bits: u128) -> bool {
        self.rules
            .iter()
            .all(|g| g.premises & !bits != 0 || g.conclusions & !bits == 0)
    }

    fn check_base(&self, s: &CIStructure) -> Result<()> {
        if s.base() != &self.base {
            return Err(Error::BaseMismatch(format!(
                "{:?} vs {:?}",
                s.base(),
                self.base
            )));
        }
        Ok(())
    }

    pub fn closure(&self, s: &CIStructure) -> Result<CIStructure> {
        self.check_base(s)?;
        CIStructure::from_bits(self.base.clone(), self.closure_bits(s.bits()))
    }

    pub fn is_closed(&self, s: &CIStructure) -> Result<bool> {
        self.check_base(s)?;
        Ok(self.is_closed_bits(s.bits()))
    }

    /// Rules narrowed to 32 bits, for the four-variable scan.
    pub(crate) fn narrow_rules(&self) -> Option<Vec<(u32, u32)>> {
        if ElementaryTriplet::count(self.base.size()) > 32 {
            return None;
        }
        Some(
            self.rules
                .iter()
                .map(|g| (g.premises as u32, g.conclusions as u32))
                .collect(),
        )
    }
}

/// Closure under all 27 rules over `{x, y, z, u}`; the structure's variable
/// names are kept.
pub fn closure(s: &CIStructure) -> Result<CIStructure> {
    let n = s.base().size();
    if n != 4 {
        return Err(Error::UnsupportedBaseSize(n));
    }
    let bits = Engine::xyzu(RuleSet::All).closure_bits(s.bits());
    CIStructure::from_bits(s.base().clone(), bits)
}

/// Whether `s` is closed under all 27 rules (four variables).
pub fn is_closed(s: &CIStructure) -> Result<bool> {
    let n = s.base().size();
    if n != 4 {
        return Err(Error::UnsupportedBaseSize(n));
    }
    Ok(Engine::xyzu(RuleSet::All).is_closed_bits(s.bits()))
}
