use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::basic_set::{BasicSet, SubsetMask};
use crate::pattern::{Assignment, Pattern};
use crate::structure::{permutations, CIStructure, ElementaryTriplet};

fn xyzu() -> BasicSet {
    BasicSet::xyzu()
}

fn structure(list: &[(usize, usize, u32)]) -> CIStructure {
    CIStructure::from_triplets(
        xyzu(),
        list.iter()
            .map(|&(i, j, k)| ElementaryTriplet::new(i, j, SubsetMask(k)).unwrap()),
    )
    .unwrap()
}

/// Triplets as plain `(i, j, K)` tuples with `i < j`.
type Plain = BTreeSet<(usize, usize, u32)>;

fn plain(s: &CIStructure) -> Plain {
    s.triplets().map(|t| (t.i, t.j, t.k.0)).collect()
}

/// Elementary content of `(X, Y | Z)`, written out independently.
fn oracle_expand(x: u32, y: u32, z: u32) -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    let all = x | y | z;
    for i in 0..4 {
        for j in 0..4 {
            if x >> i & 1 == 0 || y >> j & 1 == 0 {
                continue;
            }
            for k in 0..16u32 {
                if k & z == z && k & !all == 0 && k >> i & 1 == 0 && k >> j & 1 == 0 {
                    out.push((i.min(j), i.max(j), k));
                }
            }
        }
    }
    out
}

fn oracle_holds(s: &Plain, x: u32, y: u32, z: u32) -> bool {
    oracle_expand(x, y, z).iter().all(|t| s.contains(t))
}

fn oracle_add(s: &mut Plain, x: u32, y: u32, z: u32) -> bool {
    let mut changed = false;
    for t in oracle_expand(x, y, z) {
        changed |= s.insert(t);
    }
    changed
}

/// Fixpoint of the compound semi-graphoid rule over all disjoint set
/// quadruples and, optionally, the E and I rules over singleton assignments.
fn oracle_closure(seed: &Plain, with_rules: bool) -> Plain {
    let mut s = seed.clone();
    loop {
        let mut changed = false;
        for x in 1..16u32 {
            for y in 1..16u32 {
                for z in 1..16u32 {
                    for u in 0..16u32 {
                        if x & y != 0 || x & z != 0 || x & u != 0 || y & z != 0 || y & u != 0 || z & u != 0 {
                            continue;
                        }
                        let left = oracle_holds(&s, x, y | z, u);
                        let right = oracle_holds(&s, x, y, z | u) && oracle_holds(&s, x, z, u);
                        if left && !right {
                            changed |= oracle_add(&mut s, x, y, z | u);
                            changed |= oracle_add(&mut s, x, z, u);
                        }
                        if right && !left {
                            changed |= oracle_add(&mut s, x, y | z, u);
                        }
                    }
                }
            }
        }
        if with_rules {
            for r in rule_table() {
                if r.family == RuleFamily::SemiGraphoid {
                    continue;
                }
                for p in permutations(4) {
                    let a = Assignment::singletons([p[0], p[1], p[2], p[3]]);
                    let sides: Vec<(&Vec<Pattern>, &Vec<Pattern>)> = if r.bidirectional {
                        vec![(&r.premises, &r.conclusions), (&r.conclusions, &r.premises)]
                    } else {
                        vec![(&r.premises, &r.conclusions)]
                    };
                    for (prem, concl) in sides {
                        let masks = |pat: &Pattern| {
                            let (l, r, c) = pat.apply(&a);
                            (l.0, r.0, c.0)
                        };
                        if prem.iter().all(|q| {
                            let (l, r, c) = masks(q);
                            oracle_holds(&s, l, r, c)
                        }) {
                            for q in concl {
                                let (l, r, c) = masks(q);
                                changed |= oracle_add(&mut s, l, r, c);
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            return s;
        }
    }
}

#[test]
fn i1_identity_instance() {
    let g = instances(rule("I1").unwrap());
    let expected_p = structure(&[(0, 1, 0), (0, 1, 4), (2, 3, 1), (2, 3, 2)]);
    let expected_c = structure(&[(2, 3, 0)]);
    assert!(g.contains(&GroundRule {
        premises: expected_p.bits(),
        conclusions: expected_c.bits(),
    }));
    assert_eq!(g.len(), 24);
}

#[test]
fn e4_emits_both_directions() {
    let g = instances(rule("E4").unwrap());
    assert_eq!(g.len(), 48);
    for r in &g {
        assert!(g.contains(&GroundRule {
            premises: r.conclusions,
            conclusions: r.premises,
        }));
    }
}

#[test]
fn ground_rule_counts_are_frozen() {
    let sg = ground_rules(&xyzu(), RuleSet::SemiGraphoid).unwrap();
    assert_eq!(sg.len(), GROUND_RULES_SEMI_GRAPHOID);
    let all = ground_rules(&xyzu(), RuleSet::All).unwrap();
    assert_eq!(all.len(), GROUND_RULES_ALL);
}

#[test]
fn all_rules_need_four_variables() {
    let three = BasicSet::new(["a", "b", "c"]).unwrap();
    assert!(ground_rules(&three, RuleSet::All).is_err());
    assert_eq!(ground_rules(&three, RuleSet::SemiGraphoid).unwrap().len(), 6);
}

#[test]
fn closure_examples() {
    // {(x,y|∅), (x,z|y)} closes to the block x ⊥ yz | ∅
    let s = structure(&[(0, 1, 0), (0, 2, 2)]);
    let c = closure(&s).unwrap();
    assert_eq!(c, structure(&[(0, 1, 0), (0, 2, 2), (0, 2, 0), (0, 1, 4)]));
    assert!(!is_closed(&s).unwrap());
    assert!(is_closed(&c).unwrap());
    let empty = CIStructure::empty(xyzu()).unwrap();
    assert_eq!(closure(&empty).unwrap(), empty);
    let full = CIStructure::full(xyzu()).unwrap();
    assert_eq!(closure(&full).unwrap(), full);
    assert!(is_closed(&full).unwrap());
}

#[test]
fn example_one_structure_is_closed() {
    let p = crate::dist::JointDistribution::uniform_on(
        ["x", "y", "z", "u"],
        vec![2; 4],
        &[&[0, 0, 0, 0], &[0, 1, 0, 1], &[1, 0, 0, 1], &[1, 1, 1, 1]],
    )
    .unwrap();
    let s = p.induced_ci_structure().unwrap();
    assert!(is_closed(&s).unwrap());
    assert_eq!(s.orbit().len(), 6);
}

#[test]
fn meet_closure_small() {
    let a = structure(&[(0, 1, 0), (0, 1, 4)]);
    let b = structure(&[(0, 1, 0), (2, 3, 0)]);
    let fam = meet_closure(&[a.clone(), b.clone()]).unwrap();
    // full, a, b, a ∧ b
    assert_eq!(fam.len(), 4);
    assert!(fam.contains(&a.meet(&b).unwrap()));
    assert!(meet_closure(&[]).is_err());
}

#[test]
fn meet_irreducibility_in_a_chain() {
    let a = structure(&[(0, 1, 0)]);
    let b = structure(&[(0, 1, 4)]);
    let fam = meet_closure(&[a.clone(), b.clone()]).unwrap();
    assert!(is_meet_irreducible(&a, &fam));
    assert!(is_meet_irreducible(&b, &fam));
    let bottom = a.meet(&b).unwrap();
    assert!(!is_meet_irreducible(&bottom, &fam));
}

fn seed() -> impl Strategy<Value = CIStructure> {
    (0u128..(1 << 24)).prop_map(|b| {
        // thin out to get a mix of sparse and dense seeds
        let thin = b & (b >> 3) & (b >> 7);
        CIStructure::from_bits(BasicSet::xyzu(), if b & 1 == 0 { thin } else { b & (b >> 5) }).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn closure_is_a_closure_operator(s in seed(), t in seed()) {
        let c = closure(&s).unwrap();
        prop_assert!(s.is_subset_of(&c));
        prop_assert_eq!(closure(&c).unwrap(), c.clone());
        prop_assert!(is_closed(&c).unwrap());
        let st = s.meet(&t).unwrap();
        prop_assert!(closure(&st).unwrap().is_subset_of(&c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn semi_graphoid_closure_matches_oracle(s in seed()) {
        let engine = Engine::xyzu(RuleSet::SemiGraphoid);
        let c = engine.closure(&s).unwrap();
        prop_assert_eq!(plain(&c), oracle_closure(&plain(&s), false));
    }

    #[test]
    fn full_closure_matches_oracle(s in seed()) {
        let c = closure(&s).unwrap();
        prop_assert_eq!(plain(&c), oracle_closure(&plain(&s), true));
    }
}
